//! Enumeration of sublattices of `Z^s` of prime-power index through their
//! lower-triangular Hermite normal forms.
//!
//! A sublattice of index `p^r` has a unique basis matrix with diagonal
//! `(p^{b₁}, …, p^{b_s})`, `Σ bᵢ = r`, and each entry below the diagonal in
//! `[0, p^{b_j})` where `j` is its column. Order is lexicographic in
//! `(b₁, …, b_s)`, then in the below-diagonal entries read row by row.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

/// Weak compositions of `r` into `s ≥ 1` parts, lexicographically increasing.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<usize>>,
}

impl Compositions {
    pub fn new(s: usize, r: usize) -> Self {
        let current = (s > 0).then(|| {
            let mut b = vec![0; s];
            b[s - 1] = r;
            b
        });
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let s = out.len();
        let mut b = out.clone();
        let mut tail = b[s - 1];
        // rightmost position below the last with a positive suffix after it
        for i in (0..s.saturating_sub(1)).rev() {
            if tail > 0 {
                b[i] += 1;
                for v in b.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                b[s - 1] = tail - 1;
                self.current = Some(b);
                break;
            }
            tail += b[i];
        }
        Some(out)
    }
}

/// All HNF matrices with a fixed diagonal exponent vector.
#[derive(Clone, Debug)]
pub struct DiagonalHnfs {
    base: IntMatrix,
    /// (row, column, modulus) for each free position, row-major.
    slots: Vec<(usize, usize, BigInt)>,
    counters: Vec<BigInt>,
    done: bool,
}

impl DiagonalHnfs {
    pub fn new(exponents: &[usize], p0: u64) -> Self {
        let p = BigInt::from(p0);
        let diag: Vec<BigInt> = exponents
            .iter()
            .map(|&b| num_traits::pow(p.clone(), b))
            .collect();
        let s = diag.len();
        let slots: Vec<_> = (0..s)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .filter(|&(_, j)| !diag[j].is_one())
            .map(|(i, j)| (i, j, diag[j].clone()))
            .collect();
        let counters = vec![BigInt::zero(); slots.len()];
        DiagonalHnfs {
            base: IntMatrix::diagonal(&diag),
            slots,
            counters,
            done: false,
        }
    }

    /// `∏_j p^{b_j (s − j)}` with 1-based `j`.
    pub fn count(exponents: &[usize], p0: u64) -> BigInt {
        let s = exponents.len();
        let e: usize = exponents
            .iter()
            .enumerate()
            .map(|(j, b)| b * (s - 1 - j))
            .sum();
        num_traits::pow(BigInt::from(p0), e)
    }
}

impl Iterator for DiagonalHnfs {
    type Item = IntMatrix;

    fn next(&mut self) -> Option<IntMatrix> {
        if self.done {
            return None;
        }
        let mut m = self.base.clone();
        for ((i, j, _), c) in self.slots.iter().zip(&self.counters) {
            m.set(*i, *j, c.clone());
        }
        // odometer, last slot fastest
        self.done = true;
        for (k, (_, _, modulus)) in self.slots.iter().enumerate().rev() {
            self.counters[k] += 1;
            if self.counters[k] < *modulus {
                self.done = false;
                break;
            }
            self.counters[k] = BigInt::zero();
        }
        Some(m)
    }
}

/// Every sublattice of `Z^s` of index `p0^r`, once each.
pub fn hnf_enumerate(s: usize, r: usize, p0: u64) -> impl Iterator<Item = IntMatrix> {
    Compositions::new(s, r).flat_map(move |b| DiagonalHnfs::new(&b, p0))
}

/// Number of matrices [`hnf_enumerate`] yields, without enumerating them.
pub fn hnf_count(s: usize, r: usize, p0: u64) -> BigInt {
    Compositions::new(s, r)
        .map(|b| DiagonalHnfs::count(&b, p0))
        .sum()
}
