//! Square integer matrices with exact Hermite and Smith normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::PaddedPartition;

/// An `s × s` matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} entries for dimension {dim}",
                entries.len()
            )));
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape("rows must form a square".into()));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        Self::new(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = d.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j).is_zero()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            if piv != k {
                for j in 0..n {
                    a.swap(piv * n + j, k * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for j in 0..self.dim {
                self.entries.swap(r1 * self.dim + j, r2 * self.dim + j);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for i in 0..self.dim {
                self.entries.swap(i * self.dim + c1, i * self.dim + c2);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_submul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.dim {
            let v = q * &self.entries[src * self.dim + j];
            self.entries[dst * self.dim + j] -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_submul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.dim {
            let v = q * &self.entries[i * self.dim + src];
            self.entries[i * self.dim + dst] -= v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.dim {
            let v = -&self.entries[r * self.dim + j];
            self.entries[r * self.dim + j] = v;
        }
    }

    /// Lower-triangular Hermite normal form of the row lattice: positive
    /// diagonal, and each entry below the diagonal reduced into
    /// `[0, diagonal entry of its column)`.
    pub fn hermite_normal_form(&self) -> Result<IntMatrix> {
        let n = self.dim;
        let mut a = self.clone();
        for j in (0..n).rev() {
            // clear column j in rows 0..j, leaving the gcd in row j
            loop {
                let pivot = (0..=j)
                    .filter(|&i| !a.get(i, j).is_zero())
                    .min_by(|&x, &y| a.get(x, j).abs().cmp(&a.get(y, j).abs()));
                let Some(pivot) = pivot else {
                    return Err(Error::Singular);
                };
                a.swap_rows(pivot, j);
                let mut clean = true;
                for i in 0..j {
                    let q = a.get(i, j).div_floor(a.get(j, j));
                    a.row_submul(i, j, &q);
                    clean &= a.get(i, j).is_zero();
                }
                if clean {
                    break;
                }
            }
            if a.get(j, j).is_negative() {
                a.negate_row(j);
            }
        }
        for i in 1..n {
            for j in (0..i).rev() {
                let q = a.get(i, j).div_floor(a.get(j, j));
                a.row_submul(i, j, &q);
            }
        }
        Ok(a)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Smith invariants `d₁, …, d_s` with `d_{i+1} | d_i`, so `d₁` is the
/// largest. Errors on a singular matrix.
pub fn snf(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = m.dim();
    let mut a = m.clone();
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::Singular);
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.row_submul(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.col_submul(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(a.get(t, t)));
            match offender {
                Some((i, _)) => a.row_submul(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
    }
    let mut diag: Vec<BigInt> = (0..n).map(|i| a.get(i, i).abs()).collect();
    diag.reverse();
    Ok(diag)
}

/// `k` with `value = p0^k`.
pub fn prime_power_exponent(value: &BigInt, p0: u64) -> Result<usize> {
    let not_power = || Error::NotPrimePower {
        value: value.to_string(),
        prime: p0,
    };
    if !value.is_positive() {
        return Err(not_power());
    }
    let p = BigInt::from(p0);
    let mut v = value.clone();
    let mut k = 0;
    while !v.is_one() {
        let (q, r) = v.div_rem(&p);
        if !r.is_zero() {
            return Err(not_power());
        }
        v = q;
        k += 1;
    }
    Ok(k)
}

/// Type of `Z^s / rowspan(h)` as exponents of the Smith invariants.
pub fn quotient_type(h: &IntMatrix, p0: u64) -> Result<PaddedPartition> {
    let exps = snf(h)?
        .iter()
        .map(|d| prime_power_exponent(d, p0))
        .collect::<Result<Vec<_>>>()?;
    PaddedPartition::new(exps)
}

/// Integer row vector `x` with `x · h = target` for lower-triangular `h`,
/// if one exists.
pub fn solve_lower_row(h: &IntMatrix, target: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.dim();
    let mut x = vec![BigInt::zero(); n];
    for j in (0..n).rev() {
        let mut acc = target[j].clone();
        for (k, xk) in x.iter().enumerate().skip(j + 1) {
            acc -= xk * h.get(k, j);
        }
        let (q, r) = acc.div_rem(h.get(j, j));
        if !r.is_zero() {
            return None;
        }
        x[j] = q;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf(&IntMatrix::identity(3)).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(snf(&mat(&[&[2, 0], &[1, 2]])).unwrap(), ints(&[4, 1]));
        assert_eq!(snf(&mat(&[&[4, 0], &[0, 2]])).unwrap(), ints(&[4, 2]));
        assert_eq!(snf(&mat(&[&[2, 0], &[0, 3]])).unwrap(), ints(&[6, 1]));
        assert_eq!(
            snf(&mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap(),
            ints(&[12, 6, 2])
        );
        assert_eq!(snf(&mat(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn det_examples() {
        assert_eq!(mat(&[&[2, 0], &[1, 2]]).det(), BigInt::from(4));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(
            mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).det(),
            BigInt::from(-144)
        );
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn quotient_type_examples() {
        assert_eq!(
            quotient_type(&IntMatrix::identity(2), 2).unwrap().parts(),
            &[0, 0]
        );
        assert_eq!(
            quotient_type(&mat(&[&[2, 0], &[0, 2]]), 2).unwrap().parts(),
            &[1, 1]
        );
        assert_eq!(
            quotient_type(&mat(&[&[2, 0], &[1, 2]]), 2).unwrap().parts(),
            &[2, 0]
        );
        assert!(matches!(
            quotient_type(&mat(&[&[3, 0], &[0, 2]]), 2),
            Err(Error::NotPrimePower { .. })
        ));
    }

    #[test]
    fn hnf_canonicalizes_bases() {
        let h = mat(&[&[4, 0, 0], &[3, 2, 0], &[1, 1, 2]]);
        let u = mat(&[&[1, 2, 0], &[0, 1, 0], &[3, 5, 1]]);
        assert_eq!(u.det(), BigInt::one());
        let h2 = u.mul(&h).hermite_normal_form().unwrap();
        assert_eq!(h2, h);
        assert!(h2.is_lower_triangular());
        let flipped = mat(&[&[0, -1], &[1, 0]]).mul(&mat(&[&[2, 0], &[1, 2]]));
        assert_eq!(
            flipped.hermite_normal_form().unwrap(),
            mat(&[&[2, 0], &[1, 2]])
        );
    }

    #[test]
    fn lower_solve() {
        let h = mat(&[&[2, 0], &[1, 2]]);
        // h spans a lattice with cyclic quotient Z/4: rows of 4·I lie in it,
        // (0, 2) does not
        assert_eq!(solve_lower_row(&h, &ints(&[2, 0])), Some(ints(&[1, 0])));
        assert_eq!(solve_lower_row(&h, &ints(&[0, 4])), Some(ints(&[-1, 2])));
        assert_eq!(solve_lower_row(&h, &ints(&[0, 2])), None);
        assert_eq!(solve_lower_row(&h, &ints(&[1, 0])), None);
    }

    #[test]
    fn prime_power_exponents() {
        assert_eq!(prime_power_exponent(&BigInt::from(1), 3).unwrap(), 0);
        assert_eq!(prime_power_exponent(&BigInt::from(81), 3).unwrap(), 4);
        assert!(prime_power_exponent(&BigInt::from(12), 2).is_err());
        assert!(prime_power_exponent(&BigInt::from(0), 2).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(IntMatrix::new(2, ints(&[1, 2, 3])).is_err());
        assert!(IntMatrix::from_rows(&[vec![1, 2]]).is_err());
    }
}
