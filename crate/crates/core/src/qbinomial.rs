//! The p-binomial (Gaussian binomial) coefficient, computed by the Pascal
//! recurrence and, independently, by summing `p^|λ|` over partitions in a
//! box.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bigpoly::IntPoly;
use crate::partitions::enum_in_box;

type Memo = RwLock<HashMap<(usize, usize), Arc<IntPoly>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `binom(n, k)_p` via `binom(n,k) = binom(n-1,k-1) + p^k binom(n-1,k)`.
///
/// `k > n` is the zero polynomial. Results are cached process-wide; racing
/// threads may compute the same entry twice but always store equal values.
pub fn pbinom(n: usize, k: usize) -> IntPoly {
    if k > n {
        return IntPoly::zero();
    }
    if k == 0 || k == n {
        return IntPoly::one();
    }
    if let Some(hit) = memo().read().unwrap().get(&(n, k)) {
        return (**hit).clone();
    }
    // Fill the table bottom-up, rows 1..=n and columns 0..=k.
    let mut row: Vec<Arc<IntPoly>> = std::iter::once(Arc::new(IntPoly::one()))
        .chain((1..=k).map(|_| Arc::new(IntPoly::zero())))
        .collect();
    for m in 1..=n {
        let mut next = Vec::with_capacity(k + 1);
        next.push(Arc::new(IntPoly::one()));
        for j in 1..=k {
            next.push(Arc::new(&*row[j - 1] + &row[j].shift(j)));
        }
        let mut guard = memo().write().unwrap();
        for (j, v) in next.iter().enumerate().take(m.min(k) + 1).skip(1) {
            if j < m {
                guard.entry((m, j)).or_insert_with(|| Arc::clone(v));
            }
        }
        drop(guard);
        row = next;
    }
    (*row[k]).clone()
}

/// `Σ p^|λ|` over partitions fitting in a `k × (n−k)` box, by enumeration.
pub fn pbinom_box(n: usize, k: usize) -> IntPoly {
    if k > n {
        return IntPoly::zero();
    }
    let max_weight = k * (n - k);
    let mut coeffs = vec![BigInt::zero(); max_weight + 1];
    for lambda in enum_in_box(k, n - k) {
        coeffs[lambda.weight()] += 1;
    }
    IntPoly::from_coeffs(coeffs)
}

/// `binom(n, k)` at the integer `p0 ≥ 2` from the product of
/// `(p0^{n-i} − 1) / (p0^{k-i} − 1)`, in exact integer arithmetic.
pub fn pbinom_product_at(n: usize, k: usize, p0: u64) -> BigInt {
    assert!(p0 >= 2, "product formula needs p0 >= 2");
    if k > n {
        return BigInt::zero();
    }
    let p = BigInt::from(p0);
    let pow = |e: usize| num_traits::pow(p.clone(), e);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= pow(n - i) - 1;
        den *= pow(k - i) - 1;
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "product formula must divide exactly");
    q
}
