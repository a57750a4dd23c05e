//! Dense univariate polynomials in `p` with arbitrary-precision integer
//! coefficients.
//!
//! Every counting formula in this crate returns an [`IntPoly`]. The
//! representation is canonical: `coeffs[i]` is the coefficient of `p^i` and
//! the last stored coefficient is never zero, so the zero polynomial is the
//! empty vector and structural equality is polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * p^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    /// `p^exp`.
    pub fn p_pow(exp: usize) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut poly = IntPoly { coeffs };
        poly.normalize();
        poly
    }

    /// Convenience constructor from small coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `p^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_u64(&self, x: u64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Exact division: returns `q` with `self = q * divisor`, or
    /// [`Error::NonExactDivision`] if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (lead, dd) = match (divisor.leading(), divisor.degree()) {
            (Some(l), Some(d)) => (l, d),
            _ => return Err(Error::DivisionByZero),
        };
        let Some(nd) = self.degree() else {
            return Ok(Self::zero());
        };
        if nd < dd {
            return Err(Error::NonExactDivision);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Largest `k` with `p^k | self`; `None` for zero.
    pub fn p_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn shape(&self) -> Shape {
        let Some(p_power) = self.p_valuation() else {
            return Shape::Zero;
        };
        let reduced = IntPoly {
            coeffs: self.coeffs[p_power..].to_vec(),
        };
        Shape::NonZero(ShapeReport {
            is_unimodal: is_unimodal(reduced.coeffs()),
            is_symmetric: is_palindrome(reduced.coeffs()),
            p_power,
            reduced,
        })
    }

    pub fn sum<'a>(polys: impl IntoIterator<Item = &'a IntPoly>) -> IntPoly {
        polys.into_iter().fold(IntPoly::zero(), |acc, p| &acc + p)
    }

    pub fn product<'a>(polys: impl IntoIterator<Item = &'a IntPoly>) -> IntPoly {
        polys.into_iter().fold(IntPoly::one(), |acc, p| &acc * p)
    }
}

/// Rises weakly then falls weakly. The empty sequence counts as unimodal.
pub fn is_unimodal(coeffs: &[BigInt]) -> bool {
    let mut i = 1;
    while i < coeffs.len() && coeffs[i - 1] <= coeffs[i] {
        i += 1;
    }
    while i < coeffs.len() && coeffs[i - 1] >= coeffs[i] {
        i += 1;
    }
    i >= coeffs.len()
}

pub fn is_palindrome(coeffs: &[BigInt]) -> bool {
    coeffs.iter().eq(coeffs.iter().rev())
}

/// Result of [`IntPoly::shape`]. The flags describe `reduced`, the
/// polynomial with its largest power of `p` factored out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Zero,
    NonZero(ShapeReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub is_unimodal: bool,
    pub is_symmetric: bool,
    pub p_power: usize,
    pub reduced: IntPoly,
}

impl Shape {
    pub fn report(&self) -> Option<&ShapeReport> {
        match self {
            Shape::Zero => None,
            Shape::NonZero(r) => Some(r),
        }
    }

    pub fn is_unimodal_symmetric(&self) -> bool {
        self.report()
            .is_some_and(|r| r.is_unimodal && r.is_symmetric)
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

/// Ascending powers, `c0 + c1*p + c2*p^2`, zero terms skipped and unit
/// coefficients left implicit.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match exp {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("p")?,
                1 => write!(f, "{mag}*p")?,
                _ if unit => write!(f, "p^{exp}")?,
                _ => write!(f, "{mag}*p^{exp}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// JSON form `{"coeffs": ["c0", "c1", ...]}` with decimal-string entries.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<String>,
}

pub(crate) fn coeff_strings(poly: &IntPoly) -> Vec<String> {
    poly.coeffs.iter().map(ToString::to_string).collect()
}

pub(crate) fn poly_from_strings(coeffs: &[String]) -> std::result::Result<IntPoly, String> {
    let coeffs = coeffs
        .iter()
        .map(|s| {
            s.parse::<BigInt>()
                .map_err(|e| format!("bad coefficient {s:?}: {e}"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let poly = IntPoly::from_coeffs(coeffs.clone());
    if poly.coeffs.len() != coeffs.len() {
        return Err("trailing zero coefficient".into());
    }
    Ok(poly)
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: coeff_strings(self),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        poly_from_strings(&repr.coeffs).map_err(serde::de::Error::custom)
    }
}
