//! Closed-form subgroup and sublattice counts.
//!
//! Every formula here is a product over consecutive pairs of conjugate
//! parts of a factor `p^e · binom(a, b)_p`. Written as infinite
//! products, every factor past the last nonzero part equals 1, so each loop
//! stops one step after it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bigpoly::IntPoly;
use crate::error::{Error, Result};
use crate::partitions::{enum_first_part, enum_padded, partitions_of, PaddedPartition, Partition};
use crate::qbinomial::pbinom;

/// Number of subgroups of type `mu` in an abelian p-group of type `lambda`.
///
/// Zero when `mu ⊄ lambda`.
pub fn butler_alpha(lambda: &Partition, mu: &Partition) -> IntPoly {
    if !lambda.contains(mu) {
        return IntPoly::zero();
    }
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let width = mu.first().unwrap_or(0);
    let mut acc = IntPoly::one();
    for j in 1..=width + 1 {
        let (l_j, m_j, m_next) = (lc.part(j), mc.part(j), mc.part(j + 1));
        let factor = pbinom(l_j - m_next, m_j - m_next).shift((l_j - m_j) * m_next);
        acc = &acc * &factor;
    }
    acc
}

/// Number of subgroups of order `p^k` in a group of type `lambda`.
pub fn alpha_order(lambda: &Partition, k: usize) -> IntPoly {
    if k > lambda.weight() {
        return IntPoly::zero();
    }
    let polys: Vec<_> = partitions_of(k, lambda.len())
        .filter(|mu| lambda.contains(mu))
        .map(|mu| butler_alpha(lambda, &mu))
        .collect();
    IntPoly::sum(&polys)
}

/// `∏_{j ≥ 1} p^{(c₁−c_j)c_{j+1}} binom(c₁−c_{j+1}, c₁−c_j)_p` over a
/// partition `c`, with `c_j = 0` past its last part.
pub fn conjugate_product(c: &Partition) -> IntPoly {
    let top = c.part(1);
    let mut acc = IntPoly::one();
    for j in 1..=c.len() {
        let (c_j, c_next) = (c.part(j), c.part(j + 1));
        let factor = pbinom(top - c_next, top - c_j).shift((top - c_j) * c_next);
        acc = &acc * &factor;
    }
    acc
}

/// Number of sublattices of `Z^s` of index `p^r` whose quotient has type
/// `lambda`, where `s` is the padded length and `r = |lambda|`. Uses the
/// shift `t = 1`.
pub fn alpha_rs(lambda: &PaddedPartition) -> IntPoly {
    alpha_rs_shifted(lambda, 1).expect("t = 1 is always admissible")
}

/// [`alpha_rs`] with an explicit shift. `t = 0` is admissible only when
/// `lambda` has no zero part.
pub fn alpha_rs_shifted(lambda: &PaddedPartition, t: usize) -> Result<IntPoly> {
    let conj = lambda.add_t(t)?.conjugate();
    Ok(conjugate_product(&conj))
}

/// Number of sublattices of `Z^s` of index `p^r`.
pub fn total_count(r: usize, s: usize) -> IntPoly {
    if s == 0 {
        return IntPoly::zero();
    }
    pbinom(r + s - 1, s - 1)
}

/// Both sides of the exponent identity relating the multiplicity form of
/// `lambda` to the conjugate of `lambda + t`:
/// `Σ_{i<j} (μᵢ−μⱼ−1)ρᵢρⱼ` and `Σ_j (λ′₁−λ′ⱼ)λ′ⱼ₊₁`.
pub fn lemma_sides(lambda: &PaddedPartition, t: usize) -> Result<(BigInt, BigInt)> {
    if t == 0 {
        return Err(Error::ShiftRequired);
    }
    let form = lambda.multiplicity_form();
    let mut lhs = BigInt::zero();
    for i in 0..form.distinct.len() {
        for j in i + 1..form.distinct.len() {
            let gap = form.distinct[i] - form.distinct[j] - 1;
            lhs += BigInt::from(gap) * form.mults[i] * form.mults[j];
        }
    }
    let conj = lambda.add_t(t)?.conjugate();
    let top = conj.part(1);
    let mut rhs = BigInt::zero();
    for j in 1..=conj.len() {
        rhs += BigInt::from(top - conj.part(j)) * conj.part(j + 1);
    }
    Ok((lhs, rhs))
}

/// Sum over partitions of `n + 1` with first part `k + 1` of
/// [`conjugate_product`]. Equals `binom(n, k)_p`.
pub fn identity_rhs(n: usize, k: usize) -> IntPoly {
    if k > n {
        return IntPoly::zero();
    }
    let terms: Vec<_> = enum_first_part(n + 1, k + 1)
        .map(|lambda| conjugate_product(&lambda))
        .collect();
    IntPoly::sum(&terms)
}

/// Number of chains `A_m ⊆ … ⊆ A₁ ⊆ Z^s` with `Z^s/Aᵢ` of type `chain[i]`.
/// The empty chain counts once.
pub fn chain_count_types(chain: &[Partition], s: usize) -> Result<IntPoly> {
    let Some(top) = chain.last() else {
        return Ok(IntPoly::one());
    };
    if let Some(bad) = chain.iter().find(|l| l.len() > s) {
        return Err(Error::ChainViolation(format!(
            "{bad} has more than {s} parts"
        )));
    }
    if let Some(w) = chain.windows(2).find(|w| !w[1].contains(&w[0])) {
        return Err(Error::ChainViolation(format!(
            "{} is not contained in {}",
            w[0], w[1]
        )));
    }
    let mut acc = alpha_rs(&top.pad(s)?);
    for w in chain.windows(2) {
        acc = &acc * &butler_alpha(&w[1], &w[0]);
    }
    Ok(acc)
}

/// Number of chains `A_m ⊆ … ⊆ A₁ ⊆ Z^s` with `[Z^s : Aᵢ] = p^{aᵢ}`.
///
/// Sums [`chain_count_types`] over chains of partitions, accumulated level
/// by level: each partition at level `i+1` collects the weights of the
/// partitions it contains at level `i`.
pub fn chain_count_indices(indices: &[usize], s: usize) -> Result<IntPoly> {
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    let Some((&first, rest)) = indices.split_first() else {
        return Ok(IntPoly::one());
    };
    let mut level: Vec<(Partition, IntPoly)> = partitions_of(first, s)
        .map(|l| (l, IntPoly::one()))
        .collect();
    for &a in rest {
        level = partitions_of(a, s)
            .map(|upper| {
                let terms: Vec<_> = level
                    .iter()
                    .filter(|(lower, _)| upper.contains(lower))
                    .map(|(lower, w)| w * &butler_alpha(&upper, lower))
                    .collect();
                let w = IntPoly::sum(&terms);
                (upper, w)
            })
            .collect();
    }
    let terms: Vec<_> = level
        .iter()
        .map(|(top, w)| w * &alpha_rs(&top.pad(s).expect("at most s parts")))
        .collect();
    Ok(IntPoly::sum(&terms))
}

/// All chains of partitions `λ⁽¹⁾ ⊆ … ⊆ λ⁽ᵐ⁾` with `|λ⁽ⁱ⁾| = aᵢ` and at most
/// `s` parts each.
pub fn partition_chains(indices: &[usize], s: usize) -> Vec<Vec<Partition>> {
    let mut chains: Vec<Vec<Partition>> = vec![Vec::new()];
    for &a in indices {
        let level: Vec<_> = partitions_of(a, s).collect();
        chains = chains
            .into_iter()
            .flat_map(|chain| {
                level
                    .iter()
                    .filter(|l| chain.last().is_none_or(|prev| l.contains(prev)))
                    .map(|l| {
                        let mut c = chain.clone();
                        c.push(l.clone());
                        c
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    chains
}

fn pow(base: &BigInt, exp: usize) -> BigInt {
    num_traits::pow(base.clone(), exp)
}

/// `|GL_n(Z/p^m)| = p^{(m−1)n²} ∏_{i<n} (p^n − p^i)`.
pub fn gl_order(n: usize, p0: u64, m: usize) -> BigInt {
    let p = BigInt::from(p0);
    let field: BigInt = (0..n).map(|i| pow(&p, n) - pow(&p, i)).product();
    pow(&p, (m - 1) * n * n) * field
}

/// `(|SL_s(Z/p0^{λ₁})|, |Ḡ_λ|)`, the orders of the special linear group and
/// of the image of the stabiliser subgroup
/// `{Y ∈ SL_s(Z) : p^{λⱼ−λᵢ} | Y_ij for j < i}`. Their ratio is
/// [`alpha_rs`] evaluated at `p0`.
pub fn group_orders(lambda: &PaddedPartition, p0: u64) -> Result<(BigInt, BigInt)> {
    if !crate::is_prime(p0) {
        return Err(Error::NotPrime(p0));
    }
    let top = lambda.first();
    if top == 0 {
        return Err(Error::DegenerateModulus);
    }
    let s = lambda.len();
    let p = BigInt::from(p0);
    let units = gl_order(1, p0, top);
    let sl = gl_order(s, p0, top) / &units;

    let form = lambda.multiplicity_form();
    let (mu, rho) = (&form.distinct, &form.mults);
    let mut exp = 0usize;
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            // lower block (j, i) is p^{μᵢ−μⱼ}·A, upper block (i, j) is free
            exp += (top - mu[i] + mu[j]) * rho[i] * rho[j];
            exp += top * rho[i] * rho[j];
        }
    }
    let diag: BigInt = rho.iter().map(|&r| gl_order(r, p0, top)).product();
    let stab = pow(&p, exp) * diag / units;
    Ok((sl, stab))
}

/// What a [`CountRecord`] counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Pbinom,
    AlphaRs,
    Total,
    Butler,
    OrderCount,
    Identity,
    ChainTypes,
    ChainIndices,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

/// A query with its polynomial answer and optional evaluations at primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub kind: CountKind,
    pub params: BTreeMap<String, String>,
    #[serde(with = "coeff_list")]
    pub coeffs: IntPoly,
    #[serde(with = "eval_map")]
    pub evals: BTreeMap<u64, BigInt>,
}

impl CountRecord {
    pub fn new<K, V>(
        kind: CountKind,
        params: impl IntoIterator<Item = (K, V)>,
        answer: IntPoly,
    ) -> Self
    where
        K: Into<String>,
        V: ToString,
    {
        CountRecord {
            kind,
            params: params
                .into_iter()
                .map(|(k, v)| (k.into(), v.to_string()))
                .collect(),
            coeffs: answer,
            evals: BTreeMap::new(),
        }
    }

    pub fn answer(&self) -> &IntPoly {
        &self.coeffs
    }

    pub fn with_evals(mut self, primes: &[u64]) -> Self {
        for &p in primes {
            self.evals.insert(p, self.coeffs.eval_u64(p));
        }
        self
    }

    /// Non-negative coefficients and every evaluation consistent.
    pub fn is_consistent(&self) -> bool {
        self.coeffs.has_nonnegative_coeffs()
            && self
                .evals
                .iter()
                .all(|(&p, v)| self.coeffs.eval_u64(p) == *v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

mod coeff_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(poly: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::bigpoly::coeff_strings(poly).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntPoly, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        crate::bigpoly::poly_from_strings(&raw).map_err(serde::de::Error::custom)
    }
}

mod eval_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        evals: &BTreeMap<u64, BigInt>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let strings: BTreeMap<u64, String> =
            evals.iter().map(|(k, v)| (*k, v.to_string())).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<u64, BigInt>, D::Error> {
        let raw = BTreeMap::<u64, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                v.parse::<BigInt>()
                    .map(|v| (k, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

/// α_{r,s}(λ) for every λ ∈ Λ⁰_{r,s}, in enumeration order.
pub fn alpha_rs_table(r: usize, s: usize) -> Vec<(PaddedPartition, IntPoly)> {
    enum_padded(r, s)
        .map(|l| {
            let a = alpha_rs(&l);
            (l, a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbinomial::pbinom;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn padded(p: &[usize]) -> PaddedPartition {
        PaddedPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn butler_examples() {
        assert_eq!(butler_alpha(&part(&[1, 1]), &part(&[1])), poly(&[1, 1]));
        assert_eq!(
            butler_alpha(&part(&[4, 2, 1]), &Partition::empty()),
            IntPoly::one()
        );
        assert_eq!(butler_alpha(&part(&[2, 1]), &part(&[1])), poly(&[1, 1]));
        assert_eq!(
            butler_alpha(&part(&[2, 1]), &part(&[1, 1, 1])),
            IntPoly::zero()
        );
        assert_eq!(butler_alpha(&part(&[2, 1]), &part(&[2, 1])), IntPoly::one());
        // cyclic subgroups of order p^2 in Z/p^3 + Z/p
        assert_eq!(butler_alpha(&part(&[3, 1]), &part(&[2])), poly(&[0, 1]));
    }

    #[test]
    fn alpha_order_examples() {
        assert_eq!(alpha_order(&part(&[1, 1]), 1), poly(&[1, 1]));
        assert_eq!(alpha_order(&part(&[2]), 1), IntPoly::one());
        assert_eq!(alpha_order(&part(&[3, 2]), 0), IntPoly::one());
        assert_eq!(alpha_order(&part(&[1]), 2), IntPoly::zero());
        // lines in F_p^3
        assert_eq!(alpha_order(&part(&[1, 1, 1]), 1), pbinom(3, 1));
    }

    #[test]
    fn alpha_rs_examples() {
        assert_eq!(alpha_rs(&padded(&[1, 1])), IntPoly::one());
        assert_eq!(alpha_rs(&padded(&[2, 0])), poly(&[0, 1, 1]));
        assert_eq!(alpha_rs(&padded(&[1, 0])), poly(&[1, 1]));
        assert_eq!(alpha_rs(&padded(&[0, 0, 0])), IntPoly::one());
        assert_eq!(alpha_rs(&padded(&[5])), IntPoly::one());
    }

    #[test]
    fn shift_rules() {
        assert_eq!(
            alpha_rs_shifted(&padded(&[2, 0]), 0),
            Err(Error::ShiftRequired)
        );
        assert_eq!(
            alpha_rs_shifted(&padded(&[2, 1]), 0).unwrap(),
            alpha_rs(&padded(&[2, 1]))
        );
        assert_eq!(
            alpha_rs_shifted(&padded(&[2, 0]), 3).unwrap(),
            alpha_rs(&padded(&[2, 0]))
        );
    }

    #[test]
    fn total_examples() {
        assert_eq!(total_count(2, 2), poly(&[1, 1, 1]));
        for s in 1..5 {
            assert_eq!(total_count(0, s), IntPoly::one());
        }
        for r in 0..6 {
            assert_eq!(total_count(r, 1), IntPoly::one());
        }
    }

    #[test]
    fn lemma_examples() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(lemma_sides(&padded(&[1, 1]), 1).unwrap(), (b(0), b(0)));
        assert_eq!(lemma_sides(&padded(&[2, 0]), 1).unwrap(), (b(1), b(1)));
        assert_eq!(lemma_sides(&padded(&[3, 1, 0]), 1).unwrap(), (b(3), b(3)));
        assert_eq!(lemma_sides(&padded(&[1, 0]), 0), Err(Error::ShiftRequired));
    }

    #[test]
    fn identity_examples() {
        assert_eq!(identity_rhs(4, 1), poly(&[1, 1, 1, 1]));
        assert_eq!(identity_rhs(4, 1), &poly(&[1, 0, 1]) * &pbinom(2, 1));
        for k in 0..8 {
            assert_eq!(identity_rhs(k, k), IntPoly::one());
        }
        for n in 0..8 {
            assert_eq!(identity_rhs(n, 0), IntPoly::one());
        }
        assert_eq!(identity_rhs(2, 3), IntPoly::zero());
    }

    #[test]
    fn chain_type_examples() {
        assert_eq!(
            chain_count_types(&[part(&[1, 1])], 2).unwrap(),
            IntPoly::one()
        );
        assert_eq!(
            chain_count_types(&[part(&[1]), part(&[2])], 2).unwrap(),
            poly(&[0, 1, 1])
        );
        assert_eq!(
            chain_count_types(&[part(&[1]), part(&[1, 1])], 2).unwrap(),
            poly(&[1, 1])
        );
        assert_eq!(chain_count_types(&[], 2).unwrap(), IntPoly::one());
        assert!(matches!(
            chain_count_types(&[part(&[2]), part(&[1, 1])], 2),
            Err(Error::ChainViolation(_))
        ));
        assert!(matches!(
            chain_count_types(&[part(&[1, 1, 1])], 2),
            Err(Error::ChainViolation(_))
        ));
    }

    #[test]
    fn chain_index_examples() {
        for r in 0..5 {
            for s in 1..4 {
                assert_eq!(chain_count_indices(&[r], s).unwrap(), total_count(r, s));
            }
        }
        assert_eq!(chain_count_indices(&[1, 2], 2).unwrap(), poly(&[1, 2, 1]));
        assert_eq!(chain_count_indices(&[0], 3).unwrap(), IntPoly::one());
        assert_eq!(chain_count_indices(&[], 3).unwrap(), IntPoly::one());
        assert_eq!(chain_count_indices(&[2, 2], 3), Err(Error::NotIncreasing));
    }

    #[test]
    fn level_accumulation_matches_literal_chain_sum() {
        for s in 1..=3 {
            for indices in [vec![1, 3], vec![0, 2, 4], vec![1, 2, 3], vec![2, 5]] {
                let literal: Vec<_> = partition_chains(&indices, s)
                    .iter()
                    .map(|c| chain_count_types(c, s).unwrap())
                    .collect();
                assert_eq!(
                    chain_count_indices(&indices, s).unwrap(),
                    IntPoly::sum(&literal),
                    "S={indices:?} s={s}"
                );
            }
        }
    }

    #[test]
    fn group_order_examples() {
        let (sl, g) = group_orders(&padded(&[1, 0]), 2).unwrap();
        assert_eq!((sl, g), (BigInt::from(6), BigInt::from(2)));
        let (sl, g) = group_orders(&padded(&[1, 1]), 2).unwrap();
        assert_eq!(sl, g);
        let (sl, g) = group_orders(&padded(&[2, 0]), 3).unwrap();
        assert_eq!(sl / g, BigInt::from(12));
        assert_eq!(
            group_orders(&padded(&[0, 0]), 2),
            Err(Error::DegenerateModulus)
        );
        assert_eq!(group_orders(&padded(&[1, 0]), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2, 1), BigInt::from(6));
        assert_eq!(gl_order(2, 3, 1), BigInt::from(48));
        assert_eq!(gl_order(1, 3, 2), BigInt::from(6));
        assert_eq!(gl_order(0, 5, 3), BigInt::from(1));
    }

    #[test]
    fn record_json_roundtrip() {
        let rec = CountRecord::new(
            CountKind::AlphaRs,
            [("lambda", "2,0"), ("s", "2")],
            poly(&[0, 1, 1]),
        )
        .with_evals(&[2, 3, 11]);
        let json = rec.to_json();
        assert_eq!(
            json,
            r#"{"kind":"alpha_rs","params":{"lambda":"2,0","s":"2"},"coeffs":["0","1","1"],"evals":{"2":"6","3":"12","11":"132"}}"#
        );
        let back = CountRecord::from_json(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.to_json(), json);
        assert!(back.is_consistent());
        let mut bad = back;
        bad.evals.insert(2, BigInt::from(5));
        assert!(!bad.is_consistent());
    }
}
