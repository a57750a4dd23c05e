//! Brute-force tallies built on HNF enumeration and SNF classification.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hnf::{hnf_count, hnf_enumerate, Compositions, DiagonalHnfs};
use super::matrix::{quotient_type, solve_lower_row, IntMatrix};
use crate::error::{Error, Result};
use crate::partitions::{PaddedPartition, Partition};

/// Environment variable overriding [`OracleConfig::default`]'s bound.
pub const BOUND_ENV: &str = "SUBLAT_ORACLE_BOUND";

/// Default cap on `p^n` for exhaustive searches.
pub const DEFAULT_BOUND: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub bound: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            bound: DEFAULT_BOUND,
        }
    }
}

impl OracleConfig {
    pub fn new(bound: u64) -> Self {
        OracleConfig { bound }
    }

    /// Reads [`BOUND_ENV`], falling back to the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BOUND_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Self::new)
                .map_err(|e| Error::Parse(format!("{BOUND_ENV}={v:?}: {e}"))),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Errors unless `p0^exp ≤ bound`.
    pub fn check(&self, p0: u64, exp: usize) -> Result<()> {
        let size = num_traits::pow(BigInt::from(p0), exp);
        if size > BigInt::from(self.bound) {
            return Err(Error::SizeGuard {
                size: size.to_string(),
                bound: self.bound,
            });
        }
        Ok(())
    }
}

/// Sublattices of `Z^s` of index `p^r`, tallied by quotient type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub s: usize,
    pub r: usize,
    pub p: u64,
    pub tally: BTreeMap<PaddedPartition, u64>,
    pub total: u64,
}

impl Census {
    pub fn empty(s: usize, r: usize, p: u64) -> Self {
        Census {
            s,
            r,
            p,
            tally: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn record(&mut self, ty: PaddedPartition) {
        *self.tally.entry(ty).or_default() += 1;
        self.total += 1;
    }

    /// Tallies add; parameters must agree.
    pub fn merge(mut self, other: Census) -> Census {
        assert_eq!((self.s, self.r, self.p), (other.s, other.r, other.p));
        for (k, v) in other.tally {
            *self.tally.entry(k).or_default() += v;
        }
        self.total += other.total;
        self
    }

    pub fn count(&self, ty: &PaddedPartition) -> u64 {
        self.tally.get(ty).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("census serializes")
    }
}

struct ByType<'a>(&'a BTreeMap<PaddedPartition, u64>);

impl Serialize for ByType<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // largest type first, matching the partition enumeration order
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().rev() {
            map.serialize_entry(&k.to_string(), &v.to_string())?;
        }
        map.end()
    }
}

impl Serialize for Census {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("s", &self.s)?;
        map.serialize_entry("r", &self.r)?;
        map.serialize_entry("p", &self.p)?;
        map.serialize_entry("total", &self.total.to_string())?;
        map.serialize_entry("by_type", &ByType(&self.tally))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct CensusRepr {
    s: usize,
    r: usize,
    p: u64,
    total: String,
    by_type: BTreeMap<String, String>,
}

impl<'de> Deserialize<'de> for Census {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CensusRepr::deserialize(d)?;
        let mut tally = BTreeMap::new();
        for (k, v) in repr.by_type {
            let ty: PaddedPartition = k.parse().map_err(D::Error::custom)?;
            tally.insert(ty, v.parse::<u64>().map_err(D::Error::custom)?);
        }
        let total = repr.total.parse::<u64>().map_err(D::Error::custom)?;
        if total != tally.values().sum::<u64>() {
            return Err(D::Error::custom("total does not match tally"));
        }
        Ok(Census {
            s: repr.s,
            r: repr.r,
            p: repr.p,
            tally,
            total,
        })
    }
}

fn classify(h: &IntMatrix, p0: u64) -> PaddedPartition {
    quotient_type(h, p0).expect("HNF determinant is a power of p0")
}

/// Tally quotient types over every sublattice of index `p0^r`. The work is
/// split by diagonal and merged, so the result does not depend on
/// scheduling.
pub fn census_alpha_rs(s: usize, r: usize, p0: u64) -> Census {
    let diagonals: Vec<_> = Compositions::new(s, r).collect();
    diagonals
        .into_par_iter()
        .map(|b| {
            let mut part = Census::empty(s, r, p0);
            for h in DiagonalHnfs::new(&b, p0) {
                part.record(classify(&h, p0));
            }
            part
        })
        .reduce(|| Census::empty(s, r, p0), Census::merge)
}

/// Single-threaded reference for [`census_alpha_rs`].
pub fn census_alpha_rs_serial(s: usize, r: usize, p0: u64) -> Census {
    let mut census = Census::empty(s, r, p0);
    for h in hnf_enumerate(s, r, p0) {
        census.record(classify(&h, p0));
    }
    census
}

/// One CSV row per HNF matrix: row-major entries, determinant, quotient type.
pub fn write_census_csv<W: Write>(s: usize, r: usize, p0: u64, out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Parse(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["entries", "det", "type"]).map_err(io_err)?;
    for h in hnf_enumerate(s, r, p0) {
        let entries = h
            .entries()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let ty = classify(&h, p0);
        w.write_record([entries, h.det().to_string(), ty.to_string()])
            .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

/// Subgroups of the abelian p-group of type `λ`, tallied by (type, cotype).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCensus {
    pub lambda: Partition,
    pub p: u64,
    pub tally: BTreeMap<(Partition, Partition), u64>,
}

impl SubgroupCensus {
    pub fn total(&self) -> u64 {
        self.tally.values().sum()
    }

    pub fn type_marginal(&self) -> BTreeMap<Partition, u64> {
        let mut m = BTreeMap::new();
        for ((ty, _), v) in &self.tally {
            *m.entry(ty.clone()).or_default() += v;
        }
        m
    }

    pub fn cotype_marginal(&self) -> BTreeMap<Partition, u64> {
        let mut m = BTreeMap::new();
        for ((_, co), v) in &self.tally {
            *m.entry(co.clone()).or_default() += v;
        }
        m
    }

    /// Number of subgroups of order `p^k`.
    pub fn order_count(&self, k: usize) -> u64 {
        self.tally
            .iter()
            .filter(|((ty, _), _)| ty.weight() == k)
            .map(|(_, v)| v)
            .sum()
    }
}

/// Enumerates the subgroups of `A_λ = ⊕ Z/p^{λᵢ}` as the lattices `H` with
/// `L ⊆ H ⊆ Z^s`, `L = diag(p^{λᵢ}) Z^s`. The type of `H/L` is the SNF
/// type of `X` in `diag(p^{λᵢ}) = X·H`; the cotype is that of `Z^s/H`.
pub fn finite_subgroup_census(
    lambda: &Partition,
    p0: u64,
    config: &OracleConfig,
) -> Result<SubgroupCensus> {
    if !crate::is_prime(p0) {
        return Err(Error::NotPrime(p0));
    }
    config.check(p0, lambda.weight())?;
    let mut tally = BTreeMap::new();
    let s = lambda.len();
    if s == 0 {
        tally.insert((Partition::empty(), Partition::empty()), 1);
        return Ok(SubgroupCensus {
            lambda: lambda.clone(),
            p: p0,
            tally,
        });
    }
    let p = BigInt::from(p0);
    let targets: Vec<Vec<BigInt>> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let mut row = vec![BigInt::from(0); s];
            row[i] = num_traits::pow(p.clone(), e);
            row
        })
        .collect();
    for b in 0..=lambda.weight() {
        for h in hnf_enumerate(s, b, p0) {
            let rows: Option<Vec<Vec<BigInt>>> =
                targets.iter().map(|t| solve_lower_row(&h, t)).collect();
            let Some(rows) = rows else {
                continue;
            };
            let x = IntMatrix::new(s, rows.into_iter().flatten().collect())?;
            let ty = classify(&x, p0).strip();
            let cotype = classify(&h, p0).strip();
            *tally.entry((ty, cotype)).or_default() += 1;
        }
    }
    Ok(SubgroupCensus {
        lambda: lambda.clone(),
        p: p0,
        tally,
    })
}

/// Chains `A_m ⊆ … ⊆ A₁ ⊆ Z^s` with prescribed indices, tallied by the
/// chain of quotient types `(Z^s/A₁, …, Z^s/A_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCensus {
    pub indices: Vec<usize>,
    pub s: usize,
    pub p: u64,
    pub total: u64,
    pub by_types: BTreeMap<Vec<Partition>, u64>,
}

/// Nested HNF enumeration: each `A_{i+1}` is enumerated as `K · B_i` where
/// `B_i` is a basis of `A_i` and `K` runs over the HNFs of index
/// `p^{a_{i+1} − a_i}`.
pub fn chain_census(
    indices: &[usize],
    s: usize,
    p0: u64,
    config: &OracleConfig,
) -> Result<ChainCensus> {
    if !crate::is_prime(p0) {
        return Err(Error::NotPrime(p0));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    if let Some(&top) = indices.last() {
        config.check(p0, top)?;
    }
    let mut census = ChainCensus {
        indices: indices.to_vec(),
        s,
        p: p0,
        total: 0,
        by_types: BTreeMap::new(),
    };
    let steps: Vec<usize> = indices
        .iter()
        .scan(0, |prev, &a| {
            let d = a - *prev;
            *prev = a;
            Some(d)
        })
        .collect();
    walk_chains(
        &IntMatrix::identity(s),
        &steps,
        p0,
        &mut Vec::new(),
        &mut census,
    );
    Ok(census)
}

fn walk_chains(
    basis: &IntMatrix,
    steps: &[usize],
    p0: u64,
    types: &mut Vec<Partition>,
    census: &mut ChainCensus,
) {
    let Some((&d, rest)) = steps.split_first() else {
        census.total += 1;
        *census.by_types.entry(types.clone()).or_default() += 1;
        return;
    };
    for k in hnf_enumerate(basis.dim(), d, p0) {
        let sub = k.mul(basis);
        types.push(classify(&sub, p0).strip());
        walk_chains(&sub, rest, p0, types, census);
        types.pop();
    }
}

/// Expected number of HNF matrices for a census, for size reporting.
pub fn census_size(s: usize, r: usize, p0: u64) -> BigInt {
    hnf_count(s, r, p0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padded(p: &[usize]) -> PaddedPartition {
        PaddedPartition::new(p.to_vec()).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn census_examples() {
        let c = census_alpha_rs(2, 2, 2);
        assert_eq!(c.total, 7);
        assert_eq!(c.count(&padded(&[1, 1])), 1);
        assert_eq!(c.count(&padded(&[2, 0])), 6);

        let c = census_alpha_rs(2, 1, 2);
        assert_eq!(c.total, 3);
        assert_eq!(c.count(&padded(&[1, 0])), 3);

        let c = census_alpha_rs(3, 0, 7);
        assert_eq!(c.total, 1);
        assert_eq!(c.count(&padded(&[0, 0, 0])), 1);
    }

    #[test]
    fn parallel_matches_serial() {
        for (s, r, p) in [(2, 4, 3), (3, 3, 2), (4, 2, 2)] {
            assert_eq!(census_alpha_rs(s, r, p), census_alpha_rs_serial(s, r, p));
        }
    }

    #[test]
    fn census_json() {
        let c = census_alpha_rs(2, 2, 2);
        let json = c.to_json();
        assert_eq!(
            json,
            r#"{"s":2,"r":2,"p":2,"total":"7","by_type":{"2,0":"6","1,1":"1"}}"#
        );
        let back: Census = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"s":2,"r":2,"p":2,"total":"8","by_type":{"2,0":"6","1,1":"1"}}"#;
        assert!(serde_json::from_str::<Census>(bad).is_err());
    }

    #[test]
    fn csv_stream() {
        let mut buf = Vec::new();
        write_census_csv(2, 1, 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "entries,det,type");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "1 0 0 2,2,\"1,0\"");
    }

    #[test]
    fn finite_census_examples() {
        let cfg = OracleConfig::default();
        let c = finite_subgroup_census(&part(&[1, 1]), 2, &cfg).unwrap();
        assert_eq!(c.type_marginal()[&part(&[1])], 3);
        assert_eq!(c.total(), 5);

        for p in [2, 3, 5] {
            let c = finite_subgroup_census(&part(&[2]), p, &cfg).unwrap();
            assert_eq!(c.total(), 3);
            assert_eq!(c.order_count(1), 1);
        }

        let c = finite_subgroup_census(&part(&[2, 1]), 2, &cfg).unwrap();
        assert_eq!(c.type_marginal()[&part(&[1])], 3);
        assert_eq!(c.type_marginal(), c.cotype_marginal());

        let c = finite_subgroup_census(&Partition::empty(), 2, &cfg).unwrap();
        assert_eq!(c.total(), 1);
    }

    #[test]
    fn size_guard() {
        let cfg = OracleConfig::new(100);
        assert!(matches!(
            finite_subgroup_census(&part(&[4, 3]), 2, &cfg),
            Err(Error::SizeGuard { .. })
        ));
        assert!(matches!(
            chain_census(&[1, 7], 2, 2, &cfg),
            Err(Error::SizeGuard { .. })
        ));
        assert!(chain_census(&[1, 6], 2, 2, &cfg).is_ok());
    }

    #[test]
    fn chain_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(chain_census(&[1, 2], 2, 2, &cfg).unwrap().total, 9);
        assert_eq!(chain_census(&[0], 3, 2, &cfg).unwrap().total, 1);
        assert_eq!(chain_census(&[], 3, 2, &cfg).unwrap().total, 1);
        for r in 0..4 {
            assert_eq!(
                chain_census(&[r], 2, 3, &cfg).unwrap().total,
                census_alpha_rs(2, r, 3).total
            );
        }
        let c = chain_census(&[1, 2], 2, 2, &cfg).unwrap();
        assert_eq!(c.by_types[&vec![part(&[1]), part(&[2])]], 6);
        assert_eq!(c.by_types[&vec![part(&[1]), part(&[1, 1])]], 3);
        assert_eq!(chain_census(&[2, 1], 2, 2, &cfg), Err(Error::NotIncreasing));
    }

    #[test]
    fn config_from_env_parses() {
        // only exercises the parse path; the variable is not set in tests
        assert_eq!(OracleConfig::from_env().unwrap().bound, DEFAULT_BOUND);
        assert!(OracleConfig::new(8).check(2, 3).is_ok());
        assert!(OracleConfig::new(8).check(2, 4).is_err());
    }
}
