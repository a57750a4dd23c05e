//! Integer partitions, zero-padded partitions and the enumerations the
//! counting formulas sum over.
//!
//! All enumerations are lazy iterators yielding partitions in
//! lexicographically decreasing order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

/// A weakly decreasing sequence of non-negative integers with a fixed,
/// nonzero length `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaddedPartition(Vec<usize>);

/// Distinct parts `μ₁ > … > μ_l ≥ 0` with multiplicities `ρ₁, …, ρ_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityForm {
    pub distinct: Vec<usize>,
    pub mults: Vec<usize>,
}

fn check_decreasing(parts: &[usize]) -> Result<()> {
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!(
            "{parts:?} is not weakly decreasing"
        )));
    }
    Ok(())
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
        })
        .collect()
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        check_decreasing(&parts)?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// `λᵢ` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1)
            .and_then(|i| self.0.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// `λ′ᵢ = #{j : λⱼ ≥ i}` for `1 ≤ i ≤ λ₁`.
    pub fn conjugate(&self) -> Partition {
        let width = self.first().unwrap_or(0);
        let conj = (1..=width)
            .map(|i| self.0.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition(conj)
    }

    /// `μ ⊆ λ`: no more parts, and `μᵢ ≤ λᵢ` for each of them.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    /// Pad with zeros to exactly `s` parts.
    pub fn pad(&self, s: usize) -> Result<PaddedPartition> {
        if self.len() > s {
            return Err(Error::InvalidPartition(format!(
                "{self} has more than {s} parts"
            )));
        }
        let mut parts = self.0.clone();
        parts.resize(s, 0);
        PaddedPartition::new(parts)
    }
}

impl PaddedPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition(
                "padded partition needs at least one entry".into(),
            ));
        }
        check_decreasing(&parts)?;
        Ok(PaddedPartition(parts))
    }

    pub fn zeros(s: usize) -> Result<Self> {
        Self::new(vec![0; s])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The fixed length `s`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn has_zero_part(&self) -> bool {
        self.0.last() == Some(&0)
    }

    pub fn strip(&self) -> Partition {
        Partition(self.0.iter().copied().filter(|&p| p > 0).collect())
    }

    /// `(λ₁+t ≥ … ≥ λ_s+t)`. A zero part needs `t ≥ 1`.
    pub fn add_t(&self, t: usize) -> Result<Partition> {
        if t == 0 && self.has_zero_part() {
            return Err(Error::ShiftRequired);
        }
        Ok(Partition(self.0.iter().map(|p| p + t).collect()))
    }

    pub fn multiplicity_form(&self) -> MultiplicityForm {
        let mut distinct = Vec::new();
        let mut mults: Vec<usize> = Vec::new();
        for &p in &self.0 {
            if distinct.last() == Some(&p) {
                *mults.last_mut().unwrap() += 1;
            } else {
                distinct.push(p);
                mults.push(1);
            }
        }
        MultiplicityForm { distinct, mults }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl fmt::Display for PaddedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

/// Comma-separated parts; trailing zeros are dropped, the empty string is ∅.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = parse_parts(s)?;
        check_decreasing(&parts)?;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }
}

impl FromStr for PaddedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PaddedPartition::new(parse_parts(s)?)
    }
}

/// Lazy post-order walk over weakly decreasing positive sequences with at
/// most `max_len` parts, each at most `max_part`, optionally of a fixed
/// weight. Post-order with children visited largest-first is exactly
/// lexicographically decreasing order.
#[derive(Clone, Debug)]
pub struct BoundedPartitions {
    max_len: usize,
    max_part: usize,
    weight: Option<usize>,
    parts: Vec<usize>,
    sum: usize,
    started: bool,
    done: bool,
}

impl BoundedPartitions {
    pub fn new(max_len: usize, max_part: usize, weight: Option<usize>) -> Self {
        BoundedPartitions {
            max_len,
            max_part,
            weight,
            parts: Vec::new(),
            sum: 0,
            started: false,
            done: false,
        }
    }

    /// Largest part that may follow the current prefix and still leave the
    /// target weight reachable.
    fn child_cap(&self) -> usize {
        let prev = self.parts.last().copied().unwrap_or(self.max_part);
        let cap = prev.min(self.max_part);
        match self.weight {
            Some(w) => cap.min(w - self.sum),
            None => cap,
        }
    }

    fn feasible(&self, value: usize, depth_after: usize) -> bool {
        match self.weight {
            // remaining slots can hold at most `value` each
            Some(w) => self.sum + value * (self.max_len - depth_after + 1) >= w,
            None => true,
        }
    }

    fn push(&mut self, v: usize) {
        self.parts.push(v);
        self.sum += v;
    }

    fn pop(&mut self) -> Option<usize> {
        let v = self.parts.pop()?;
        self.sum -= v;
        Some(v)
    }

    fn descend(&mut self) {
        while self.parts.len() < self.max_len {
            let cap = self.child_cap();
            if cap == 0 || !self.feasible(cap, self.parts.len() + 1) {
                break;
            }
            self.push(cap);
        }
    }

    fn advance(&mut self) {
        let Some(v) = self.pop() else {
            self.done = true;
            return;
        };
        if v > 1 && self.feasible(v - 1, self.parts.len() + 1) {
            self.push(v - 1);
            self.descend();
        }
    }

    fn accepted(&self) -> bool {
        self.weight.is_none_or(|w| self.sum == w)
    }
}

impl Iterator for BoundedPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            if self.done {
                return None;
            }
            if self.started {
                self.advance();
                if self.done {
                    return None;
                }
            } else {
                self.started = true;
                self.descend();
            }
            if self.accepted() {
                return Some(Partition(self.parts.clone()));
            }
        }
    }
}

/// Partitions of `n` whose first part is exactly `f`.
pub fn enum_first_part(n: usize, f: usize) -> impl Iterator<Item = Partition> {
    let take = f >= 1 && f <= n;
    BoundedPartitions::new(n, f, Some(n)).take_while(move |p| take && p.first() == Some(f))
}

/// All partitions of `r` into at most `s` parts, zero-padded to length `s`.
/// Yields nothing when `s == 0`.
pub fn enum_padded(r: usize, s: usize) -> impl Iterator<Item = PaddedPartition> {
    let max_len = if s == 0 { 0 } else { s };
    BoundedPartitions::new(max_len, r, Some(r))
        .filter(move |_| s > 0)
        .map(move |p| p.pad(s).expect("at most s parts"))
}

/// All partitions with at most `rows` parts, each at most `cols`, including ∅.
pub fn enum_in_box(rows: usize, cols: usize) -> impl Iterator<Item = Partition> {
    BoundedPartitions::new(rows, cols, None)
}

/// Partitions of `n` with at most `max_len` parts.
pub fn partitions_of(n: usize, max_len: usize) -> impl Iterator<Item = Partition> {
    BoundedPartitions::new(max_len, n, Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn padded(p: &[usize]) -> PaddedPartition {
        PaddedPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[5, 4, 4, 1]).conjugate(), part(&[4, 3, 3, 3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
    }

    #[test]
    fn contains_examples() {
        assert!(part(&[3, 2]).contains(&part(&[2, 1])));
        assert!(!part(&[3, 2]).contains(&part(&[1, 1, 1])));
        assert!(part(&[4, 1]).contains(&Partition::empty()));
        assert!(Partition::empty().contains(&Partition::empty()));
        assert!(!part(&[2, 2]).contains(&part(&[3])));
    }

    #[test]
    fn add_t_examples() {
        assert_eq!(padded(&[2, 0]).add_t(1).unwrap(), part(&[3, 1]));
        assert_eq!(padded(&[1, 1]).add_t(0).unwrap(), part(&[1, 1]));
        assert_eq!(padded(&[1, 0, 0]).add_t(2).unwrap(), part(&[3, 2, 2]));
        assert_eq!(padded(&[2, 0]).add_t(0), Err(Error::ShiftRequired));
    }

    #[test]
    fn multiplicity_form_examples() {
        let m = padded(&[2, 0]).multiplicity_form();
        assert_eq!((m.distinct, m.mults), (vec![2, 0], vec![1, 1]));
        let m = padded(&[1, 1]).multiplicity_form();
        assert_eq!((m.distinct, m.mults), (vec![1], vec![2]));
        let m = padded(&[3, 3, 1, 0, 0]).multiplicity_form();
        assert_eq!((m.distinct, m.mults), (vec![3, 1, 0], vec![2, 1, 2]));
    }

    #[test]
    fn first_part_examples() {
        let got: Vec<_> = enum_first_part(5, 2).collect();
        assert_eq!(got, vec![part(&[2, 2, 1]), part(&[2, 1, 1, 1])]);
        for f in 1..6 {
            assert_eq!(enum_first_part(f, f).collect::<Vec<_>>(), vec![part(&[f])]);
        }
        assert_eq!(
            enum_first_part(4, 1).collect::<Vec<_>>(),
            vec![part(&[1, 1, 1, 1])]
        );
        assert_eq!(enum_first_part(3, 4).count(), 0);
        assert_eq!(enum_first_part(3, 0).count(), 0);
    }

    #[test]
    fn padded_examples() {
        let got: Vec<_> = enum_padded(2, 2).collect();
        assert_eq!(got, vec![padded(&[2, 0]), padded(&[1, 1])]);
        assert_eq!(
            enum_padded(0, 3).collect::<Vec<_>>(),
            vec![padded(&[0, 0, 0])]
        );
        let got: Vec<_> = enum_padded(3, 2).collect();
        assert_eq!(got, vec![padded(&[3, 0]), padded(&[2, 1])]);
        assert_eq!(enum_padded(3, 0).count(), 0);
    }

    #[test]
    fn box_examples() {
        let got: Vec<_> = enum_in_box(1, 1).collect();
        assert_eq!(got, vec![part(&[1]), Partition::empty()]);
        let got: Vec<_> = enum_in_box(2, 2).collect();
        assert_eq!(
            got,
            vec![
                part(&[2, 2]),
                part(&[2, 1]),
                part(&[2]),
                part(&[1, 1]),
                part(&[1]),
                Partition::empty()
            ]
        );
        assert_eq!(
            enum_in_box(0, 5).collect::<Vec<_>>(),
            vec![Partition::empty()]
        );
        assert_eq!(
            enum_in_box(5, 0).collect::<Vec<_>>(),
            vec![Partition::empty()]
        );
    }

    #[test]
    fn partition_counts_match_known_sequence() {
        // p(n) for n = 0..=12
        let known = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &expected) in known.iter().enumerate() {
            assert_eq!(partitions_of(n, n).count(), expected, "p({n})");
        }
    }

    #[test]
    fn parsing() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), part(&[3, 2, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("2,0".parse::<Partition>().unwrap(), part(&[2]));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0,1".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!("2,0".parse::<PaddedPartition>().unwrap(), padded(&[2, 0]));
        assert!("0,1".parse::<PaddedPartition>().is_err());
        assert!("".parse::<PaddedPartition>().is_err());
        assert_eq!(padded(&[3, 1, 0]).to_string(), "3,1,0");
        assert_eq!(Partition::empty().to_string(), "");
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(PaddedPartition::new(vec![]).is_err());
        assert!(part(&[1, 1, 1]).pad(2).is_err());
        assert_eq!(part(&[2]).pad(3).unwrap(), padded(&[2, 0, 0]));
    }
}
