//! Randomised and exhaustive invariants across the polynomial, partition,
//! counting and oracle layers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use sublat::oracle::{census_alpha_rs, census_alpha_rs_serial, snf, IntMatrix};
use sublat::partitions::partitions_of;
use sublat::{
    alpha_rs, enum_first_part, enum_in_box, enum_padded, pbinom, pbinom_box, CountKind,
    CountRecord, IntPoly, Partition,
};

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-50i64..50, 0..8).prop_map(|c| IntPoly::from_i64s(&c))
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..8, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn matrix(dim: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..7, dim * dim).prop_map(move |e| {
        let rows: Vec<Vec<i64>> = e.chunks(dim).map(<[i64]>::to_vec).collect();
        IntMatrix::from_rows(&rows).unwrap()
    })
}

/// A product of elementary row operations on `dim × dim` matrices.
fn unimodular(dim: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..dim, 0..dim, -3i64..4), 0..8).prop_map(move |ops| {
        let mut u = IntMatrix::identity(dim);
        for (i, j, c) in ops {
            let mut e = IntMatrix::identity(dim);
            if i == j {
                // swap i with its neighbour
                let k = (i + 1) % dim;
                e.set(i, i, BigInt::from(0));
                e.set(k, k, BigInt::from(0));
                e.set(i, k, BigInt::from(1));
                e.set(k, i, BigInt::from(1));
            } else {
                e.set(i, j, BigInt::from(c));
            }
            u = e.mul(&u);
        }
        u
    })
}

proptest! {
    #[test]
    fn eval_is_a_ring_homomorphism(a in poly(), b in poly(), xs in prop::collection::vec(-99i64..100, 10)) {
        for x in xs {
            let x = BigInt::from(x);
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn polys_are_canonical(a in poly()) {
        prop_assert!(a.coeffs().last().is_none_or(|c| *c != BigInt::from(0)));
        prop_assert_eq!(IntPoly::from_coeffs(a.coeffs().to_vec()), a);
    }

    #[test]
    fn conjugation_is_an_involution(l in partition()) {
        let c = l.conjugate();
        prop_assert_eq!(c.weight(), l.weight());
        prop_assert_eq!(c.len(), l.first().unwrap_or(0));
        prop_assert_eq!(c.conjugate(), l);
    }

    #[test]
    fn containment_is_preserved_by_conjugation(l in partition(), m in partition()) {
        prop_assert_eq!(l.contains(&m), l.conjugate().contains(&m.conjugate()));
        prop_assert!(l.contains(&l));
        prop_assert!(l.contains(&Partition::empty()));
    }

    #[test]
    fn partition_strings_round_trip(l in partition()) {
        prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
    }

    #[test]
    fn count_records_round_trip(a in poly(), n in 0usize..50) {
        let rec = CountRecord::new(CountKind::Pbinom, [("n", n)], a).with_evals(&[2, 3, 7]);
        let json = rec.to_json();
        let back = CountRecord::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(back, rec);
    }

    #[test]
    fn snf_ignores_unimodular_changes_of_basis(
        m in matrix(3),
        u in unimodular(3),
        v in unimodular(3),
    ) {
        prop_assume!(m.det() != BigInt::from(0));
        let before = snf(&m).unwrap();
        prop_assert_eq!(snf(&u.mul(&m).mul(&v)).unwrap(), before.clone());
        prop_assert_eq!(snf(&m.transpose()).unwrap(), before.clone());
        let product: BigInt = before.iter().product();
        prop_assert_eq!(product, m.det().magnitude().clone().into());
        for w in before.windows(2) {
            prop_assert_eq!(&w[0] % &w[1], BigInt::from(0));
        }
    }

    #[test]
    fn hnf_is_a_basis_invariant(m in matrix(3), u in unimodular(3)) {
        prop_assume!(m.det() != BigInt::from(0));
        let h = m.hermite_normal_form().unwrap();
        prop_assert!(h.is_lower_triangular());
        prop_assert_eq!(u.mul(&m).hermite_normal_form().unwrap(), h.clone());
        prop_assert_eq!(h.hermite_normal_form().unwrap(), h);
    }
}

#[test]
fn box_sum_is_the_p_binomial() {
    for n in 0..=12 {
        for l in 0..=n {
            let by_box = IntPoly::sum(
                &enum_in_box(l, n - l)
                    .map(|lam| IntPoly::p_pow(lam.weight()))
                    .collect::<Vec<_>>(),
            );
            assert_eq!(by_box, pbinom(n, l), "n={n} l={l}");
            assert_eq!(pbinom_box(n, l), by_box);
        }
    }
}

/// Partitions of `r` into at most `s` parts, by the standard recurrence.
fn partition_count(r: usize, s: usize) -> usize {
    let mut table = vec![vec![0usize; s + 1]; r + 1];
    for row in table[0].iter_mut() {
        *row = 1;
    }
    for n in 1..=r {
        for k in 1..=s {
            table[n][k] = table[n][k - 1] + if n >= k { table[n - k][k] } else { 0 };
        }
    }
    table[r][s]
}

#[test]
fn padded_enumeration_counts() {
    for s in 1..=6 {
        for r in 0..=12 {
            let all: Vec<_> = enum_padded(r, s).collect();
            assert_eq!(all.len(), partition_count(r, s), "r={r} s={s}");
            assert!(all.iter().all(|l| l.len() == s && l.weight() == r));
            assert!(all.windows(2).all(|w| w[0] > w[1]), "lex-decreasing");
            assert_eq!(partitions_of(r, s).count(), all.len());
        }
    }
}

#[test]
fn shifted_conjugate_is_a_bijection_onto_first_part_s() {
    for s in 1..=5 {
        for r in 0..=8 {
            let image: BTreeSet<Partition> = enum_padded(r, s)
                .map(|l| l.add_t(1).unwrap().conjugate())
                .collect();
            let target: BTreeSet<Partition> = enum_first_part(r + s, s).collect();
            assert_eq!(image.len(), partition_count(r, s));
            assert_eq!(image, target, "r={r} s={s}");
        }
    }
}

#[test]
fn parallel_and_serial_census_agree() {
    for (s, r, p) in [(2, 3, 2), (3, 3, 3), (3, 4, 2)] {
        let par = census_alpha_rs(s, r, p);
        assert_eq!(par, census_alpha_rs_serial(s, r, p));
        let sum: u64 = par.tally.values().sum();
        assert_eq!(sum, par.total);
        for (ty, &n) in &par.tally {
            assert_eq!(alpha_rs(ty).eval_u64(p), BigInt::from(n));
        }
    }
}
