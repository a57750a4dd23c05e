//! Exact counting polynomials for subgroups of finite abelian p-groups and
//! for finite-index sublattices of `Z^s`.
//!
//! The closed forms live in [`counting`] and return [`IntPoly`] values in a
//! formal prime `p`. The [`oracle`] module recomputes the same numbers at
//! concrete primes by exhaustive Hermite/Smith normal form enumeration, and
//! [`cli`] exposes both behind the `sublat` binary.
//!
//! ```
//! use sublat::{alpha_rs, pbinom, identity_rhs, PaddedPartition};
//!
//! let lambda: PaddedPartition = "2,0".parse().unwrap();
//! assert_eq!(alpha_rs(&lambda).to_string(), "p + p^2");
//! assert_eq!(identity_rhs(4, 1), pbinom(4, 1));
//! ```

pub mod bigpoly;
pub mod cli;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod qbinomial;

pub use bigpoly::{IntPoly, Shape, ShapeReport};
pub use counting::{
    alpha_order, alpha_rs, alpha_rs_shifted, butler_alpha, chain_count_indices, chain_count_types,
    group_orders, identity_rhs, lemma_sides, total_count, CountKind, CountRecord,
};
pub use error::{Error, Result};
pub use partitions::{
    enum_first_part, enum_in_box, enum_padded, MultiplicityForm, PaddedPartition, Partition,
};
pub use qbinomial::{pbinom, pbinom_box};

/// Trial division; adequate for the small primes the oracle can handle.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
