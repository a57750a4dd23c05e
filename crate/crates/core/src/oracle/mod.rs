//! Brute-force ground truth for the closed forms in [`crate::counting`].
//!
//! Sublattices are enumerated through Hermite normal forms, quotients are
//! classified through Smith normal forms, and subgroups of a finite abelian
//! p-group are treated as lattices squeezed between `diag(p^{λᵢ}) Z^s` and
//! `Z^s`.

mod census;
mod hnf;
mod matrix;

pub use census::{
    census_alpha_rs, census_alpha_rs_serial, census_size, chain_census, finite_subgroup_census,
    write_census_csv, Census, ChainCensus, OracleConfig, SubgroupCensus, BOUND_ENV, DEFAULT_BOUND,
};
pub use hnf::{hnf_count, hnf_enumerate, Compositions, DiagonalHnfs};
pub use matrix::{prime_power_exponent, quotient_type, snf, solve_lower_row, IntMatrix};
