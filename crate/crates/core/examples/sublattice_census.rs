//! Sublattices of Z^s of index p^r by quotient type: closed form against
//! a brute-force Hermite/Smith normal form census.
//!
//!     cargo run --release --example sublattice_census -- 3 4 3

use sublat::oracle::census_alpha_rs;
use sublat::{alpha_rs, enum_padded, total_count};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (s, r, p) = match args[..] {
        [s, r, p] => (s, r, p as u64),
        _ => (3, 3, 2),
    };
    let census = census_alpha_rs(s, r, p);
    println!(
        "{:<10} {:<28} {:>8} {:>8}",
        "type", "alpha_rs", "formula", "census"
    );
    for lambda in enum_padded(r, s) {
        let a = alpha_rs(&lambda);
        println!(
            "{:<10} {:<28} {:>8} {:>8}",
            lambda.to_string(),
            a.to_string(),
            a.eval_u64(p),
            census.count(&lambda)
        );
    }
    let total = total_count(r, s);
    println!(
        "total {total} = {} ; census {}",
        total.eval_u64(p),
        census.total
    );
}
