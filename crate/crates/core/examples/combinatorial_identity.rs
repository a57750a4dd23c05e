//! binom(n,k)_p as a sum over partitions of n+1 with first part k+1.
//!
//!     cargo run --example combinatorial_identity -- 4 1

use sublat::counting::conjugate_product;
use sublat::{enum_first_part, identity_rhs, pbinom};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (n, k) = match args[..] {
        [n, k] => (n, k),
        _ => (4, 1),
    };
    for lambda in enum_first_part(n + 1, k + 1) {
        println!("{lambda:<16} {}", conjugate_product(&lambda));
    }
    let rhs = identity_rhs(n, k);
    println!("sum              {rhs}");
    println!("binom({n},{k})_p     {}", pbinom(n, k));
    println!(
        "{}",
        if rhs == pbinom(n, k) {
            "MATCH"
        } else {
            "MISMATCH"
        }
    );
}
