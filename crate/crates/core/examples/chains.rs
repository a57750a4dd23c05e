//! Chains of sublattices Z^s ⊇ A_1 ⊇ ... ⊇ A_m with prescribed indices.
//!
//!     cargo run --example chains -- 1,2,3

use sublat::counting::partition_chains;
use sublat::oracle::{chain_census, OracleConfig};
use sublat::{chain_count_indices, chain_count_types};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1,2".into());
    let indices: Vec<usize> = arg
        .split(',')
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (s, p) = (2, 2);
    let census = chain_census(&indices, s, p, &OracleConfig::default()).expect("census");
    for chain in partition_chains(&indices, s) {
        let f = chain_count_types(&chain, s).expect("chain");
        let label: Vec<String> = chain.iter().map(ToString::to_string).collect();
        let seen = census.by_types.get(&chain).copied().unwrap_or(0);
        println!(
            "{:<20} {:<24} {:>5} {:>5}",
            label.join(" ; "),
            f.to_string(),
            f.eval_u64(p),
            seen
        );
    }
    let total = chain_count_indices(&indices, s).expect("indices");
    println!(
        "all chains: {total} = {} ; census {}",
        total.eval_u64(p),
        census.total
    );
}
