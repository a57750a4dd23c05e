//! Subgroups of a finite abelian p-group by type, against an explicit
//! enumeration, plus the type/cotype duality.
//!
//!     cargo run --example butler_subgroups -- 3,1 2

use sublat::oracle::{finite_subgroup_census, OracleConfig};
use sublat::partitions::partitions_of;
use sublat::{butler_alpha, Partition};

fn main() {
    let mut args = std::env::args().skip(1);
    let lambda: Partition = args
        .next()
        .as_deref()
        .unwrap_or("3,1")
        .parse()
        .expect("partition");
    let p: u64 = args.next().map_or(2, |a| a.parse().expect("prime"));
    let census = finite_subgroup_census(&lambda, p, &OracleConfig::default()).expect("census");
    let types = census.type_marginal();
    println!("subgroups of type mu in A_({lambda}) at p={p}");
    for mu in (0..=lambda.weight()).flat_map(|k| partitions_of(k, lambda.len())) {
        if !lambda.contains(&mu) {
            continue;
        }
        let a = butler_alpha(&lambda, &mu);
        let seen = types.get(&mu).copied().unwrap_or(0);
        let label = if mu.is_empty() {
            "0".to_string()
        } else {
            mu.to_string()
        };
        println!(
            "  mu={:<8} {:<24} {:>6} {:>6}",
            label,
            a.to_string(),
            a.eval_u64(p),
            seen
        );
    }
    println!("total subgroups {}", census.total());
    println!(
        "type and cotype marginals agree: {}",
        types == census.cotype_marginal()
    );
}
