//! Subgroups of order p^k in A_lambda for every k, with coefficient shape.
//!
//!     cargo run --example order_unimodality -- 4,2,1

use sublat::{alpha_order, Partition};

fn main() {
    let lambda: Partition = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("4,2,1")
        .parse()
        .expect("partition");
    for k in 0..=lambda.weight() {
        let a = alpha_order(&lambda, k);
        let report = a.shape();
        let r = report.report().expect("nonzero");
        println!(
            "k={k:<2} {a:<48} unimodal={} symmetric={}",
            r.is_unimodal, r.is_symmetric
        );
    }
}
