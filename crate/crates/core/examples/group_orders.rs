//! alpha_rs evaluated at a prime as an index |SL_s(Z/p^m)| / |G_lambda|.
//!
//!     cargo run --example group_orders -- 3

use sublat::{alpha_rs, enum_padded, group_orders};

fn main() {
    let p: u64 = std::env::args()
        .nth(1)
        .map_or(2, |a| a.parse().expect("prime"));
    for s in 1..=3 {
        for r in 1..=4 {
            for lambda in enum_padded(r, s) {
                let (sl, g) = group_orders(&lambda, p).expect("orders");
                println!(
                    "{:<8} |SL| = {sl:<16} |G| = {g:<12} ratio {:<6} alpha_rs = {}",
                    lambda.to_string(),
                    &sl / &g,
                    alpha_rs(&lambda).eval_u64(p)
                );
            }
        }
    }
}
