//! The p-binomial from its recurrence, from partitions in a box, and from
//! the product formula at a prime.
//!
//!     cargo run --example pbinom_two_ways -- 6 3

use sublat::qbinomial::pbinom_product_at;
use sublat::{enum_in_box, pbinom, pbinom_box};

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (n, k) = match args[..] {
        [n, k] => (n, k),
        _ => (6, 3),
    };
    let rec = pbinom(n, k);
    let boxed = pbinom_box(n, k);
    println!("binom({n},{k})_p = {rec}");
    println!(
        "partitions in a {k}x{} box: {}",
        n.saturating_sub(k),
        enum_in_box(k, n.saturating_sub(k)).count()
    );
    println!("box sum agrees: {}", rec == boxed);
    for p in [2, 3, 5] {
        println!(
            "p={p}: {} (product formula {})",
            rec.eval_u64(p),
            pbinom_product_at(n, k, p)
        );
    }
}
