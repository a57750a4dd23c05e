//! Hermite and Smith normal forms of an integer matrix, and the quotient
//! type of every sublattice of small index.
//!
//!     cargo run --example normal_forms

use sublat::oracle::{hnf_enumerate, quotient_type, snf, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
    println!("det {}", m.det());
    let h = m.hermite_normal_form().unwrap();
    for i in 0..h.dim() {
        println!(
            "hnf {:?}",
            h.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()
        );
    }
    println!(
        "invariant factors {:?}",
        snf(&m)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("index-4 sublattices of Z^2:");
    for h in hnf_enumerate(2, 2, 2) {
        let e: Vec<String> = h.entries().iter().map(ToString::to_string).collect();
        println!(
            "  {:<12} type {}",
            e.join(" "),
            quotient_type(&h, 2).unwrap()
        );
    }
}
