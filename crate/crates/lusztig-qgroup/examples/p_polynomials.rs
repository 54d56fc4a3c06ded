//! The recursively defined polynomials p_{n,s} behind the skew-primitive
//! torus elements h_{i,n}, the K-power expansion identity, and the
//! triangular matrix inversion expressing k's through h's.
//!
//! Run with: `cargo run --example p_polynomials`

use lusztig_qgroup::suites;
use lusztig_qgroup::torus::{self, GroupAlgElem};

fn main() {
    print!("{}", suites::render_p_table(4).unwrap());

    println!("\ndiagonal closed form check (n <= 8):");
    for n in 1..=8 {
        let ok = torus::p_poly(n, n).unwrap() == torus::p_diag_closed_form(n).unwrap();
        println!("  p[{0};{0}] matches the closed form: {1}", n, ok);
    }

    println!("\nK^n - K^-n = (v^n - v^-n) sum_s p_(n,s) k_s K^(phi_n(s)):");
    for n in 1..=6 {
        let ok = torus::verify_k_power_difference(1, 0, n).unwrap().is_ok();
        println!("  n = {}: {}", n, ok);
    }

    println!("\nh elements (skew-primitive combinations):");
    for n in 1..=3 {
        println!("  h[1;{}] = {}", n, torus::h_elem(1, 0, n).unwrap());
    }
    let h2 = torus::h_elem(1, 0, 2).unwrap();
    let skew = h2.comult()
        == h2
            .tensor(&GroupAlgElem::one(1))
            .add(&GroupAlgElem::k_pow(1, 0, 4).tensor(&h2));
    println!("  Delta(h_2) = h_2 (x) 1 + K^4 (x) h_2: {}", skew);

    println!("\ninverse-matrix coefficients (k through h):");
    print!("{}", suites::render_q_table(3).unwrap());
}
