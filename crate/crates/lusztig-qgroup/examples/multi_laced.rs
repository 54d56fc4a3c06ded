//! The multiply-laced torus: per-vertex scaling exponents, the relations
//! (b1)-(b5), and the splitting of the specialization with its hypothesis
//! checks.
//!
//! Run with: `cargo run --example multi_laced`

use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::multi::{verify_multi, MultiParams};

fn main() {
    // l = 5, d = (1, 2): the hypothesis holds at every vertex and the
    // scaled splitting verifies.
    let mp = MultiParams::new(vec![1, 2], CycParams::new(5).unwrap()).unwrap();
    println!("scaled k at the doubled vertex: k[2;1] = {}", mp.k_elem(1, 1).unwrap());
    println!("scaled primitive: h[2;2] = {}", mp.h_elem(1, 2).unwrap());
    let checks = verify_multi(&mp, 4).unwrap();
    let passed = checks.iter().filter(|c| c.passed()).count();
    println!("l = 5, d = (1,2): {}/{} checks pass", passed, checks.len());

    // l = 2, d = (1, 2): xi^4 = 1, so the second vertex violates the
    // splitting hypothesis; the verifier reports it instead of asserting.
    let mp2 = MultiParams::new(vec![1, 2], CycParams::new(2).unwrap()).unwrap();
    let checks = verify_multi(&mp2, 4).unwrap();
    for c in checks.iter().filter(|c| c.id.starts_with("multi.split")) {
        println!("l = 2, d = (1,2): {} -> {}", c.id, c.witness.clone().unwrap_or_default());
    }

    // l = 4, d = (2): the hypothesis xi^(2d) != 1 holds but a scaled
    // q-integer vanishes below l; reported as degenerate.
    let mp3 = MultiParams::new(vec![2], CycParams::new(4).unwrap()).unwrap();
    let checks = verify_multi(&mp3, 3).unwrap();
    for c in checks.iter().filter(|c| c.id.starts_with("multi.split")) {
        println!("l = 4, d = (2):   {} -> {}", c.id, c.witness.clone().unwrap_or_default());
    }
}
