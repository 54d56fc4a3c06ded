//! q-integers, q-factorials, Gaussian binomials and their evaluation at a
//! root of unity.
//!
//! Run with: `cargo run --example q_numbers`

use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::laurent::{bar_involution, q_binomial, q_factorial, q_int, RatFunc};

fn main() {
    println!("q-integers [s] = (v^s - v^-s)/(v - v^-1):");
    for s in 1..=5 {
        println!("  [{}] = {}", s, q_int(s).unwrap());
    }

    println!("\nq-factorials and a Gaussian binomial:");
    println!("  [4]! = {}", q_factorial(4).unwrap());
    println!("  [4 choose 2] = {}", q_binomial(4, 2).unwrap());
    println!(
        "  bar([4 choose 2]) = {}  (fixed by v -> v^-1)",
        bar_involution(&q_binomial(4, 2).unwrap())
    );
    println!("  [1 choose 3] = {}  (zero above the diagonal)", q_binomial(1, 3).unwrap());

    println!("\nevaluation at a primitive root of unity (l = 3, so l' = 3):");
    let p = CycParams::new(3).unwrap();
    println!("  minimal polynomial: {}", p.phi());
    println!("  xi^3 = {}", p.xi_pow(3));
    println!("  [3] at xi = {}  (vanishes)", p.q_int_xi(3).unwrap());
    println!("  [4 choose 2] at xi = {}  (vanishes: middle range)", p.q_binomial_xi(4, 2).unwrap());
    println!("  [9 choose 3] at xi = {}  (classical binomial 3 survives)", p.q_binomial_xi(9, 3).unwrap());

    println!("\nquotients of vanishing q-integers specialize after cancellation:");
    let ratio = RatFunc::new(q_int(6).unwrap(), q_int(3).unwrap()).unwrap();
    println!("  [6]/[3] at xi = {}", p.specialize_rf(&ratio).unwrap());
}
