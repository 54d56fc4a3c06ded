//! The torus at a root of unity: the derived relation K^(2l) = 1, the
//! images of the divided-power generators in the group-times-polynomial
//! normal form, and the machine verification of the splitting isomorphism.
//!
//! Run with: `cargo run --example specialized_torus`

use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::suites;
use lusztig_qgroup::torus_special::{self, SpecContext};

fn main() {
    let ell = 3;
    let params = CycParams::new(ell).unwrap();
    let ctx = SpecContext::new(params.clone(), 1);

    println!("deriving K^(2l) = 1 at l = {}:", ell);
    for c in torus_special::verify_k2l_derivation(&params, 1).unwrap() {
        println!("  [{}] {}", if c.passed() { "pass" } else { "FAIL" }, c.rule);
    }

    println!("\nimages of k[1;t] in the (group x polynomial) normal form:");
    for t in 0..=(2 * ell) {
        println!("  k[1;{}] -> {}", t, torus_special::spec_k(&ctx, 0, t).unwrap());
    }

    println!("\nthe b-expansion of the degree-l primitive:");
    print!("{}", suites::render_b_table(ell).unwrap());

    println!("\nfull isomorphism verification at l = 2..=5:");
    for l in 2..=5 {
        let p = CycParams::new(l).unwrap();
        let checks = torus_special::verify_iso(&p, 2 * l).unwrap();
        let passed = checks.iter().filter(|c| c.passed()).count();
        println!("  l = {} (l' = {}): {}/{} checks pass", l, p.ell_prime(), passed, checks.len());
    }
}
