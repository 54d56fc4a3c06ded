//! The rewrite engine: products of divided-power generators straightened
//! into the triangular normal form E-word x torus x F-word.
//!
//! Run with: `cargo run --example straightening`

use std::sync::Arc;

use lusztig_qgroup::cartan::CartanMatrix;
use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::torus_special::SpecTorusElem;
use lusztig_qgroup::uq::{self, UElem, UqContext};

fn main() {
    let ctx = UqContext::new(CartanMatrix::a2(), CycParams::new(3).unwrap());

    // Divided powers of the same root recombine with a Gaussian binomial,
    // which may vanish at the root of unity.
    let e1 = UElem::e_gen(&ctx, 0, 1);
    let e2 = UElem::e_gen(&ctx, 0, 2);
    println!("E[1;1]*E[1;1] = {}", e1.multiply(&e1).unwrap());
    println!("E[1;1]*E[1;2] = {}  (the binomial [3 choose 2] vanishes at l = 3)",
        e1.multiply(&e2).unwrap());

    // The rank-2 Serre-type straightening introduces the composite letter.
    let f = UElem::e_gen(&ctx, 1, 1);
    println!("E[1;1]*E[2;1] = {}", e1.multiply(&f).unwrap());

    // E against F produces torus terms through the recombination rule.
    let fe = UElem::f_gen(&ctx, 0, 1).multiply(&UElem::e_gen(&ctx, 0, 1)).unwrap();
    let ef = UElem::e_gen(&ctx, 0, 1).multiply(&UElem::f_gen(&ctx, 0, 1)).unwrap();
    println!("\nE[1;1]*F[1;1] - F[1;1]*E[1;1] = {}", ef.sub(&fe));

    // Torus generators move across letters with derived constants.
    let t = UElem::from_torus(&ctx, &SpecTorusElem::t_gen(&ctx.spec, 0));
    println!("\nt[1]*E[1;1] = {}", t.multiply(&e1).unwrap());
    println!("t[1]*F[2;1] = {}", t.multiply(&UElem::f_gen(&ctx, 1, 1)).unwrap());

    // The commutator identities of k_(i,l) against the generators, checked
    // through the engine.
    println!("\nk_(1,l) commutator identities at l = 3 (A2):");
    for c in uq::verify_kl_commutators(&ctx, "A2").unwrap() {
        println!("  [{}] {}", if c.passed() { "pass" } else { "FAIL" }, c.id);
    }

    // Rank 3 has no complete local straightening system; the engine reports
    // it instead of guessing.
    let ctx3 = UqContext::new(CartanMatrix::a3(), CycParams::new(3).unwrap());
    let c12 = UElem::e_composite(&ctx3, 0, 1, 1).unwrap();
    let c23 = UElem::e_composite(&ctx3, 1, 2, 1).unwrap();
    match c12.multiply(&c23) {
        Err(e) => println!("\nrank-3 product: {}", e),
        Ok(v) => println!("\nrank-3 product unexpectedly normalized: {}", v),
    }
    let _ = Arc::clone(&ctx);
}
