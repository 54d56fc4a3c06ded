//! Rebuilding the Hopf algebra from its three factors: the product,
//! coproduct and antipode of triangular monomials computed purely from the
//! datum (actions, pairing, coactions), compared against the straightening
//! engine.
//!
//! Run with: `cargo run --example reconstruction`

use lusztig_qgroup::cartan::CartanMatrix;
use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::td::{self, simple_letter, TdDatum};
use lusztig_qgroup::torus_special::{SpecTorusElem, SpecTorusMonomial};
use lusztig_qgroup::uq::{UElem, UqContext};

fn main() {
    let ctx = UqContext::new(CartanMatrix::a1(), CycParams::new(3).unwrap());
    let td_datum = TdDatum::new(&ctx);

    // (1, 1, F) times (E, 1, 1): the interesting corner of the product.
    let a = Vec::new();
    let h = SpecTorusMonomial::unit(1);
    let b = simple_letter(0, 1);
    let c = simple_letter(0, 2);
    let k = SpecTorusMonomial::unit(1);
    let d = Vec::new();
    let recon = td::reconstruct_product(&td_datum, (&a, &h, &b), (&c, &k, &d)).unwrap();
    let engine = UElem::f_gen(&ctx, 0, 1)
        .multiply(&UElem::e_gen(&ctx, 0, 2))
        .unwrap();
    println!("reconstructed F[1;1]*E[1;2] = {}", recon);
    println!("engine        F[1;1]*E[1;2] = {}", engine);
    assert_eq!(recon, engine);

    // The antipode of a group-like triple.
    let mut hk = SpecTorusMonomial::unit(1);
    hk.g[0] = 1;
    let s = td::reconstruct_antipode(&td_datum, (&Vec::new(), &hk, &Vec::new())).unwrap();
    println!("\nS(K[1]) = {}", s);
    assert_eq!(
        s,
        UElem::from_torus(&ctx, &SpecTorusElem::g_pow(&ctx.spec, 0, -1))
    );
    let s_e = td::reconstruct_antipode(
        &td_datum,
        (&simple_letter(0, 1), &SpecTorusMonomial::unit(1), &Vec::new()),
    )
    .unwrap();
    println!("S(E[1;1]) = {}", s_e);

    // Random normal-form triples agree with the engine across the board.
    let checks = td::verify_reconstruction(&ctx, "A1", 50, 3, 7).unwrap();
    for c in checks {
        println!(
            "\n[{}] {} {}",
            if c.passed() { "pass" } else { "FAIL" },
            c.id,
            c.witness.unwrap_or_default()
        );
    }
}
