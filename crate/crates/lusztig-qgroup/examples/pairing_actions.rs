//! The triangular-decomposition datum: the action of the F-side on the
//! E-side, its mirror, and the torus-valued pairing, all determined by
//! their generator values and extended recursively.
//!
//! Run with: `cargo run --example pairing_actions`

use lusztig_qgroup::cartan::CartanMatrix;
use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::td::{simple_letter, TdDatum};
use lusztig_qgroup::uq::{Side, UElem, UqContext};

fn main() {
    let ell = 3u32;
    let ctx = UqContext::new(CartanMatrix::a1(), CycParams::new(ell as i64).unwrap());
    let td = TdDatum::new(&ctx);

    println!("generator values of the left action (l = {}):", ell);
    for m in 1..=6u32 {
        let v = td.harpoon_left(&simple_letter(0, 1), &simple_letter(0, m)).unwrap();
        println!("  F[1;1] acts on E[1;{}] -> {}", m, v);
    }
    println!("\ndivided level-l letters:");
    for n in 1..=3u32 {
        let v = td
            .harpoon_left(&simple_letter(0, ell), &simple_letter(0, ell * n))
            .unwrap();
        println!("  F[1;{}] acts on E[1;{}] -> {}", ell, ell * n, v);
    }

    println!("\nthe pairing takes torus values:");
    for n in 1..=3u32 {
        let v = td.sharp(&simple_letter(0, n), &simple_letter(0, n)).unwrap();
        println!("  F[1;{0}] paired with E[1;{0}] -> {1}", n, v);
    }

    // The datum agrees with the projections of engine products; that is the
    // headline theorem of the construction and the core acceptance check.
    println!("\ndatum value vs engine projection on a sample:");
    let b = simple_letter(0, 2);
    let a = simple_letter(0, 4);
    let via_datum = td.harpoon_left(&b, &a).unwrap();
    let via_engine = UElem::from_f_word(&ctx, b).unwrap()
        .multiply(&UElem::from_e_word(&ctx, a).unwrap())
        .unwrap()
        .project(Side::E);
    println!("  datum:  {}", via_datum);
    println!("  engine: {}", via_engine);
    assert_eq!(via_datum, via_engine);
}
