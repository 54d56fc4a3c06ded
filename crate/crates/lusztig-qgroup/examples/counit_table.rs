//! The counit values of the binomial generators [K^(+-1); c; t], computed
//! through the specialized model and compared with the closed table.
//!
//! Run with: `cargo run --example counit_table`

use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::torus_special::{counit_kbin, SpecContext};

fn main() {
    let params = CycParams::new(3).unwrap();
    let ctx = SpecContext::new(params.clone(), 1);
    println!("counit of [K; c; t] at l = 3:");
    println!("{:>4} {:>2}  value", "c", "t");
    for c in -4..=4i64 {
        for t in 0..=4i64 {
            let eps = counit_kbin(&ctx, 0, c, t, false).unwrap();
            if !eps.is_zero() {
                println!("{:>4} {:>2}  {}", c, t, eps);
            }
        }
    }
    println!("\n(the antipode variant [Kinv; c; t] has the same counit)");
    let a = counit_kbin(&ctx, 0, -3, 2, false).unwrap();
    let b = counit_kbin(&ctx, 0, -3, 2, true).unwrap();
    assert_eq!(a, b);
}
