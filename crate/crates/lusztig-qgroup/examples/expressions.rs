//! The expression language: parsing, evaluation in both models, and the
//! byte-stable rendering that round-trips through the parser.
//!
//! Run with: `cargo run --example expressions`

use lusztig_qgroup::cartan::CartanMatrix;
use lusztig_qgroup::cyclotomic::CycParams;
use lusztig_qgroup::expr::{eval_generic, eval_specialized, parse};
use lusztig_qgroup::torus::to_basis;
use lusztig_qgroup::uq::UqContext;

fn main() {
    // Generic torus mode over Q(v).
    for input in ["K[1]*Kinv[1]", "(v^-2 - 1)*k[1;2]*K[1]^2", "h[1;2]", "kbin[1;1;1]"] {
        let e = parse(input).unwrap();
        let value = eval_generic(&e, 1).unwrap();
        println!("{:32} = {}", input, value);
        println!("{:32}   (basis: {})", "", to_basis(&value).unwrap());
    }

    // Specialized mode at l = 3, type A2.
    let ctx = UqContext::new(CartanMatrix::a2(), CycParams::new(3).unwrap());
    println!();
    for input in [
        "E[1;2]*E[1;1]",
        "E[1;1]*E[2;1]",
        "F[1;1]*E[1;1]",
        "t[1]*E[1;1] - E[1;1]*t[1]",
        "(xi + 1)*g[1]^2*k[1;3]",
    ] {
        let e = parse(input).unwrap();
        let value = eval_specialized(&e, &ctx).unwrap();
        println!("{:32} = {}", input, value);
        // The rendering re-parses to the same element.
        let back = eval_specialized(&parse(&value.to_string()).unwrap(), &ctx).unwrap();
        assert_eq!(back, value);
    }

    // Errors carry positions.
    match parse("K[1] @ K[2]") {
        Err(e) => println!("\nparse error example: {}", e),
        Ok(_) => unreachable!(),
    }
}
