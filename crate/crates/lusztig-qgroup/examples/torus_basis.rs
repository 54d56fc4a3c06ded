//! The generic torus in its two models: the group algebra of the K_i over
//! Q(v), and the PBW basis of monomials K^delta k^t.
//!
//! Run with: `cargo run --example torus_basis`

use lusztig_qgroup::torus::{self, expand, to_basis, GroupAlgElem};

fn main() {
    // k_{1,t} = [K_1; 0; t] expanded in the group algebra.
    for t in 0..=3 {
        println!("k[1;{}] = {}", t, torus::k_elem(1, 0, t).unwrap());
    }

    // The binomial generator with a positive shift: [K; 1; 1] = v k_1 + K^-1.
    println!("\nkbin[1;1;1] = {}", torus::kbin(1, 0, 1, 1, false).unwrap());

    // Conversion into the PBW basis and back.
    let k_squared = GroupAlgElem::k_pow(1, 0, 2);
    let basis = to_basis(&k_squared).unwrap();
    println!("\nK^2 in the PBW basis: {}", basis);
    println!("expanded back:        {}", expand(&basis).unwrap());

    // Comultiplication is determined by the K_i being group-like; on the
    // divided powers it produces the closed two-leg sum.
    let k2 = torus::k_elem(1, 0, 2).unwrap();
    println!("\nDelta(k[1;2]) as an element of the doubled group algebra:");
    println!("{}", k2.comult());
    println!("closed sum form:");
    println!("{}", torus::comult_k_closed(1, 0, 2).unwrap());

    // Characters separate the basis: the i-th evaluation sends k_{i,t} to a
    // Gaussian binomial.
    for j in 0..=4 {
        println!(
            "char (K -> v^{}) of k[1;2] = {}",
            j,
            k2.char_eval(0, j, false)
        );
    }
}
