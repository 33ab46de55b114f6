//! Chevalley-Eilenberg models of nilpotent Lie algebras.

use cdga::analysis::s_formality;
use cdga::models::{chevalley_eilenberg, LiePresentation};

fn main() {
    // Filiform Lie algebra of dimension 4.
    let lie = LiePresentation::abelian(&["e1", "e2", "e3", "e4"])
        .bracket("e1", "e2", 1, "e3")
        .bracket("e1", "e3", 1, "e4");
    let a = chevalley_eilenberg(&lie, "filiform4").unwrap().with_formal_dim(4);
    println!("{:?}", a.betti_vector(4));
    for s in 0..=2 {
        println!("s = {s}: {}", s_formality(&a, s).unwrap().status);
    }

    // The Jacobi identity fails, so d^2 != 0.
    let bad = LiePresentation::abelian(&["x", "y", "z"])
        .bracket("x", "y", 1, "z")
        .bracket("x", "z", 1, "x");
    println!("{:?}", chevalley_eilenberg(&bad, "bad").err());
}
