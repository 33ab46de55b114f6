//! Sullivan minimal models and their comparison maps.

use cdga::dsl::emit;
use cdga::models::builtin;
use cdga::sullivan::{minimal_model_up_to, DEFAULT_DEGREE_ONE_ROUNDS};

fn main() {
    for (name, n) in [("sphere(2)", 4), ("cp2", 5), ("kt", 3), ("fls", 3)] {
        let a = builtin(name).unwrap();
        let r = minimal_model_up_to(&a, n, DEFAULT_DEGREE_ONE_ROUNDS).unwrap();
        println!(
            "{name} through degree {n}: generators per degree {:?}",
            r.generator_counts()
        );
        if r.model.arity() <= 4 {
            print!("{}", emit(&r.model));
        }
        for (g, img) in r.model.gens().iter().zip(&r.comparison_text) {
            println!("  {} -> {img}", g.name);
        }
        println!("  quasi-isomorphism through {n}: {}", r.report.is_quasi_isomorphism());
    }
}
