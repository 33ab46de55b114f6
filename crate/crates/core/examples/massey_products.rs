//! Triple and quadruple Massey products, and the obstruction scan.

use cdga::analysis::{massey_obstruction_scan, massey_product};
use cdga::dsl::parse_poly;
use cdga::models::builtin;
use cdga::FreeCDGA;

fn product(a: &FreeCDGA, classes: &[&str]) {
    let xs: Vec<_> = classes.iter().map(|c| parse_poly(c, a.gens()).unwrap()).collect();
    match massey_product(a, &xs) {
        Ok(r) => println!("{}: {}", a.name(), r.describe(a)),
        Err(e) => println!("{}: {e}", a.name()),
    }
}

fn main() {
    let kt = builtin("kt").unwrap();
    product(&kt, &["a1", "a1", "a2"]);
    product(&kt, &["a1", "a2", "a1"]);

    let t = builtin("torus(3)").unwrap();
    product(&t, &["x1", "x1", "x1"]);
    product(&t, &["x1", "x1", "x1", "x1"]);

    let fls = builtin("fls").unwrap();
    product(&fls, &["delta1*delta2", "beta", "beta", "beta"]);

    let scan = massey_obstruction_scan(&kt, 1, 3).unwrap();
    println!(
        "kt scan at s = 1: {} tuples, {} defined, {} nonvanishing",
        scan.examined,
        scan.defined,
        scan.hits.len()
    );
}
