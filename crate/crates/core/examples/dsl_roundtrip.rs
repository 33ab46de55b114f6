//! Parsing, emitting and re-parsing a presentation.

use cdga::dsl::{emit, parse_algebra};

const SOURCE: &str = "\
# S^2 x S^3 x S^3
algebra demo dim 8
gen u : 2
gen x : 3
gen y : 3
gen v : 3
d v = u*u
";

fn main() {
    let a = parse_algebra(SOURCE).unwrap();
    println!("{:?}", a.betti_vector(10));
    let text = emit(&a);
    print!("{text}");
    let b = parse_algebra(&text).unwrap();
    assert_eq!(a.betti_vector(10), b.betti_vector(10));
    println!(
        "validate: {:?}",
        b.validate()
            .violations
            .iter()
            .map(|v| v.kind.label())
            .collect::<Vec<_>>()
    );
    match parse_algebra("gen x : 1\nd x = y") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
