#![allow(dead_code)]

use cdga::dsl::parse_poly;
use cdga::models::{builtin, heisenberg3, torus};
use cdga::qlinalg::{kernel_basis, q, Rational};
use cdga::{Element, FreeCDGA, GeneratorSet};

pub fn tensor(a: &FreeCDGA, b: &FreeCDGA) -> FreeCDGA {
    FreeCDGA::tensor_product(a, b, true).unwrap()
}

pub fn heisenberg_times_circle() -> FreeCDGA {
    let a = tensor(&heisenberg3(), &torus(1)).with_name("h3xS1");
    let w = parse_poly("a2*a3 + a1*x1", a.gens()).unwrap();
    a.with_omega(w).unwrap()
}

/// The factors the product laws are checked on.
pub fn product_factors() -> Vec<FreeCDGA> {
    vec![torus(2), builtin("kt").unwrap(), heisenberg_times_circle()]
}

/// Builds a minimal algebra on odd generators of the given degrees; the
/// differential of each generator is a combination, with coefficients from
/// `coeffs`, of a basis of closed elements in the algebra generated by the
/// earlier ones. The formal dimension is the sum of the degrees.
pub fn random_minimal(degrees: &[u32], coeffs: &[i64]) -> FreeCDGA {
    let mut names = Vec::new();
    let mut diffs: Vec<Element> = Vec::new();
    let mut next = 0;
    for (i, &k) in degrees.iter().enumerate() {
        names.push((format!("x{}", i + 1), k));
        let prev = FreeCDGA::new(
            "prev",
            GeneratorSet::new(names[..i].iter().cloned()).unwrap(),
            diffs.clone(),
        )
        .unwrap();
        let closed = kernel_basis(&prev.d_matrix(k + 1));
        let mut dx = Element::zero(i);
        for v in closed.basis() {
            let c = coeffs[next % coeffs.len()];
            next += 1;
            dx = &dx + &prev.from_vector(k + 1, v).scaled(&q(c));
        }
        diffs = diffs.iter().map(|e| e.extend_arity(i + 1)).collect();
        diffs.push(dx.extend_arity(i + 1));
    }
    let m = degrees.iter().sum();
    FreeCDGA::new("random", GeneratorSet::new(names).unwrap(), diffs)
        .unwrap()
        .with_formal_dim(m)
}

/// A homogeneous element of degree `k` with coefficients drawn from `coeffs`.
pub fn element(a: &FreeCDGA, k: u32, coeffs: &[i64]) -> Element {
    let n = a.degree_basis(k).len();
    let v: Vec<Rational> = (0..n).map(|i| q(coeffs[(i * 7 + 3) % coeffs.len()])).collect();
    a.from_vector(k, &v)
}

/// `(-1)^p x`.
pub fn koszul(p: u32, x: &Element) -> Element {
    if p % 2 == 1 {
        x.scaled(&q(-1))
    } else {
        x.clone()
    }
}
