//! Chevalley–Eilenberg complexes and the built-in example algebras.

use std::collections::BTreeMap;

use crate::cdga::FreeCDGA;
use crate::dsl::parse_poly;
use crate::error::AlgebraError;
use crate::grading::{multiply, Element, GeneratorSet};
use crate::qlinalg::{q, Rational};

pub use crate::cdga::{morphism_check, MorphismReport};

/// A finite-dimensional Lie algebra by structure constants.
///
/// `brackets[(i, j)]` with `i < j` lists `(k, c)` such that
/// `[e_i, e_j] = Σ c e_k`; unlisted brackets vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePresentation {
    pub basis: Vec<String>,
    pub brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl LiePresentation {
    pub fn abelian(basis: &[&str]) -> Self {
        LiePresentation {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            brackets: BTreeMap::new(),
        }
    }

    /// Adds `[x, y] += c z` by basis names; the pair is reordered if needed.
    pub fn bracket(mut self, x: &str, y: &str, c: i64, z: &str) -> Self {
        let idx = |s: &str| {
            self.basis
                .iter()
                .position(|b| b == s)
                .unwrap_or_else(|| panic!("unknown basis element {s}"))
        };
        let (i, j, k) = (idx(x), idx(y), idx(z));
        assert_ne!(i, j, "bracket of an element with itself");
        let (i, j, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        self.brackets.entry((i, j)).or_default().push((k, q(c)));
        self
    }
}

/// `(Λ g*, d)` with `d ξ^k = -Σ_{i<j} c^k_ij ξ^i ξ^j`.
pub fn chevalley_eilenberg(lie: &LiePresentation, name: &str) -> Result<FreeCDGA, AlgebraError> {
    let n = lie.basis.len();
    let gens = GeneratorSet::new(lie.basis.iter().map(|b| (b.clone(), 1)))?;
    let mut diff = vec![Element::zero(n); n];
    for (&(i, j), terms) in &lie.brackets {
        let xij = multiply(&Element::generator(n, i), &Element::generator(n, j), &gens)?;
        for (k, c) in terms {
            diff[*k] = &diff[*k] - &xij.scaled(c);
        }
    }
    let alg = FreeCDGA::new(name, gens, diff)?;
    let report = alg.validate();
    if let Some(v) = report.of_kind(crate::cdga::ViolationKind::DSquaredNonzero).next() {
        return Err(AlgebraError::JacobiFailure(v.detail.clone()));
    }
    Ok(alg)
}

fn poly(alg: &FreeCDGA, text: &str) -> Element {
    parse_poly(text, alg.gens()).expect("built-in polynomial")
}

fn with_diffs(name: &str, gens: &[(&str, u32)], diffs: &[(&str, &str)]) -> FreeCDGA {
    let gs = GeneratorSet::new(gens.iter().map(|&(n, d)| (n, d))).expect("built-in generators");
    let mut diff = vec![Element::zero(gs.len()); gs.len()];
    for (g, text) in diffs {
        diff[gs.index_of(g).expect("built-in generator")] = parse_poly(text, &gs).expect("built-in polynomial");
    }
    FreeCDGA::new(name, gs, diff).expect("built-in algebra")
}

/// Model of the Heisenberg nilmanifold: `d a3 = -a1*a2`.
pub fn heisenberg3() -> FreeCDGA {
    let lie = LiePresentation::abelian(&["a1", "a2", "a3"]).bracket("a1", "a2", 1, "a3");
    chevalley_eilenberg(&lie, "heisenberg3")
        .expect("Jacobi")
        .with_formal_dim(3)
}

/// The Kodaira–Thurston manifold, Heisenberg nilmanifold times a circle.
pub fn kodaira_thurston() -> FreeCDGA {
    let lie = LiePresentation::abelian(&["a1", "a2", "a3", "a4"]).bracket("a1", "a2", 1, "a3");
    let alg = chevalley_eilenberg(&lie, "kt").expect("Jacobi").with_formal_dim(4);
    let w = poly(&alg, "a2*a3 + a1*a4");
    alg.with_omega(w).expect("arity")
}

/// The complex Heisenberg group viewed as a real nilpotent Lie algebra.
pub fn iwasawa_lie() -> LiePresentation {
    LiePresentation::abelian(&["a1", "a2", "b1", "b2", "c1", "c2"])
        .bracket("a1", "b1", 1, "c1")
        .bracket("a2", "b2", -1, "c1")
        .bracket("a1", "b2", 1, "c2")
        .bracket("a2", "b1", 1, "c2")
}

/// The Iwasawa manifold.
pub fn iwasawa() -> FreeCDGA {
    let alg = chevalley_eilenberg(&iwasawa_lie(), "iwasawa")
        .expect("Jacobi")
        .with_formal_dim(6);
    let w = poly(&alg, "a1*c2 + a2*c1 + b1*b2");
    alg.with_omega(w).expect("arity")
}

/// Left-invariant forms on the completely solvable six-dimensional
/// solvmanifold. Computes its cohomology but is not a minimal algebra.
pub fn fls() -> FreeCDGA {
    let gens = [
        ("alpha", 1),
        ("beta", 1),
        ("gamma1", 1),
        ("gamma2", 1),
        ("delta1", 1),
        ("delta2", 1),
    ];
    let alg = with_diffs(
        "fls",
        &gens,
        &[
            ("gamma1", "-alpha*gamma1 - beta*delta1"),
            ("gamma2", "alpha*gamma2 - beta*delta2"),
            ("delta1", "-alpha*delta1"),
            ("delta2", "alpha*delta2"),
        ],
    )
    .with_formal_dim(6);
    let w = poly(&alg, "alpha*beta + gamma1*delta2 + gamma2*delta1");
    alg.with_omega(w).expect("arity")
}

/// Minimal model of the same solvmanifold, through degree 2.
pub fn fls_minimal() -> FreeCDGA {
    with_diffs(
        "fls_minimal",
        &[("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2), ("b3", 2), ("b4", 2)],
        &[("b3", "-a2*b1"), ("b4", "a2*b3")],
    )
    .with_formal_dim(6)
    .with_truncation(2)
}

/// Images of the generators of [`fls_minimal`] in [`fls`] under the
/// comparison map.
pub fn fls_realization() -> Vec<Element> {
    let target = fls();
    [
        "alpha",
        "beta",
        "delta1*delta2",
        "1/2*gamma1*delta2 + 1/2*gamma2*delta1",
        "1/2*gamma1*delta2 - 1/2*gamma2*delta1",
        "-1/2*gamma1*gamma2",
    ]
    .iter()
    .map(|t| poly(&target, t))
    .collect()
}

/// Exterior algebra on `n` closed degree-1 generators.
pub fn torus(n: usize) -> FreeCDGA {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let gens: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
    let alg = with_diffs(&format!("torus{n}"), &gens, &[]).with_formal_dim(n as u32);
    if n >= 2 && n.is_multiple_of(2) {
        let w: Vec<String> = (0..n / 2).map(|i| format!("x{}*x{}", 2 * i + 1, 2 * i + 2)).collect();
        let w = poly(&alg, &w.join(" + "));
        alg.with_omega(w).expect("arity")
    } else {
        alg
    }
}

/// Minimal model of `S^n`.
pub fn sphere(n: u32) -> Result<FreeCDGA, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::UnknownModel("sphere0".into()));
    }
    let name = format!("sphere{n}");
    if n % 2 == 1 {
        return Ok(with_diffs(&name, &[("x", n)], &[]).with_formal_dim(n));
    }
    let alg = with_diffs(&name, &[("x", n), ("y", 2 * n - 1)], &[("y", "x*x")]).with_formal_dim(n);
    if n == 2 {
        let w = poly(&alg, "x");
        return alg.with_omega(w);
    }
    Ok(alg)
}

/// Minimal model of complex projective space `CP^n`.
pub fn cpn(n: u32) -> Result<FreeCDGA, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::UnknownModel("cpn0".into()));
    }
    let power = vec!["x"; n as usize + 1].join("*");
    let alg = with_diffs(&format!("cp{n}"), &[("x", 2), ("y", 2 * n + 1)], &[("y", &power)]).with_formal_dim(2 * n);
    let w = poly(&alg, "x");
    alg.with_omega(w)
}

/// `S^3 x S^7`: ten-dimensional with `b_3 = 1`.
pub fn s3_times_s7() -> FreeCDGA {
    let a = sphere(3).expect("odd sphere");
    let b = with_diffs("sphere7", &[("z", 7)], &[]).with_formal_dim(7);
    FreeCDGA::tensor_product(&a, &b, false)
        .expect("distinct names")
        .with_name("s3xs7")
}

/// Names accepted by [`builtin`] besides the parametrized families.
pub const BUILTIN_NAMES: &[&str] = &["heisenberg3", "kt", "iwasawa", "fls", "fls_minimal", "s3xs7"];

fn parametrized(name: &str, prefix: &str) -> Option<u32> {
    let rest = name.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    rest.parse().ok()
}

/// Looks up a built-in model. Families are written `torus(n)`/`torusN`,
/// `sphere(n)`/`sphereN` and `cpn(n)`/`cpN`.
pub fn builtin(name: &str) -> Result<FreeCDGA, AlgebraError> {
    match name {
        "heisenberg3" => return Ok(heisenberg3()),
        "kt" => return Ok(kodaira_thurston()),
        "iwasawa" => return Ok(iwasawa()),
        "fls" => return Ok(fls()),
        "fls_minimal" => return Ok(fls_minimal()),
        "s3xs7" => return Ok(s3_times_s7()),
        "circle" => return Ok(torus(1).with_name("circle")),
        _ => {}
    }
    if let Some(n) = parametrized(name, "torus") {
        return Ok(torus(n as usize));
    }
    if let Some(n) = parametrized(name, "sphere") {
        return sphere(n);
    }
    if let Some(n) = parametrized(name, "cpn").or_else(|| parametrized(name, "cp")) {
        return cpn(n);
    }
    Err(AlgebraError::UnknownModel(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_differential() {
        let h = heisenberg3();
        assert_eq!(h.display(h.differential_of(2)), "-a1*a2");
        assert!(h.differential_of(0).is_zero());
        assert!(h.differential_of(1).is_zero());
    }

    #[test]
    fn iwasawa_differentials() {
        let a = iwasawa();
        assert_eq!(a.display(a.differential_of(4)), "-a1*b1 + a2*b2");
        assert_eq!(a.display(a.differential_of(5)), "-a1*b2 - a2*b1");
    }

    #[test]
    fn abelian_lie_algebra_gives_torus() {
        let a = chevalley_eilenberg(&LiePresentation::abelian(&["x", "y", "z"]), "t3").unwrap();
        assert!(a.differentials().iter().all(Element::is_zero));
        assert_eq!(a.betti_vector(3), [1, 3, 3, 1]);
    }

    #[test]
    fn jacobi_failure_detected() {
        // [x,y]=y, [x,z]=z, [y,z]=x violates Jacobi.
        let lie = LiePresentation::abelian(&["x", "y", "z"])
            .bracket("x", "y", 1, "y")
            .bracket("x", "z", 1, "z")
            .bracket("y", "z", 1, "x");
        assert!(matches!(
            chevalley_eilenberg(&lie, "bad"),
            Err(AlgebraError::JacobiFailure(_))
        ));
    }

    #[test]
    fn builtins_validate() {
        let mut names: Vec<String> = BUILTIN_NAMES.iter().map(|s| s.to_string()).collect();
        names.extend(["torus(2)", "torus4", "sphere(2)", "sphere3", "cpn(2)", "cp3", "circle"].map(String::from));
        for name in names {
            let a = builtin(&name).unwrap();
            let r = a.validate();
            assert!(r.is_valid(), "{name}: {:?}", r.violations);
            if name != "fls" {
                assert!(r.is_minimal(), "{name}: {:?}", r.violations);
            }
        }
        assert!(!fls().validate().is_minimal());
        assert!(matches!(builtin("klein"), Err(AlgebraError::UnknownModel(_))));
    }

    #[test]
    fn fls_realization_is_quasi_isomorphism() {
        let r = morphism_check(&fls_minimal(), &fls(), &fls_realization()).unwrap();
        assert!(r.commutes(), "{:?}", r.non_commuting);
        assert!(r.is_quasi_isomorphism(), "{:?}", r.degrees);
        assert_eq!(r.degrees.len(), 4);
    }

    #[test]
    fn kt_is_heisenberg_times_circle() {
        let p = FreeCDGA::tensor_product(&heisenberg3(), &torus(1), false).unwrap();
        let kt = kodaira_thurston();
        assert_eq!(p.formal_dim(), Some(4));
        let gens: Vec<u32> = p.gens().iter().map(|g| g.degree).collect();
        assert_eq!(gens, [1, 1, 1, 1]);
        // Same differentials once x1 is renamed to a4.
        let renamed: Vec<String> = p
            .differentials()
            .iter()
            .map(|d| p.display(d).replace("x1", "a4"))
            .collect();
        let expected: Vec<String> = kt.differentials().iter().map(|d| kt.display(d)).collect();
        assert_eq!(renamed, expected);
    }
}
