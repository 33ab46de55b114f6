//! Sullivan minimal models built degree by degree.

use thiserror::Error;

use crate::cdga::{morphism::check_morphism, morphism_matrix, CochainAlgebra, FreeCDGA, MorphismReport};
use crate::error::AlgebraError;
use crate::grading::{Element, GeneratorSet};
use crate::qlinalg::{kernel_basis, solve, Quotient, Rational, RationalMatrix, Subspace};

/// Rounds of degree-one extensions attempted before giving up.
pub const DEFAULT_DEGREE_ONE_ROUNDS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SullivanError {
    #[error("algebra is not connected: dim H^0 = {0}")]
    NotConnected(usize),
    #[error("degree-one extension did not stabilize after {0} rounds")]
    NonNilpotentDegreeOne(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A minimal algebra with a map into the input inducing isomorphisms on
/// cohomology through `verified_through` and an injection one degree above.
#[derive(Debug, Clone)]
pub struct MinimalModelResult {
    pub model: FreeCDGA,
    /// Image of each model generator, as coordinates in the input's basis.
    pub comparison: Vec<Vec<Rational>>,
    /// The same images in readable form.
    pub comparison_text: Vec<String>,
    pub verified_through: u32,
    pub report: MorphismReport,
}

impl MinimalModelResult {
    /// Number of generators in each degree `0..=verified_through`.
    pub fn generator_counts(&self) -> Vec<usize> {
        (0..=self.verified_through)
            .map(|k| self.model.gens().in_degree(k).len())
            .collect()
    }
}

pub fn is_minimal(a: &FreeCDGA) -> bool {
    a.is_minimal()
}

struct Builder {
    gens: Vec<(String, u32)>,
    diffs: Vec<Element>,
    images: Vec<Vec<Rational>>,
    counters: Vec<usize>,
}

impl Builder {
    fn algebra(&self) -> FreeCDGA {
        let gens = GeneratorSet::new(self.gens.clone()).expect("generators added in degree order");
        let n = gens.len();
        let diffs = self.diffs.iter().map(|d| d.extend_arity(n)).collect();
        FreeCDGA::new("minimal_model", gens, diffs).expect("arity matches")
    }

    fn add(&mut self, degree: u32, d: Element, image: Vec<Rational>) {
        let k = degree as usize;
        if self.counters.len() <= k {
            self.counters.resize(k + 1, 0);
        }
        self.counters[k] += 1;
        self.gens.push((format!("v{degree}_{}", self.counters[k]), degree));
        self.diffs.push(d);
        self.images.push(image);
    }
}

/// Matrix of `H^k(model) -> H^k(A)` in the representative bases.
fn induced_map<T: CochainAlgebra + ?Sized>(
    model: &FreeCDGA,
    target: &T,
    images: &[Vec<Rational>],
    k: u32,
) -> RationalMatrix {
    let m = morphism_matrix(model, target, images, k);
    let tgt = target.cohomology(k);
    let cols: Vec<Vec<Rational>> = model
        .cohomology(k)
        .representatives()
        .iter()
        .map(|r| tgt.class_of(&m.mul_vec(r)).expect("chain map sends cycles to cycles"))
        .collect();
    RationalMatrix::from_columns(tgt.dim(), &cols)
}

/// Builds a minimal model of `a` through degree `bound`.
///
/// At each degree `k`, closed generators are added to make `H^k` surjective,
/// then generators of degree `k` are added to kill the kernel of the map on
/// `H^(k+1)`. In degree one this second step can recur; it is repeated at most
/// `degree_one_rounds` times.
pub fn minimal_model_up_to<T: CochainAlgebra + ?Sized>(
    a: &T,
    bound: u32,
    degree_one_rounds: usize,
) -> Result<MinimalModelResult, SullivanError> {
    let h0 = a.cohomology(0).dim();
    if h0 != 1 {
        return Err(SullivanError::NotConnected(h0));
    }
    let mut b = Builder {
        gens: Vec::new(),
        diffs: Vec::new(),
        images: Vec::new(),
        counters: Vec::new(),
    };
    for k in 1..=bound {
        // Surjectivity on H^k.
        let model = b.algebra();
        let map = induced_map(&model, a, &b.images, k);
        let tgt = a.cohomology(k);
        let image = Subspace::span(tgt.dim(), map.transpose().to_dense());
        let coker = Quotient::new(&Subspace::full(tgt.dim()), &image).map_err(AlgebraError::from)?;
        for c in coker.complement_basis() {
            let n = b.gens.len();
            b.add(k, Element::zero(n), tgt.lift(c));
        }
        // Injectivity on H^(k+1).
        let mut rounds = 0;
        loop {
            let model = b.algebra();
            let map = induced_map(&model, a, &b.images, k + 1);
            let kernel = kernel_basis(&map);
            if kernel.dim() == 0 {
                break;
            }
            rounds += 1;
            if k == 1 && rounds > degree_one_rounds {
                return Err(SullivanError::NonNilpotentDegreeOne(degree_one_rounds));
            }
            let slice = model.cohomology(k + 1);
            let chain = morphism_matrix(&model, a, &b.images, k + 1);
            let d_a = a.differential(k);
            let n = b.gens.len();
            for coords in kernel.basis() {
                let z = slice.lift(coords);
                let target = chain.mul_vec(&z);
                let pre = solve(&d_a, &target).expect("class maps to zero, so its image is exact");
                b.add(k, model.from_vector(k + 1, &z).extend_arity(n), pre);
            }
        }
    }
    let model = b.algebra().with_name("minimal_model").with_truncation(bound);
    let report = check_morphism(&model, a, &b.images, bound, true)?;
    debug_assert!(report.is_quasi_isomorphism());
    let comparison_text = b
        .images
        .iter()
        .enumerate()
        .map(|(i, v)| a.describe(model.gens().degree(i), v))
        .collect();
    Ok(MinimalModelResult {
        model,
        comparison: b.images,
        comparison_text,
        verified_through: bound,
        report,
    })
}

/// Generators of degree at most `up_to` with nonzero differential.
pub fn non_closed_generators(a: &FreeCDGA, up_to: u32) -> Vec<String> {
    (0..a.arity())
        .filter(|&i| a.gens().degree(i) <= up_to && !a.differential_of(i).is_zero())
        .map(|i| a.gens().name(i).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::FiniteCdga;
    use crate::models::builtin;

    #[test]
    fn even_sphere_from_cohomology() {
        let s2 = FiniteCdga::truncated_polynomial(2, 2).unwrap();
        let r = minimal_model_up_to(&s2, 4, DEFAULT_DEGREE_ONE_ROUNDS).unwrap();
        let m = &r.model;
        let degs: Vec<u32> = m.gens().iter().map(|g| g.degree).collect();
        assert_eq!(degs, [2, 3]);
        assert_eq!(m.display(m.differential_of(1)), "v2_1*v2_1");
        assert!(r.report.is_quasi_isomorphism());
    }

    #[test]
    fn cp2_from_cohomology() {
        let cp2 = FiniteCdga::truncated_polynomial(2, 3).unwrap();
        let r = minimal_model_up_to(&cp2, 6, DEFAULT_DEGREE_ONE_ROUNDS).unwrap();
        let m = &r.model;
        let degs: Vec<u32> = m.gens().iter().map(|g| g.degree).collect();
        assert_eq!(degs, [2, 5]);
        assert_eq!(m.display(m.differential_of(1)), "v2_1*v2_1*v2_1");
    }

    #[test]
    fn minimal_input_is_reproduced() {
        let kt = builtin("kt").unwrap();
        let r = minimal_model_up_to(&kt, 4, DEFAULT_DEGREE_ONE_ROUNDS).unwrap();
        assert_eq!(r.generator_counts(), [0, 4, 0, 0, 0]);
        assert!(is_minimal(&r.model));
        assert!(r.report.is_quasi_isomorphism());
    }

    #[test]
    fn disconnected_input_rejected() {
        // Functions on two points: idempotents e1, e2 with unit e1 + e2.
        let mut mult = std::collections::HashMap::new();
        mult.insert((0, 0, 0, 0), vec![crate::qlinalg::q(1), crate::qlinalg::q(0)]);
        mult.insert((0, 1, 0, 1), vec![crate::qlinalg::q(0), crate::qlinalg::q(1)]);
        let a = FiniteCdga::new(vec![2], vec![vec!["e1".into(), "e2".into()]], Vec::new(), mult)
            .unwrap()
            .with_unit(vec![crate::qlinalg::q(1), crate::qlinalg::q(1)]);
        assert_eq!(
            minimal_model_up_to(&a, 2, DEFAULT_DEGREE_ONE_ROUNDS).unwrap_err(),
            SullivanError::NotConnected(2)
        );
    }

    #[test]
    fn degree_one_cap() {
        // The free Lie algebra quotient behind a wedge of two circles never
        // stabilizes in degree one.
        let mut mult = std::collections::HashMap::new();
        mult.insert((0, 0, 0, 0), vec![crate::qlinalg::q(1)]);
        mult.insert((0, 0, 1, 0), vec![crate::qlinalg::q(1), crate::qlinalg::q(0)]);
        mult.insert((0, 0, 1, 1), vec![crate::qlinalg::q(0), crate::qlinalg::q(1)]);
        mult.insert((1, 0, 0, 0), vec![crate::qlinalg::q(1), crate::qlinalg::q(0)]);
        mult.insert((1, 1, 0, 0), vec![crate::qlinalg::q(0), crate::qlinalg::q(1)]);
        let wedge = FiniteCdga::new(
            vec![1, 2],
            vec![vec!["1".into()], vec!["u".into(), "w".into()]],
            Vec::new(),
            mult,
        )
        .unwrap();
        assert_eq!(
            minimal_model_up_to(&wedge, 2, 3).unwrap_err(),
            SullivanError::NonNilpotentDegreeOne(3)
        );
    }
}
