use std::collections::HashMap;

use crate::cdga::{CochainAlgebra, FreeCDGA};
use crate::error::AlgebraError;
use crate::grading::Element;
use crate::qlinalg::{Rational, RationalMatrix};

/// Matrix of the algebra map `(ΛV)^k -> A^k` determined by generator images
/// (given as coordinate vectors in the target).
pub fn morphism_matrix<T: CochainAlgebra + ?Sized>(
    source: &FreeCDGA,
    target: &T,
    images: &[Vec<Rational>],
    k: u32,
) -> RationalMatrix {
    let basis = source.degree_basis(k);
    let gens = source.gens();
    let mut cols = Vec::with_capacity(basis.len());
    for m in basis.monomials() {
        let mut acc = target.unit_vec();
        let mut deg = 0;
        for f in m.factors() {
            acc = target.product_vec(deg, &acc, gens.degree(f), &images[f]);
            deg += gens.degree(f);
        }
        cols.push(acc);
    }
    RationalMatrix::from_columns(target.slice_dim(k), &cols)
}

/// Applies the algebra map sending generator `i` of `source` to `images[i]`.
pub fn apply_morphism(
    source: &FreeCDGA,
    target: &FreeCDGA,
    images: &[Element],
    x: &Element,
) -> Result<Element, AlgebraError> {
    if x.arity() != source.arity() || images.len() != source.arity() {
        return Err(AlgebraError::GeneratorMismatch);
    }
    let mut out = target.zero();
    for (m, c) in x.terms() {
        let mut t = target.one().scaled(c);
        for f in m.factors() {
            t = target.multiply(&t, &images[f])?;
        }
        out = &out + &t;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRank {
    pub degree: u32,
    pub source_betti: usize,
    pub target_betti: usize,
    pub rank: usize,
    /// Whether only injectivity is required in this degree.
    pub injective_only: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// Generators on which `d ρ = ρ d` fails.
    pub non_commuting: Vec<String>,
    pub degrees: Vec<DegreeRank>,
}

impl MorphismReport {
    pub fn commutes(&self) -> bool {
        self.non_commuting.is_empty()
    }

    /// Commutes with `d` and meets the rank requirement in every checked degree.
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.commutes() && self.degrees.iter().all(|d| d.ok)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.degrees.iter().find(|d| !d.ok).map(|d| d.degree)
    }
}

/// Checks `d ρ = ρ d` on generators and the ranks of `H^k(ρ)`: isomorphism
/// for `k <= iso_through`, injective at `k = iso_through + 1` when
/// `check_injective_above` is set.
pub fn check_morphism<T: CochainAlgebra + ?Sized>(
    source: &FreeCDGA,
    target: &T,
    images: &[Vec<Rational>],
    iso_through: u32,
    check_injective_above: bool,
) -> Result<MorphismReport, AlgebraError> {
    let gens = source.gens();
    if images.len() != gens.len() {
        return Err(AlgebraError::GeneratorMismatch);
    }
    for (i, img) in images.iter().enumerate() {
        if img.len() != target.slice_dim(gens.degree(i)) {
            return Err(AlgebraError::DegreeMismatch {
                expected: gens.degree(i),
                actual: gens.degree(i),
            });
        }
    }
    let mut mats: HashMap<u32, RationalMatrix> = HashMap::new();
    let mut mat = |k: u32| -> RationalMatrix {
        mats.entry(k)
            .or_insert_with(|| morphism_matrix(source, target, images, k))
            .clone()
    };
    let mut non_commuting = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let k = gens.degree(i);
        let lhs = target.differential(k).mul_vec(img);
        let dx = source.to_vector(source.differential_of(i), k + 1)?;
        let rhs = mat(k + 1).mul_vec(&dx);
        if lhs != rhs {
            non_commuting.push(gens.name(i).to_string());
        }
    }
    let mut degrees = Vec::new();
    if non_commuting.is_empty() {
        let top = iso_through + u32::from(check_injective_above);
        for k in 0..=top {
            let src = source.cohomology(k);
            let tgt = target.cohomology(k);
            let m = mat(k);
            let mut cols = Vec::new();
            for r in src.representatives() {
                cols.push(tgt.class_of(&m.mul_vec(r))?);
            }
            let rank = RationalMatrix::from_columns(tgt.dim(), &cols).rank();
            let injective_only = k > iso_through;
            let ok = if injective_only {
                rank == src.dim()
            } else {
                rank == src.dim() && rank == tgt.dim()
            };
            degrees.push(DegreeRank {
                degree: k,
                source_betti: src.dim(),
                target_betti: tgt.dim(),
                rank,
                injective_only,
                ok,
            });
        }
    }
    Ok(MorphismReport { non_commuting, degrees })
}

/// Checks a map between free CDGAs given by generator images.
///
/// For a source truncated at `t` the induced map must be an isomorphism
/// through degree `t` and injective in degree `t + 1`; otherwise an
/// isomorphism through the declared formal dimension (of source or target).
pub fn morphism_check(
    source: &FreeCDGA,
    target: &FreeCDGA,
    images: &[Element],
) -> Result<MorphismReport, AlgebraError> {
    if images.len() != source.arity() {
        return Err(AlgebraError::GeneratorMismatch);
    }
    let mut vecs = Vec::with_capacity(images.len());
    for (i, img) in images.iter().enumerate() {
        let k = source.gens().degree(i);
        if !img.is_zero() {
            let actual = target.degree_of(img)?;
            if actual != k {
                return Err(AlgebraError::DegreeMismatch { expected: k, actual });
            }
        }
        vecs.push(target.to_vector(img, k)?);
    }
    let (through, inj) = match source.truncated_at() {
        Some(t) => (t, true),
        None => (
            source
                .formal_dim()
                .or(target.formal_dim())
                .unwrap_or(source.gens().max_degree() + 1),
            false,
        ),
    };
    check_morphism(source, target, &vecs, through, inj)
}
