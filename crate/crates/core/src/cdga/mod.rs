//! Free CDGAs `(ΛV, d)`: differential, validation and cohomology.

mod cochain;
pub(crate) mod morphism;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

pub use cochain::{CochainAlgebra, CohomologySlice, FiniteCdga};
pub use morphism::{apply_morphism, check_morphism, morphism_check, morphism_matrix, DegreeRank, MorphismReport};

use crate::error::AlgebraError;
use crate::grading::{degree_basis, multiply, power, Element, GeneratorSet, Monomial};
use crate::qlinalg::{q, zero_vec, Rational, RationalMatrix};

/// Monomial basis of one degree slice with a reverse index.
#[derive(Debug)]
pub struct DegreeBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis { monomials, index }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[derive(Default)]
struct Cache {
    bases: RwLock<HashMap<u32, Arc<DegreeBasis>>>,
    dmats: RwLock<HashMap<u32, Arc<RationalMatrix>>>,
    slices: RwLock<HashMap<u32, Arc<CohomologySlice>>>,
}

/// Memoized lookup; when two threads race, the first stored value wins.
fn memo<T>(map: &RwLock<HashMap<u32, Arc<T>>>, k: u32, f: impl FnOnce() -> T) -> Arc<T> {
    if let Some(v) = map.read().expect("cache lock").get(&k) {
        return v.clone();
    }
    let v = Arc::new(f());
    map.write().expect("cache lock").entry(k).or_insert(v).clone()
}

/// A free graded-commutative algebra on named generators with a differential.
///
/// `truncated_at = Some(t)` marks a partial minimal model whose generators are
/// known only through degree `t`; exactness questions are then decidable
/// only through degree `t + 1`.
pub struct FreeCDGA {
    name: String,
    gens: GeneratorSet,
    diff: Vec<Element>,
    formal_dim: Option<u32>,
    omega: Option<Element>,
    truncated_at: Option<u32>,
    cache: Cache,
}

impl Clone for FreeCDGA {
    fn clone(&self) -> Self {
        FreeCDGA {
            name: self.name.clone(),
            gens: self.gens.clone(),
            diff: self.diff.clone(),
            formal_dim: self.formal_dim,
            omega: self.omega.clone(),
            truncated_at: self.truncated_at,
            cache: Cache::default(),
        }
    }
}

impl PartialEq for FreeCDGA {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.gens == other.gens
            && self.diff == other.diff
            && self.formal_dim == other.formal_dim
            && self.omega == other.omega
            && self.truncated_at == other.truncated_at
    }
}

impl fmt::Debug for FreeCDGA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("FreeCDGA");
        s.field("name", &self.name);
        let gens: Vec<String> = self.gens.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        s.field("gens", &gens);
        let diffs: Vec<String> = (0..self.gens.len())
            .map(|i| format!("d {} = {}", self.gens.name(i), self.diff[i].display(&self.gens)))
            .collect();
        s.field("diff", &diffs);
        s.field("formal_dim", &self.formal_dim);
        s.field("omega", &self.omega.as_ref().map(|w| w.display(&self.gens)));
        s.field("truncated_at", &self.truncated_at);
        s.finish()
    }
}

/// Kind of a failed check in a [`ValidationReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    DSquaredNonzero,
    Inhomogeneous,
    WrongDegree,
    LinearPart,
    NoAdmissibleOrder,
    OmegaNotClosed,
    OmegaWrongDegree,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::DSquaredNonzero => "d^2 != 0",
            ViolationKind::Inhomogeneous => "differential not homogeneous",
            ViolationKind::WrongDegree => "differential has wrong degree",
            ViolationKind::LinearPart => "differential has a linear part",
            ViolationKind::NoAdmissibleOrder => "no admissible generator ordering",
            ViolationKind::OmegaNotClosed => "omega is not closed",
            ViolationKind::OmegaWrongDegree => "omega is not homogeneous of degree 2",
        }
    }

    /// Whether the violation only affects minimality (the algebra is still a CDGA).
    pub fn is_minimality(self) -> bool {
        matches!(self, ViolationKind::LinearPart | ViolationKind::NoAdmissibleOrder)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending generator; `None` for checks on omega.
    pub generator: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// No structural violations: `(ΛV, d)` is a CDGA and omega (if any) is a closed 2-form.
    pub fn is_valid(&self) -> bool {
        self.violations.iter().all(|v| v.kind.is_minimality())
    }

    pub fn is_minimal(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn of_kind(&self, kind: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }
}

/// Which degrees can be tested for exactness, and above which degree every
/// closed element is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessBound {
    /// Closed elements of degree above this are exact (`H^k = 0` for `k > m`).
    pub vanishing_above: Option<u32>,
    /// Exactness in the full model is computable in degrees up to this one.
    /// `None` means every degree.
    pub decidable_through: Option<u32>,
    /// `dim H^k = 0` was verified for `m < k <= m + 2`.
    pub sanity_checked: bool,
    pub note: String,
}

impl ExactnessBound {
    pub fn is_decidable(&self, k: u32) -> bool {
        self.decidable_through.is_none_or(|t| k <= t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingBlock {
    pub degree: u32,
    /// Rows index `H^degree`, columns index `H^(m - degree)`.
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub top_degree: u32,
    pub blocks: Vec<PairingBlock>,
}

impl PairingReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.blocks.iter().all(|b| b.nondegenerate)
    }
}

impl FreeCDGA {
    pub fn new(name: impl Into<String>, gens: GeneratorSet, diff: Vec<Element>) -> Result<Self, AlgebraError> {
        if diff.len() != gens.len() || diff.iter().any(|e| e.arity() != gens.len()) {
            return Err(AlgebraError::GeneratorMismatch);
        }
        Ok(FreeCDGA {
            name: name.into(),
            gens,
            diff,
            formal_dim: None,
            omega: None,
            truncated_at: None,
            cache: Cache::default(),
        })
    }

    /// The algebra `Q` with no generators.
    pub fn trivial() -> Self {
        FreeCDGA::new("trivial", GeneratorSet::empty(), Vec::new()).expect("empty algebra")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_formal_dim(mut self, m: u32) -> Self {
        self.formal_dim = Some(m);
        self
    }

    pub fn with_omega(mut self, omega: Element) -> Result<Self, AlgebraError> {
        if omega.arity() != self.gens.len() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        self.omega = Some(omega);
        Ok(self)
    }

    pub fn without_omega(mut self) -> Self {
        self.omega = None;
        self
    }

    pub fn with_truncation(mut self, t: u32) -> Self {
        self.truncated_at = Some(t);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn arity(&self) -> usize {
        self.gens.len()
    }

    pub fn differential_of(&self, i: usize) -> &Element {
        &self.diff[i]
    }

    pub fn differentials(&self) -> &[Element] {
        &self.diff
    }

    pub fn formal_dim(&self) -> Option<u32> {
        self.formal_dim
    }

    pub fn omega(&self) -> Option<&Element> {
        self.omega.as_ref()
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn generator(&self, name: &str) -> Option<Element> {
        self.gens.index_of(name).map(|i| Element::generator(self.arity(), i))
    }

    pub fn one(&self) -> Element {
        Element::one(self.arity())
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.arity())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        multiply(x, y, &self.gens)
    }

    pub fn power(&self, x: &Element, k: u32) -> Result<Element, AlgebraError> {
        power(x, k, &self.gens)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &Element) -> Result<u32, AlgebraError> {
        if x.arity() != self.arity() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        x.degree(&self.gens).ok_or(AlgebraError::Inhomogeneous)
    }

    pub fn display(&self, x: &Element) -> String {
        x.display(&self.gens)
    }

    fn d_monomial(&self, m: &Monomial) -> Element {
        let n = self.arity();
        let mut out = Element::zero(n);
        let mut prefix_degree = 0u32;
        for i in 0..n {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            if !self.diff[i].is_zero() {
                let mut left = vec![0; n];
                let mut right = vec![0; n];
                left[..i].copy_from_slice(&m.exponents()[..i]);
                right[i + 1..].copy_from_slice(&m.exponents()[i + 1..]);
                let mut mid = self.diff[i].clone();
                if e > 1 {
                    let mut rest = vec![0; n];
                    rest[i] = e - 1;
                    mid = multiply(
                        &Element::term(Monomial::from_exponents(rest), q(e as i64)),
                        &mid,
                        &self.gens,
                    )
                    .expect("same generators");
                }
                let l = Element::term(Monomial::from_exponents(left), Rational::one());
                let r = Element::term(Monomial::from_exponents(right), Rational::one());
                let mut t = multiply(
                    &multiply(&l, &mid, &self.gens).expect("same generators"),
                    &r,
                    &self.gens,
                )
                .expect("same generators");
                if prefix_degree % 2 == 1 {
                    t = -t;
                }
                out = &out + &t;
            }
            prefix_degree += e * self.gens.degree(i);
        }
        out
    }

    /// The derivation extending the generator differentials.
    pub fn d(&self, x: &Element) -> Result<Element, AlgebraError> {
        if x.arity() != self.arity() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        let mut out = Element::zero(self.arity());
        for (m, c) in x.terms() {
            let dm = self.d_monomial(m);
            out = &out + &dm.scaled(c);
        }
        Ok(out)
    }

    pub fn is_closed(&self, x: &Element) -> Result<bool, AlgebraError> {
        Ok(self.d(x)?.is_zero())
    }

    pub fn degree_basis(&self, k: u32) -> Arc<DegreeBasis> {
        memo(&self.cache.bases, k, || DegreeBasis::new(degree_basis(&self.gens, k)))
    }

    /// Coordinates of a degree-`k` element (or zero) in the monomial basis.
    pub fn to_vector(&self, x: &Element, k: u32) -> Result<Vec<Rational>, AlgebraError> {
        if x.arity() != self.arity() {
            return Err(AlgebraError::GeneratorMismatch);
        }
        let basis = self.degree_basis(k);
        let mut v = zero_vec(basis.len());
        for (m, c) in x.terms() {
            match basis.position(m) {
                Some(i) => v[i] = c.clone(),
                None => {
                    return Err(AlgebraError::DegreeMismatch {
                        expected: k,
                        actual: m.degree(&self.gens),
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, k: u32, v: &[Rational]) -> Element {
        let basis = self.degree_basis(k);
        assert_eq!(v.len(), basis.len(), "vector length");
        let mut out = Element::zero(self.arity());
        for (m, c) in basis.monomials().iter().zip(v) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Matrix of `d: (ΛV)^k -> (ΛV)^(k+1)` in the monomial bases.
    pub fn d_matrix(&self, k: u32) -> Arc<RationalMatrix> {
        memo(&self.cache.dmats, k, || {
            let src = self.degree_basis(k);
            let dst = self.degree_basis(k + 1);
            let mut m = RationalMatrix::zeros(dst.len(), src.len());
            for (j, mono) in src.monomials().iter().enumerate() {
                for (t, c) in self.d_monomial(mono).terms() {
                    let i = dst.position(t).expect("d raises degree by one");
                    m.set(i, j, c.clone());
                }
            }
            m
        })
    }

    pub fn betti(&self, k: u32) -> usize {
        self.cohomology(k).dim()
    }

    pub fn betti_vector(&self, up_to: u32) -> Vec<usize> {
        (0..=up_to).map(|k| self.betti(k)).collect()
    }

    /// Closed elements whose classes form the chosen basis of `H^k`.
    pub fn representatives(&self, k: u32) -> Vec<Element> {
        self.cohomology(k)
            .representatives()
            .iter()
            .map(|v| self.from_vector(k, v))
            .collect()
    }

    /// Coordinates of `[z]` in the representative basis of `H^k`.
    pub fn class_coordinates(&self, z: &Element, k: u32) -> Result<Vec<Rational>, AlgebraError> {
        let v = self.to_vector(z, k)?;
        self.cohomology(k).class_of(&v)
    }

    pub fn is_exact(&self, z: &Element, k: u32) -> Result<bool, AlgebraError> {
        let v = self.to_vector(z, k)?;
        Ok(self.cohomology(k).is_exact(&v))
    }

    /// Element of `H^k` (as a cycle) with the given class coordinates.
    pub fn class_element(&self, k: u32, coords: &[Rational]) -> Element {
        let v = self.cohomology(k).lift(coords);
        self.from_vector(k, &v)
    }

    /// Matrix of `[x] -> [c * x]` from `H^i` to `H^(i + deg c)`.
    pub fn cup_product_map(&self, c: &Element, i: u32) -> Result<RationalMatrix, AlgebraError> {
        let p = if c.is_zero() { 0 } else { self.degree_of(c)? };
        if !self.is_closed(c)? {
            return Err(AlgebraError::NotClosed);
        }
        let src = self.representatives(i);
        let target = self.cohomology(i + p);
        let mut cols = Vec::with_capacity(src.len());
        for r in &src {
            let prod = self.multiply(c, r)?;
            cols.push(self.class_coordinates(&prod, i + p)?);
        }
        Ok(RationalMatrix::from_columns(target.dim(), &cols))
    }

    pub fn poincare_pairing(&self) -> Result<PairingReport, AlgebraError> {
        let m = self.formal_dim.ok_or(AlgebraError::MissingDimension)?;
        let top = self.betti(m);
        if top != 1 {
            return Err(AlgebraError::TopClassNotLine { degree: m, dim: top });
        }
        let mut blocks = Vec::new();
        for i in 0..=m / 2 {
            let left = self.representatives(i);
            let right = self.representatives(m - i);
            let mut rows = Vec::new();
            for a in &left {
                let mut row = Vec::new();
                for b in &right {
                    let prod = self.multiply(a, b)?;
                    row.push(self.class_coordinates(&prod, m)?[0].clone());
                }
                rows.push(row);
            }
            let matrix = RationalMatrix::from_rows(left.len(), right.len(), &rows);
            let rank = matrix.rank();
            blocks.push(PairingBlock {
                degree: i,
                nondegenerate: rank == left.len() && rank == right.len(),
                matrix,
                rank,
            });
        }
        Ok(PairingReport { top_degree: m, blocks })
    }

    /// Structural and minimality checks.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let gens = &self.gens;
        for i in 0..gens.len() {
            let name = gens.name(i).to_string();
            let dx = &self.diff[i];
            if dx.is_zero() {
                continue;
            }
            match dx.degree(gens) {
                None => violations.push(Violation {
                    kind: ViolationKind::Inhomogeneous,
                    generator: Some(name.clone()),
                    detail: format!("d {} = {}", name, dx.display(gens)),
                }),
                Some(k) if k != gens.degree(i) + 1 => violations.push(Violation {
                    kind: ViolationKind::WrongDegree,
                    generator: Some(name.clone()),
                    detail: format!("d {name} has degree {k}, expected {}", gens.degree(i) + 1),
                }),
                Some(_) => {}
            }
            let ddx = self.d(dx).expect("same generators");
            if !ddx.is_zero() {
                violations.push(Violation {
                    kind: ViolationKind::DSquaredNonzero,
                    generator: Some(name.clone()),
                    detail: format!("d(d {}) = {}", name, ddx.display(gens)),
                });
            }
            let lin = dx.linear_part();
            if !lin.is_zero() || dx.terms().any(|(m, _)| m.is_unit()) {
                violations.push(Violation {
                    kind: ViolationKind::LinearPart,
                    generator: Some(name.clone()),
                    detail: format!("linear part {}", lin.display(gens)),
                });
            }
        }
        if let Some(cycle) = self.ordering_cycle() {
            violations.push(Violation {
                kind: ViolationKind::NoAdmissibleOrder,
                generator: Some(cycle[0].clone()),
                detail: format!("differentials depend cyclically on {}", cycle.join(", ")),
            });
        }
        if let Some(w) = &self.omega {
            if !w.is_zero() && w.degree(gens) != Some(2) {
                violations.push(Violation {
                    kind: ViolationKind::OmegaWrongDegree,
                    generator: None,
                    detail: format!("omega = {}", w.display(gens)),
                });
            }
            let dw = self.d(w).expect("same generators");
            if !dw.is_zero() {
                violations.push(Violation {
                    kind: ViolationKind::OmegaNotClosed,
                    generator: None,
                    detail: format!("d omega = {}", dw.display(gens)),
                });
            }
        }
        ValidationReport { violations }
    }

    /// Whether `d` is decomposable and generators admit an order in which each
    /// differential only involves earlier generators.
    pub fn is_minimal(&self) -> bool {
        self.validate().is_minimal()
    }

    /// A set of generators whose differentials depend on each other
    /// cyclically, if any. Dependencies on generators of lower degree never
    /// create cycles, so only same-degree dependencies are examined.
    fn ordering_cycle(&self) -> Option<Vec<String>> {
        let n = self.arity();
        let deps: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                self.diff[i]
                    .support()
                    .into_iter()
                    .filter(|&j| self.gens.degree(j) >= self.gens.degree(i))
                    .collect()
            })
            .collect();
        // Kahn's algorithm over the dependency graph.
        let mut indeg: Vec<usize> = deps.iter().map(Vec::len).collect();
        let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, ds) in deps.iter().enumerate() {
            for &j in ds {
                users[j].push(i);
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut done = vec![false; n];
        while let Some(j) = ready.pop() {
            done[j] = true;
            for &i in &users[j] {
                indeg[i] -= 1;
                if indeg[i] == 0 {
                    ready.push(i);
                }
            }
        }
        let stuck: Vec<String> = (0..n)
            .filter(|&i| !done[i])
            .map(|i| self.gens.name(i).to_string())
            .collect();
        (!stuck.is_empty()).then_some(stuck)
    }

    /// How far exactness questions about the modeled space can be answered.
    pub fn exactness_bound(&self) -> ExactnessBound {
        let maxdeg = self.gens.max_degree();
        match (self.truncated_at, self.formal_dim) {
            (Some(t), m) => {
                let sanity_checked = m.is_some_and(|m| m + 2 <= t + 1 && self.vanishes_above(m));
                ExactnessBound {
                    vanishing_above: m,
                    decidable_through: Some(t + 1),
                    sanity_checked,
                    note: format!(
                        "generators known through degree {t}; exactness decidable through degree {}",
                        t + 1
                    ),
                }
            }
            (None, Some(m)) => {
                if self.vanishes_above(m) {
                    ExactnessBound {
                        vanishing_above: Some(m),
                        decidable_through: None,
                        sanity_checked: true,
                        note: format!(
                            "H^k = 0 verified for {} <= k <= {}; closed elements above degree {m} are exact",
                            m + 1,
                            m + 2
                        ),
                    }
                } else {
                    ExactnessBound {
                        vanishing_above: Some(m),
                        decidable_through: Some(maxdeg + 1),
                        sanity_checked: false,
                        note: format!(
                            "H^k != 0 for some {} <= k <= {}; treated as a partial model with generators through degree {maxdeg}",
                            m + 1,
                            m + 2
                        ),
                    }
                }
            }
            (None, None) => ExactnessBound {
                vanishing_above: None,
                decidable_through: None,
                sanity_checked: false,
                note: "no formal dimension declared".into(),
            },
        }
    }

    fn vanishes_above(&self, m: u32) -> bool {
        (m + 1..=m + 2).all(|k| self.betti(k) == 0)
    }

    /// `(ΛV_A ⊗ ΛV_B, d_A ⊗ 1 + 1 ⊗ d_B)`. Generators are merged stably by
    /// degree. Colliding names are an error unless `auto_rename` is set, in
    /// which case the second factor's names get a numeric suffix.
    pub fn tensor_product(a: &FreeCDGA, b: &FreeCDGA, auto_rename: bool) -> Result<FreeCDGA, AlgebraError> {
        let mut b_names: Vec<String> = b.gens.iter().map(|g| g.name.clone()).collect();
        let collisions: Vec<String> = b_names
            .iter()
            .filter(|n| a.gens.index_of(n).is_some())
            .cloned()
            .collect();
        if !collisions.is_empty() {
            if !auto_rename {
                return Err(AlgebraError::NameCollision(collisions.join(", ")));
            }
            for name in b_names.iter_mut() {
                if a.gens.index_of(name).is_none() {
                    continue;
                }
                let base = name.clone();
                let mut k = 2;
                loop {
                    let cand = format!("{base}_{k}");
                    if a.gens.index_of(&cand).is_none() && b.gens.index_of(&cand).is_none() {
                        *name = cand;
                        break;
                    }
                    k += 1;
                }
            }
        }
        // Stable merge by degree.
        let mut order: Vec<(u32, usize, usize)> = Vec::new();
        for i in 0..a.arity() {
            order.push((a.gens.degree(i), 0, i));
        }
        for i in 0..b.arity() {
            order.push((b.gens.degree(i), 1, i));
        }
        order.sort();
        let mut pos_a = vec![0; a.arity()];
        let mut pos_b = vec![0; b.arity()];
        let mut new_gens = Vec::new();
        for (p, &(deg, side, i)) in order.iter().enumerate() {
            if side == 0 {
                pos_a[i] = p;
                new_gens.push((a.gens.name(i).to_string(), deg));
            } else {
                pos_b[i] = p;
                new_gens.push((b_names[i].clone(), deg));
            }
        }
        let gens = GeneratorSet::new(new_gens)?;
        let n = gens.len();
        let remap = |x: &Element, pos: &[usize]| {
            let mut out = Element::zero(n);
            for (m, c) in x.terms() {
                let mut e = vec![0; n];
                for (i, &k) in m.exponents().iter().enumerate() {
                    e[pos[i]] = k;
                }
                out.add_term(Monomial::from_exponents(e), c.clone());
            }
            out
        };
        let mut diff = vec![Element::zero(n); n];
        for i in 0..a.arity() {
            diff[pos_a[i]] = remap(&a.diff[i], &pos_a);
        }
        for i in 0..b.arity() {
            diff[pos_b[i]] = remap(&b.diff[i], &pos_b);
        }
        let mut out = FreeCDGA::new(format!("{}_{}", a.name, b.name), gens, diff)?;
        if let (Some(x), Some(y)) = (a.formal_dim, b.formal_dim) {
            out.formal_dim = Some(x + y);
        }
        if let (Some(x), Some(y)) = (&a.omega, &b.omega) {
            out.omega = Some(&remap(x, &pos_a) + &remap(y, &pos_b));
        }
        out.truncated_at = match (a.truncated_at, b.truncated_at) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        Ok(out)
    }

    /// Imports an element of a tensor factor into this algebra by generator name.
    pub fn import(&self, from: &FreeCDGA, x: &Element) -> Result<Element, AlgebraError> {
        let pos: Vec<usize> = (0..from.arity())
            .map(|i| {
                self.gens
                    .index_of(from.gens.name(i))
                    .ok_or_else(|| AlgebraError::UnknownGenerator(from.gens.name(i).to_string()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = self.zero();
        for (m, c) in x.terms() {
            let mut e = vec![0; self.arity()];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[pos[i]] = k;
            }
            // Factors may be reordered relative to each other; rebuild with signs.
            let mut t = self.one().scaled(c);
            for (i, &k) in m.exponents().iter().enumerate() {
                for _ in 0..k {
                    t = self.multiply(&t, &Element::generator(self.arity(), pos[i]))?;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `(H^{<=bound}(A), 0)` with structure constants in the representative bases.
    pub fn cohomology_cdga(&self, bound: u32) -> FiniteCdga {
        let reps: Vec<Vec<Element>> = (0..=bound).map(|k| self.representatives(k)).collect();
        let dims: Vec<usize> = reps.iter().map(Vec::len).collect();
        let labels: Vec<Vec<String>> = reps
            .iter()
            .map(|rs| rs.iter().map(|r| format!("[{}]", self.display(r))).collect())
            .collect();
        let mut mult = HashMap::new();
        for p in 0..=bound {
            for qd in 0..=bound - p {
                for (i, x) in reps[p as usize].iter().enumerate() {
                    for (j, y) in reps[qd as usize].iter().enumerate() {
                        let prod = self.multiply(x, y).expect("same generators");
                        let coords = self
                            .class_coordinates(&prod, p + qd)
                            .expect("products of cycles are cycles");
                        if coords.iter().any(|c| !c.is_zero()) {
                            mult.insert((p, i, qd, j), coords);
                        }
                    }
                }
            }
        }
        FiniteCdga::new(dims, labels, Vec::new(), mult).expect("well-formed cohomology algebra")
    }
}

impl CochainAlgebra for FreeCDGA {
    fn slice_dim(&self, k: u32) -> usize {
        self.degree_basis(k).len()
    }

    fn differential(&self, k: u32) -> Arc<RationalMatrix> {
        self.d_matrix(k)
    }

    fn product_vec(&self, p: u32, x: &[Rational], qd: u32, y: &[Rational]) -> Vec<Rational> {
        let prod = self
            .multiply(&self.from_vector(p, x), &self.from_vector(qd, y))
            .expect("same generators");
        self.to_vector(&prod, p + qd).expect("degrees add")
    }

    fn unit_vec(&self) -> Vec<Rational> {
        vec![Rational::one()]
    }

    fn cohomology(&self, k: u32) -> Arc<CohomologySlice> {
        memo(&self.cache.slices, k, || {
            let d_in = (k > 0).then(|| self.d_matrix(k - 1));
            CohomologySlice::compute(k, d_in.as_deref(), &self.d_matrix(k))
        })
    }

    fn describe(&self, k: u32, v: &[Rational]) -> String {
        self.display(&self.from_vector(k, v))
    }
}
