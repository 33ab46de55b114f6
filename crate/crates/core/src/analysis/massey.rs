use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use super::param::{pmono_degree, Affine, PElem, PMono};
use super::AnalysisError;
use crate::cdga::{CochainAlgebra, FreeCDGA};
use crate::error::AlgebraError;
use crate::grading::Element;
use crate::qlinalg::{fmt_vec, kernel_basis, solve, Rational, RationalMatrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MasseyVerdict {
    /// Some defining system gives an exact representative.
    Vanishes,
    /// No defining system does.
    Nonvanishing,
    /// The sweep over defining systems could not be completed exactly.
    Inconclusive,
}

impl fmt::Display for MasseyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MasseyVerdict::Vanishes => "VANISHES",
            MasseyVerdict::Nonvanishing => "NONVANISHING",
            MasseyVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MasseyResult {
    pub inputs: Vec<Element>,
    pub degrees: Vec<u32>,
    /// Degree of the product, `p1 + ... + pt - t + 2`.
    pub degree: u32,
    /// Representative from one particular defining system.
    pub representative: Element,
    /// Its class in the representative basis of `H^degree`.
    pub class: Vec<Rational>,
    /// Basis (RREF) of the span of all variations of the class over defining systems.
    pub indeterminacy: Vec<Vec<Rational>>,
    pub verdict: MasseyVerdict,
    pub note: Option<String>,
}

impl MasseyResult {
    /// Whether `coords` differs from the representative's class by an element of the indeterminacy.
    pub fn contains_class(&self, coords: &[Rational]) -> bool {
        if coords.len() != self.class.len() {
            return false;
        }
        let diff: Vec<Rational> = coords.iter().zip(&self.class).map(|(a, b)| a - b).collect();
        Subspace::span(self.class.len(), self.indeterminacy.clone()).contains(&diff)
    }

    pub fn describe(&self, a: &FreeCDGA) -> String {
        let inputs: Vec<String> = self.inputs.iter().map(|x| format!("[{}]", a.display(x))).collect();
        let mut s = format!(
            "<{}> in H^{}: {}, representative {} (class {})",
            inputs.join(", "),
            self.degree,
            self.verdict,
            a.display(&self.representative),
            fmt_vec(&self.class)
        );
        if let Some(n) = &self.note {
            s.push_str(&format!("; {n}"));
        }
        s
    }
}

/// Outcome of [`massey_obstruction_scan`].
#[derive(Debug, Clone)]
pub struct MasseyScan {
    pub s: u32,
    pub max_length: usize,
    /// Tuples whose consecutive products vanish and so were examined.
    pub examined: usize,
    /// Examined tuples whose Massey product is defined.
    pub defined: usize,
    pub inconclusive: usize,
    /// Nonvanishing products, in scan order.
    pub hits: Vec<MasseyResult>,
}

fn bar(x: &Element, degree: u32) -> Element {
    if degree % 2 == 1 {
        -x
    } else {
        x.clone()
    }
}

fn input_degrees(a: &FreeCDGA, classes: &[Element]) -> Result<Vec<u32>, AnalysisError> {
    let mut degs = Vec::with_capacity(classes.len());
    for x in classes {
        if x.is_zero() {
            return Err(AnalysisError::NotDefined("zero input class".into()));
        }
        let p = a.degree_of(x)?;
        if p == 0 {
            return Err(AnalysisError::NotDefined(
                "input classes must have positive degree".into(),
            ));
        }
        if !a.is_closed(x)? {
            return Err(AlgebraError::NotClosed.into());
        }
        degs.push(p);
    }
    Ok(degs)
}

fn preimage(a: &FreeCDGA, z: &Element, k: u32) -> Result<Option<Element>, AnalysisError> {
    if k == 0 {
        return Ok(None);
    }
    let v = a.to_vector(z, k)?;
    Ok(solve(&a.d_matrix(k - 1), &v).map(|x| a.from_vector(k - 1, &x)))
}

fn inconclusive(inputs: &[Element], degrees: Vec<u32>, degree: u32, arity: usize, note: String) -> MasseyResult {
    MasseyResult {
        inputs: inputs.to_vec(),
        degrees,
        degree,
        representative: Element::zero(arity),
        class: Vec::new(),
        indeterminacy: Vec::new(),
        verdict: MasseyVerdict::Inconclusive,
        note: Some(note),
    }
}

/// Checks that everything needed for a product landing in degree `top` can be decided.
fn undecidable_note(a: &FreeCDGA, top: u32) -> Option<String> {
    let bound = a.exactness_bound();
    (!bound.is_decidable(top)).then(|| format!("degree {top} is beyond what this model determines ({})", bound.note))
}

/// The triple product `<[x1], [x2], [x3]>` with the classical indeterminacy
/// `[x1] H^(p2+p3-1) + H^(p1+p2-1) [x3]`.
///
/// With `dξ1 = x̄1 x2` and `dξ2 = x̄2 x3` (where `x̄ = (-1)^|x| x`), the
/// representative is `x̄1 ξ2 + ξ̄1 x3`.
pub fn massey_triple(a: &FreeCDGA, x1: &Element, x2: &Element, x3: &Element) -> Result<MasseyResult, AnalysisError> {
    let inputs = [x1.clone(), x2.clone(), x3.clone()];
    let p = input_degrees(a, &inputs)?;
    let top = p[0] + p[1] + p[2] - 1;
    if let Some(note) = undecidable_note(a, top) {
        return Ok(inconclusive(&inputs, p, top, a.arity(), note));
    }
    let z12 = a.multiply(&bar(x1, p[0]), x2)?;
    let z23 = a.multiply(&bar(x2, p[1]), x3)?;
    let xi1 = preimage(a, &z12, p[0] + p[1])?
        .ok_or_else(|| AnalysisError::NotDefined("the product of the first two classes is nonzero".into()))?;
    let xi2 = preimage(a, &z23, p[1] + p[2])?
        .ok_or_else(|| AnalysisError::NotDefined("the product of the last two classes is nonzero".into()))?;
    let rep = a.multiply(&bar(x1, p[0]), &xi2)? + a.multiply(&bar(&xi1, p[0] + p[1] - 1), x3)?;
    let class = a.class_coordinates(&rep, top)?;
    let mut spanning = Vec::new();
    for h in a.representatives(p[1] + p[2] - 1) {
        spanning.push(a.class_coordinates(&a.multiply(x1, &h)?, top)?);
    }
    for h in a.representatives(p[0] + p[1] - 1) {
        spanning.push(a.class_coordinates(&a.multiply(&h, x3)?, top)?);
    }
    let ind = Subspace::span(class.len(), spanning);
    let verdict = if ind.contains(&class) {
        MasseyVerdict::Vanishes
    } else {
        MasseyVerdict::Nonvanishing
    };
    Ok(MasseyResult {
        inputs: inputs.to_vec(),
        degrees: p,
        degree: top,
        representative: rep,
        class,
        indeterminacy: ind.basis().to_vec(),
        verdict,
        note: None,
    })
}

/// Class coordinates of every coefficient of a parametric cycle.
/// Cohomology class of each parameter monomial's coefficient.
type ClassPoly = Vec<(PMono, Vec<Rational>)>;

fn class_poly(a: &FreeCDGA, x: &PElem, k: u32) -> Result<ClassPoly, AnalysisError> {
    let mut out = Vec::new();
    for (m, e) in x.terms() {
        let c = a.class_coordinates(e, k)?;
        if c.iter().any(|v| !v.is_zero()) {
            out.push((m.clone(), c));
        }
    }
    Ok(out)
}

/// A Massey product of any length `t >= 3`, swept over all defining systems.
///
/// Each entry `a_ij` of a defining system is a particular solution plus an
/// arbitrary combination of cohomology representatives, with one free
/// parameter per representative. Requiring the lower products to vanish puts
/// constraints on these parameters; linear constraints are solved exactly and
/// substituted back. The final class is a polynomial in the remaining
/// parameters. The product vanishes if the constant term can be cancelled using
/// parameters that only enter linearly, and is nonvanishing if the constant
/// term lies outside the span of all variations. Anything else is
/// inconclusive.
pub fn massey_higher(a: &FreeCDGA, classes: &[Element]) -> Result<MasseyResult, AnalysisError> {
    let t = classes.len();
    if t < 3 {
        return Err(AnalysisError::NotDefined(
            "a Massey product needs at least three classes".into(),
        ));
    }
    let p = input_degrees(a, classes)?;
    let top = p.iter().sum::<u32>() + 2 - t as u32;
    if let Some(note) = undecidable_note(a, top) {
        return Ok(inconclusive(classes, p, top, a.arity(), note));
    }
    // Degree of a_ij.
    let deg = |i: usize, j: usize| p[i..=j].iter().sum::<u32>() - (j - i) as u32;
    let mut entries: BTreeMap<(usize, usize), PElem> = BTreeMap::new();
    for (i, x) in classes.iter().enumerate() {
        entries.insert((i, i), PElem::constant(x.clone()));
    }
    let mut next_param = 0usize;
    let mut final_rhs = None;
    for len in 2..=t {
        for i in 0..=(t - len) {
            let j = i + len - 1;
            let mut rhs = PElem::zero(a.arity());
            for k in i..j {
                let left = entries[&(i, k)].negated_if(deg(i, k) % 2 == 1);
                rhs = rhs.add(&left.mul(&entries[&(k + 1, j)], a)?);
            }
            if len == t {
                final_rhs = Some(rhs);
                break;
            }
            let dr = deg(i, j) + 1;
            let classes_of = class_poly(a, &rhs, dr)?;
            if classes_of.iter().any(|(m, _)| pmono_degree(m) >= 2) {
                return Ok(inconclusive(
                    classes,
                    p,
                    top,
                    a.arity(),
                    format!(
                        "vanishing of the sub-product on positions {}..{} is a nonlinear condition",
                        i + 1,
                        j + 1
                    ),
                ));
            }
            if !classes_of.is_empty() {
                let sub = solve_linear_constraints(&classes_of, a.cohomology(dr).dim(), &mut next_param).ok_or_else(
                    || {
                        AnalysisError::NotDefined(format!(
                            "the sub-product on positions {}..{} never vanishes",
                            i + 1,
                            j + 1
                        ))
                    },
                )?;
                for e in entries.values_mut() {
                    *e = e.substitute(&sub);
                }
                rhs = rhs.substitute(&sub);
            }
            let mut entry = PElem::zero(a.arity());
            for (m, e) in rhs.terms() {
                let x = preimage(a, e, dr)?.ok_or_else(|| {
                    AnalysisError::Algebra(AlgebraError::Invalid("constrained right-hand side is not exact".into()))
                })?;
                let mut term = PElem::constant(x);
                for &(param, exp) in m {
                    for _ in 0..exp {
                        term = term.mul(&PElem::param(param, a.one()), a)?;
                    }
                }
                entry = entry.add(&term);
            }
            for h in a.representatives(deg(i, j)) {
                entry = entry.add(&PElem::param(next_param, h));
                next_param += 1;
            }
            entries.insert((i, j), entry);
        }
    }
    let rhs = final_rhs.expect("t >= 3");
    let representative = rhs.constant_term();
    let class = a.class_coordinates(&representative, top)?;
    let variations = class_poly(a, &rhs, top)?;
    let mut nonlinear_params = BTreeSet::new();
    for (m, _) in variations.iter().filter(|(m, _)| pmono_degree(m) >= 2) {
        nonlinear_params.extend(m.iter().map(|&(q, _)| q));
    }
    let all: Vec<Vec<Rational>> = variations
        .iter()
        .filter(|(m, _)| !m.is_empty())
        .map(|(_, c)| c.clone())
        .collect();
    let safe: Vec<Vec<Rational>> = variations
        .iter()
        .filter(|(m, _)| m.len() == 1 && m[0].1 == 1 && !nonlinear_params.contains(&m[0].0))
        .map(|(_, c)| c.clone())
        .collect();
    let span_all = Subspace::span(class.len(), all);
    let span_safe = Subspace::span(class.len(), safe);
    let (verdict, note) = if !span_all.contains(&class) {
        let note = (!nonlinear_params.is_empty())
            .then(|| "the class stays outside the span of every variation, including nonlinear ones".to_string());
        (MasseyVerdict::Nonvanishing, note)
    } else if span_safe.contains(&class) {
        (MasseyVerdict::Vanishes, None)
    } else {
        (
            MasseyVerdict::Inconclusive,
            Some("cancelling the class needs parameters that enter nonlinearly".to_string()),
        )
    };
    Ok(MasseyResult {
        inputs: classes.to_vec(),
        degrees: p,
        degree: top,
        representative,
        class,
        indeterminacy: span_all.basis().to_vec(),
        verdict,
        note,
    })
}

/// Solves `c0 + Σ λ_q c_q = 0` and expresses the old parameters as affine
/// functions of fresh ones. `None` when there is no solution.
fn solve_linear_constraints(
    classes_of: &[(PMono, Vec<Rational>)],
    dim: usize,
    next_param: &mut usize,
) -> Option<BTreeMap<usize, Affine>> {
    let mut rhs = vec![Rational::zero(); dim];
    let mut params: Vec<usize> = Vec::new();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for (m, c) in classes_of {
        if m.is_empty() {
            rhs = c.iter().map(|v| -v.clone()).collect();
        } else {
            params.push(m[0].0);
            cols.push(c.clone());
        }
    }
    let mat = RationalMatrix::from_columns(dim, &cols);
    let particular = solve(&mat, &rhs)?;
    let kernel = kernel_basis(&mat);
    let mut sub: BTreeMap<usize, Affine> = params
        .iter()
        .zip(&particular)
        .map(|(&q, c)| {
            (
                q,
                Affine {
                    constant: c.clone(),
                    linear: Vec::new(),
                },
            )
        })
        .collect();
    for v in kernel.basis() {
        let fresh = *next_param;
        *next_param += 1;
        for (&q, c) in params.iter().zip(v) {
            if !c.is_zero() {
                sub.get_mut(&q)
                    .expect("parameter listed")
                    .linear
                    .push((fresh, c.clone()));
            }
        }
    }
    Some(sub)
}

/// Massey product of the given closed elements; triple products use the
/// classical indeterminacy, longer ones [`massey_higher`].
pub fn massey_product(a: &FreeCDGA, classes: &[Element]) -> Result<MasseyResult, AnalysisError> {
    match classes {
        [x1, x2, x3] => massey_triple(a, x1, x2, x3),
        _ => massey_higher(a, classes),
    }
}

/// Whether a product of classes of these degrees must vanish on an s-formal
/// algebra: `p1 + ... + p(t-1) <= s + t - 2` and `p2 + ... + pt <= s + t - 2`.
pub fn scan_windows_ok(degrees: &[u32], s: u32) -> bool {
    let t = degrees.len();
    if t < 3 {
        return false;
    }
    let limit = s + t as u32 - 2;
    degrees[..t - 1].iter().sum::<u32>() <= limit && degrees[1..].iter().sum::<u32>() <= limit
}

/// Looks for nonvanishing Massey products of basis classes, of length
/// `3..=max_length`, whose degrees fall in the windows of [`scan_windows_ok`].
/// Any hit shows the algebra is not s-formal.
pub fn massey_obstruction_scan(a: &FreeCDGA, s: u32, max_length: usize) -> Result<MasseyScan, AnalysisError> {
    let mut reps: Vec<(u32, Element)> = Vec::new();
    for k in 1..=s {
        if !a.exactness_bound().is_decidable(k) {
            break;
        }
        reps.extend(a.representatives(k).into_iter().map(|r| (k, r)));
    }
    let n = reps.len();
    let mut pair_zero = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (pi, x) = &reps[i];
            let (pj, y) = &reps[j];
            let z = a.multiply(&bar(x, *pi), y)?;
            pair_zero[i][j] = a.is_exact(&z, pi + pj)?;
        }
    }
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    for t in 3..=max_length {
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        stack.reverse();
        while let Some(tuple) = stack.pop() {
            let degs: Vec<u32> = tuple.iter().map(|&i| reps[i].0).collect();
            let limit = s + t as u32 - 2;
            if degs.iter().take(t - 1).sum::<u32>() > limit {
                continue;
            }
            if tuple.len() == t {
                if scan_windows_ok(&degs, s) {
                    tuples.push(tuple);
                }
                continue;
            }
            let last = *tuple.last().expect("nonempty");
            for next in (0..n).rev() {
                if pair_zero[last][next] {
                    let mut longer = tuple.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
    }
    let results: Vec<Result<Option<MasseyResult>, AnalysisError>> = tuples
        .par_iter()
        .map(|tuple| {
            let inputs: Vec<Element> = tuple.iter().map(|&i| reps[i].1.clone()).collect();
            match massey_product(a, &inputs) {
                Ok(r) => Ok(Some(r)),
                Err(AnalysisError::NotDefined(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut scan = MasseyScan {
        s,
        max_length,
        examined: tuples.len(),
        defined: 0,
        inconclusive: 0,
        hits: Vec::new(),
    };
    for r in results {
        if let Some(r) = r? {
            scan.defined += 1;
            match r.verdict {
                MasseyVerdict::Nonvanishing => scan.hits.push(r),
                MasseyVerdict::Inconclusive => scan.inconclusive += 1,
                MasseyVerdict::Vanishes => {}
            }
        }
    }
    Ok(scan)
}

/// Triple-product representative in the convention `dξ1 = x1 x2`,
/// `dξ2 = x2 x3`: `x1 ξ2 + (-1)^(p1+1) ξ1 x3`. It agrees with
/// [`massey_triple`] up to the sign `(-1)^(p1+p2)`.
#[cfg(test)]
fn alternate_representative(a: &FreeCDGA, x: [&Element; 3]) -> Element {
    let p: Vec<u32> = x.iter().map(|e| a.degree_of(e).unwrap()).collect();
    let xi1 = preimage(a, &a.multiply(x[0], x[1]).unwrap(), p[0] + p[1])
        .unwrap()
        .unwrap();
    let xi2 = preimage(a, &a.multiply(x[1], x[2]).unwrap(), p[1] + p[2])
        .unwrap()
        .unwrap();
    let sign = crate::qlinalg::q(if p[0].is_multiple_of(2) { -1 } else { 1 });
    a.multiply(x[0], &xi2).unwrap() + a.multiply(&xi1, x[2]).unwrap().scaled(&sign)
}
