use std::fmt;

use num_traits::Zero;

use super::massey::{massey_obstruction_scan, massey_product, scan_windows_ok, MasseyResult, MasseyVerdict};
use super::{require_dim, require_minimal, AnalysisError};
use crate::cdga::{apply_morphism, CochainAlgebra, FreeCDGA};
use crate::grading::{Element, GeneratorSet};
use crate::qlinalg::{fmt_vec, kernel_basis, solve, zero_vec, Echelon, Rational, RationalMatrix, Subspace};

/// Longest Massey products tried when looking for obstructions.
const SCAN_LENGTH: usize = 4;

/// `V^i = C^i ⊕ N^i` for one degree, as generator indices of the presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDegree {
    pub degree: u32,
    /// Closed generators.
    pub c: Vec<usize>,
    /// Complementary generators; `d` is injective on their span.
    pub n: Vec<usize>,
}

/// The canonical splitting of the generators of degree `<= s`.
///
/// `C^i` is the kernel of `d` on `V^i` and `N^i` is spanned by the first
/// generators (in declaration order) completing it. When the kernel is not
/// spanned by generators, the presentation changes generators of degree
/// `<= s` so that both parts are.
#[derive(Debug, Clone)]
pub struct Splitting {
    pub s: u32,
    pub presentation: FreeCDGA,
    pub changed_generators: bool,
    /// Each presentation generator written in the input's generators.
    pub in_input: Vec<Element>,
    pub degrees: Vec<SplitDegree>,
}

impl Splitting {
    fn collect(&self, i: u32, pick: impl Fn(&SplitDegree) -> &Vec<usize>) -> Vec<Element> {
        self.degrees
            .iter()
            .filter(|d| d.degree == i)
            .flat_map(|d| pick(d).iter().map(|&g| self.in_input[g].clone()))
            .collect()
    }

    /// Basis of `C^i` in the input's generators.
    pub fn c_basis(&self, i: u32) -> Vec<Element> {
        self.collect(i, |d| &d.c)
    }

    /// Basis of `N^i` in the input's generators.
    pub fn n_basis(&self, i: u32) -> Vec<Element> {
        self.collect(i, |d| &d.n)
    }

    pub fn is_n(&self, g: usize) -> bool {
        self.degrees.iter().any(|d| d.n.contains(&g))
    }

    /// Whether `N^i = 0` for every `i <= s`.
    pub fn is_trivial(&self) -> bool {
        self.degrees.iter().all(|d| d.n.is_empty())
    }

    /// Degrees `i <= s` with `N^i != 0`.
    pub fn n_degrees(&self) -> Vec<u32> {
        self.degrees
            .iter()
            .filter(|d| !d.n.is_empty())
            .map(|d| d.degree)
            .collect()
    }

    /// Whether a presentation monomial lies in `N^{<=s} · ΛV^{<=s}`.
    fn in_ideal(&self, m: &crate::grading::Monomial) -> bool {
        let gens = self.presentation.gens();
        let f = m.factors();
        f.iter().all(|&g| gens.degree(g) <= self.s) && f.iter().any(|&g| self.is_n(g))
    }

    pub fn describe(&self) -> String {
        let p = &self.presentation;
        let names = |v: &[usize]| {
            v.iter()
                .map(|&g| p.gens().name(g).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut lines = Vec::new();
        for d in &self.degrees {
            lines.push(format!(
                "C^{} = <{}>, N^{} = <{}>",
                d.degree,
                names(&d.c),
                d.degree,
                names(&d.n)
            ));
        }
        if self.changed_generators {
            for (i, e) in self.in_input.iter().enumerate() {
                if p.gens().degree(i) <= self.s {
                    lines.push(format!("{} = {}", p.gens().name(i), e.display(p.gens())));
                }
            }
        }
        lines.join("\n")
    }
}

fn unique_name(gens: &[(String, u32)], old: &GeneratorSet, base: &str) -> String {
    let mut name = format!("{base}_c");
    while gens.iter().any(|(n, _)| *n == name) || old.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Computes the canonical splitting `V^i = C^i ⊕ N^i` for `1 <= i <= s`.
pub fn canonical_splitting(a: &FreeCDGA, s: u32) -> Result<Splitting, AnalysisError> {
    require_minimal(a)?;
    let gens = a.gens();
    let n = a.arity();
    struct Part {
        idx: Vec<usize>,
        c: Vec<Vec<Rational>>,
        n: Vec<usize>,
    }
    let mut parts = Vec::new();
    let mut aligned = true;
    for i in 1..=s {
        let idx = gens.in_degree(i);
        let mut cols = Vec::with_capacity(idx.len());
        for &g in &idx {
            cols.push(a.to_vector(a.differential_of(g), i + 1)?);
        }
        let dm = RationalMatrix::from_columns(a.degree_basis(i + 1).len(), &cols);
        let c = kernel_basis(&dm).basis().to_vec();
        let mut chosen: Vec<Vec<Rational>> = c.clone();
        let mut nsel = Vec::new();
        for j in 0..idx.len() {
            let mut e = zero_vec(idx.len());
            e[j] = Rational::from_integer(1.into());
            if !Echelon::new(idx.len(), chosen.clone()).contains(&e) {
                chosen.push(e);
                nsel.push(j);
            }
        }
        if c.iter().any(|v| v.iter().filter(|x| !x.is_zero()).count() != 1) {
            aligned = false;
        }
        parts.push(Part { idx, c, n: nsel });
    }
    let unit_pos = |v: &[Rational]| v.iter().position(|x| !x.is_zero()).expect("nonzero");
    if aligned {
        let degrees = parts
            .iter()
            .zip(1..)
            .map(|(p, i)| SplitDegree {
                degree: i,
                c: p.c.iter().map(|v| p.idx[unit_pos(v)]).collect(),
                n: p.n.iter().map(|&j| p.idx[j]).collect(),
            })
            .collect();
        return Ok(Splitting {
            s,
            presentation: a.clone(),
            changed_generators: false,
            in_input: (0..n).map(|g| Element::generator(n, g)).collect(),
            degrees,
        });
    }
    // Change generators in degrees <= s: new generators are the C vectors
    // followed by the chosen N generators.
    let mut new_gens: Vec<(String, u32)> = Vec::new();
    let mut in_input: Vec<Element> = Vec::new();
    let mut old_in_new: Vec<Option<Vec<(usize, Rational)>>> = vec![None; n];
    let mut degrees = Vec::new();
    let maxdeg = gens.max_degree();
    for k in 1..=maxdeg {
        let idx = gens.in_degree(k);
        if k > s {
            for &g in &idx {
                old_in_new[g] = Some(vec![(new_gens.len(), Rational::from_integer(1.into()))]);
                new_gens.push((gens.name(g).to_string(), k));
                in_input.push(Element::generator(n, g));
            }
            continue;
        }
        let part = &parts[k as usize - 1];
        let start = new_gens.len();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut split = SplitDegree {
            degree: k,
            c: Vec::new(),
            n: Vec::new(),
        };
        for v in &part.c {
            let name = if v.iter().filter(|x| !x.is_zero()).count() == 1 {
                gens.name(part.idx[unit_pos(v)]).to_string()
            } else {
                let free = v
                    .iter()
                    .rposition(|x| x == &Rational::from_integer(1.into()))
                    .unwrap_or(0);
                unique_name(&new_gens, gens, gens.name(part.idx[free]))
            };
            split.c.push(new_gens.len());
            new_gens.push((name, k));
            let mut e = Element::zero(n);
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    e = &e + &Element::generator(n, part.idx[j]).scaled(x);
                }
            }
            in_input.push(e);
            rows.push(v.clone());
        }
        for &j in &part.n {
            split.n.push(new_gens.len());
            new_gens.push((gens.name(part.idx[j]).to_string(), k));
            in_input.push(Element::generator(n, part.idx[j]));
            let mut e = zero_vec(part.idx.len());
            e[j] = Rational::from_integer(1.into());
            rows.push(e);
        }
        // Old generator idx[j] in terms of the new ones: solve rows^T y = e_j.
        let bt = RationalMatrix::from_columns(part.idx.len(), &rows);
        for (j, &g) in part.idx.iter().enumerate() {
            let mut e = zero_vec(part.idx.len());
            e[j] = Rational::from_integer(1.into());
            let y = solve(&bt, &e).expect("C and N together span V");
            old_in_new[g] = Some(
                y.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(r, c)| (start + r, c))
                    .collect(),
            );
        }
        degrees.push(split);
    }
    let new_set = GeneratorSet::new(new_gens.clone())?;
    let blank = FreeCDGA::new("scratch", new_set.clone(), vec![Element::zero(n); n])?;
    let images: Vec<Element> = old_in_new
        .iter()
        .map(|combo| {
            let mut e = Element::zero(n);
            for (t, c) in combo.as_ref().expect("every generator placed") {
                e = &e + &Element::generator(n, *t).scaled(c);
            }
            e
        })
        .collect();
    let mut diffs = Vec::with_capacity(n);
    for x in &in_input {
        diffs.push(apply_morphism(a, &blank, &images, &a.d(x)?)?);
    }
    let mut pres = FreeCDGA::new(a.name(), new_set, diffs)?;
    if let Some(m) = a.formal_dim() {
        pres = pres.with_formal_dim(m);
    }
    if let Some(t) = a.truncated_at() {
        pres = pres.with_truncation(t);
    }
    if let Some(w) = a.omega() {
        let w = apply_morphism(a, &blank, &images, w)?;
        pres = pres.with_omega(w)?;
    }
    for d in degrees.iter_mut() {
        d.c.sort_unstable();
        d.n.sort_unstable();
    }
    Ok(Splitting {
        s,
        presentation: pres,
        changed_generators: true,
        in_input,
        degrees,
    })
}

/// A closed, non-exact element of the ideal `N^{<=s} · ΛV^{<=s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    /// In the splitting's presentation.
    pub element: Element,
    pub degree: u32,
    pub class: Vec<Rational>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSearch {
    pub witness: Option<Witness>,
    /// Degrees holding closed elements of the ideal whose exactness cannot be decided.
    pub undecided_degrees: Vec<u32>,
    pub searched_through: u32,
}

/// Positions in the degree-`k` monomial basis of monomials in the ideal.
fn ideal_positions(split: &Splitting, k: u32) -> Vec<usize> {
    let basis = split.presentation.degree_basis(k);
    basis
        .monomials()
        .iter()
        .enumerate()
        .filter(|(_, m)| split.in_ideal(m))
        .map(|(i, _)| i)
        .collect()
}

/// Looks for a closed non-exact element of the ideal, first among single
/// monomials (lowest degree first), then among all closed combinations.
pub fn search_ideal_witness(split: &Splitting) -> Result<WitnessSearch, AnalysisError> {
    let a = &split.presentation;
    let bound = a.exactness_bound();
    let top = bound.vanishing_above.ok_or(AnalysisError::MissingDimension)?;
    let make = |k: u32, v: Vec<Rational>| -> Result<Witness, AnalysisError> {
        let e = a.from_vector(k, &v);
        let class = a.cohomology(k).class_of(&v)?;
        Ok(Witness {
            text: a.display(&e),
            element: e,
            degree: k,
            class,
        })
    };
    let mut undecided = Vec::new();
    let mut kernels: Vec<(u32, Vec<usize>, Subspace)> = Vec::new();
    for k in 1..=top {
        let pos = ideal_positions(split, k);
        if pos.is_empty() {
            continue;
        }
        let dm = a.d_matrix(k);
        let cols: Vec<Vec<Rational>> = pos.iter().map(|&p| dm.column(p)).collect();
        let sub = RationalMatrix::from_columns(dm.rows(), &cols);
        let ker = kernel_basis(&sub);
        if ker.dim() == 0 {
            continue;
        }
        if !bound.is_decidable(k) {
            undecided.push(k);
            continue;
        }
        kernels.push((k, pos, ker));
    }
    for (k, pos, _) in &kernels {
        let slice = a.cohomology(*k);
        let dm = a.d_matrix(*k);
        for &p in pos {
            if dm.column(p).iter().all(Zero::is_zero) {
                let mut v = zero_vec(slice.ambient_dim());
                v[p] = Rational::from_integer(1.into());
                if !slice.is_exact(&v) {
                    return Ok(WitnessSearch {
                        witness: Some(make(*k, v)?),
                        undecided_degrees: undecided,
                        searched_through: top,
                    });
                }
            }
        }
    }
    for (k, pos, ker) in &kernels {
        let slice = a.cohomology(*k);
        for x in ker.basis() {
            let mut v = zero_vec(slice.ambient_dim());
            for (&p, c) in pos.iter().zip(x) {
                v[p] = c.clone();
            }
            if !slice.is_exact(&v) {
                return Ok(WitnessSearch {
                    witness: Some(make(*k, v)?),
                    undecided_degrees: undecided,
                    searched_through: top,
                });
            }
        }
    }
    Ok(WitnessSearch {
        witness: None,
        undecided_degrees: undecided,
        searched_through: top,
    })
}

/// A closed non-exact element of the ideal for the canonical splitting, if
/// one exists in a degree where exactness is decidable. The element is written
/// in the input's generators.
pub fn ideal_witness(a: &FreeCDGA, s: u32) -> Result<Option<Element>, AnalysisError> {
    let split = canonical_splitting(a, s)?;
    let search = search_ideal_witness(&split)?;
    match search.witness {
        None => Ok(None),
        Some(w) => Ok(Some(apply_morphism(
            &split.presentation,
            a,
            &split.in_input,
            &w.element,
        )?)),
    }
}

/// How much of the space of splittings the robustness check covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    /// Every splitting: only degree-one generators occur up to `s`, so
    /// complements differ exactly by maps `N -> C`.
    Complete,
    /// Complements changed by maps `N -> C`; changes of generators by
    /// decomposable elements are not explored.
    LinearOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Robustness {
    /// The witness class stays nonzero for every complement in the family.
    pub robust: bool,
    pub coverage: Coverage,
    /// `(description, class)` of the change in the witness class per unit perturbation.
    pub perturbations: Vec<(String, Vec<Rational>)>,
    pub note: String,
}

/// Checks whether a witness survives every change of complement
/// `n -> n + λ(n)` with `λ: N -> C`.
///
/// Writing the witness as `Σ n_a R_a` with `R_a` in the closed subalgebra,
/// the perturbed element is `w + Σ λ_{a,c} c R_a`, which is closed; it is
/// exact for some `λ` exactly when `[w]` lies in the span of the `[c R_a]`.
pub fn witness_robustness(split: &Splitting, witness: &Element) -> Result<Robustness, AnalysisError> {
    let a = &split.presentation;
    let gens = a.gens();
    let low: Vec<usize> = (0..a.arity()).filter(|&g| gens.degree(g) <= split.s).collect();
    let coverage = if low.iter().all(|&g| gens.degree(g) == 1) {
        Coverage::Complete
    } else if split.n_degrees().len() <= 1 {
        Coverage::LinearOnly
    } else {
        return Err(AnalysisError::UnsupportedShape(format!(
            "complement spans degrees {:?} including degrees above one",
            split.n_degrees()
        )));
    };
    let k = a.degree_of(witness)?;
    let class = a.class_coordinates(witness, k)?;
    let fail = |note: &str| Robustness {
        robust: false,
        coverage,
        perturbations: Vec::new(),
        note: note.to_string(),
    };
    if class.iter().all(Zero::is_zero) {
        return Ok(fail("witness class is zero"));
    }
    let mut parts: Vec<(usize, Element)> = Vec::new();
    for (m, c) in witness.terms() {
        if !split.in_ideal(m) {
            return Ok(fail("witness is not in the ideal"));
        }
        let ns: Vec<usize> = m.factors().into_iter().filter(|&g| split.is_n(g)).collect();
        if ns.len() != 1 {
            return Ok(fail(
                "witness has terms with several complement factors; perturbations are not affine",
            ));
        }
        let (neg, rest) = m.remove_front(ns[0], gens).expect("factor present");
        let coef = if neg { -c.clone() } else { c.clone() };
        let t = Element::term(rest, coef);
        match parts.iter_mut().find(|(g, _)| *g == ns[0]) {
            Some((_, r)) => *r = &*r + &t,
            None => parts.push((ns[0], t)),
        }
    }
    let mut perturbations = Vec::new();
    for (g, r) in &parts {
        let deg = gens.degree(*g);
        let cs = split
            .degrees
            .iter()
            .find(|d| d.degree == deg)
            .map(|d| d.c.clone())
            .unwrap_or_default();
        for c in cs {
            let e = a.multiply(&Element::generator(a.arity(), c), r)?;
            let coords = a.class_coordinates(&e, k)?;
            perturbations.push((
                format!("{} -> {} + {}", gens.name(*g), gens.name(*g), gens.name(c)),
                coords,
            ));
        }
    }
    let span = Subspace::span(class.len(), perturbations.iter().map(|(_, c)| c.clone()).collect());
    let robust = !span.contains(&class);
    let note = if robust {
        format!(
            "class {} is outside the span of all perturbation classes",
            fmt_vec(&class)
        )
    } else {
        "some change of complement makes the witness exact".to_string()
    };
    Ok(Robustness {
        robust,
        coverage,
        perturbations,
        note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormalityStatus {
    SFormal,
    NotSFormal,
    Undecided,
}

impl fmt::Display for FormalityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormalityStatus::SFormal => "S_FORMAL",
            FormalityStatus::NotSFormal => "NOT_S_FORMAL",
            FormalityStatus::Undecided => "UNDECIDED",
        })
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum Certificate {
    /// No closed non-exact element in the ideal. `phi` sends each generator of
    /// degree `<= s` to a closed element representing its image class (zero on `N`).
    Splitting {
        splitting: Splitting,
        phi: Vec<(String, Element)>,
    },
    /// A robust witness found at `s` (possibly smaller than the verdict's `s`).
    Witness {
        s: u32,
        splitting: Splitting,
        witness: Witness,
        robustness: Robustness,
        massey: Option<MasseyResult>,
    },
    /// A nonvanishing Massey product in the obstruction windows for `s`.
    Massey {
        s: u32,
        result: MasseyResult,
    },
    Undecided {
        reason: String,
        witness: Option<Witness>,
    },
}

#[derive(Debug, Clone)]
pub struct FormalityVerdict {
    pub s: u32,
    pub status: FormalityStatus,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

fn phi_of(split: &Splitting) -> Vec<(String, Element)> {
    let p = &split.presentation;
    let mut out = Vec::new();
    for d in &split.degrees {
        for &g in &d.c {
            out.push((p.gens().name(g).to_string(), Element::generator(p.arity(), g)));
        }
        for &g in &d.n {
            out.push((p.gens().name(g).to_string(), p.zero()));
        }
    }
    out
}

fn formal(s: u32, split: Splitting, notes: Vec<String>) -> FormalityVerdict {
    let phi = phi_of(&split);
    FormalityVerdict {
        s,
        status: FormalityStatus::SFormal,
        certificate: Certificate::Splitting { splitting: split, phi },
        notes,
    }
}

/// Decides s-formality of a minimal algebra with declared formal dimension.
///
/// In order: `N^{<=s} = 0` gives s-formal; no witness in the ideal (all
/// degrees decidable) gives s-formal; a witness that survives every
/// splitting gives not s-formal; otherwise failure at a smaller `s`, or a
/// nonvanishing Massey product in the obstruction windows, gives not
/// s-formal. Anything else is undecided.
pub fn s_formality(a: &FreeCDGA, s: u32) -> Result<FormalityVerdict, AnalysisError> {
    require_minimal(a)?;
    require_dim(a)?;
    if let Some(t) = a.truncated_at() {
        if s > t {
            let inner = s_formality(a, t)?;
            let mut notes = inner.notes.clone();
            if inner.status == FormalityStatus::NotSFormal {
                notes.push(format!("not {t}-formal, hence not {s}-formal"));
                return Ok(FormalityVerdict {
                    s,
                    status: FormalityStatus::NotSFormal,
                    certificate: inner.certificate,
                    notes,
                });
            }
            return Ok(FormalityVerdict {
                s,
                status: FormalityStatus::Undecided,
                certificate: Certificate::Undecided {
                    reason: format!("generators are known only through degree {t}"),
                    witness: None,
                },
                notes,
            });
        }
    }
    let split = canonical_splitting(a, s)?;
    if split.is_trivial() {
        return Ok(formal(s, split, vec![format!("N^i = 0 for all i <= {s}")]));
    }
    let search = search_ideal_witness(&split)?;
    let Some(witness) = search.witness else {
        if search.undecided_degrees.is_empty() {
            return Ok(formal(
                s,
                split,
                vec![format!(
                    "no closed non-exact element in the ideal through degree {}",
                    search.searched_through
                )],
            ));
        }
        let reason = format!(
            "closed elements of the ideal in degrees {:?} cannot be tested for exactness",
            search.undecided_degrees
        );
        return fallback(a, s, split, None, None, reason);
    };
    match witness_robustness(&split, &witness.element) {
        Ok(r) if r.robust && r.coverage == Coverage::Complete => Ok(FormalityVerdict {
            s,
            status: FormalityStatus::NotSFormal,
            certificate: Certificate::Witness {
                s,
                splitting: split,
                witness,
                robustness: r,
                massey: None,
            },
            notes: Vec::new(),
        }),
        Ok(r) => {
            let reason = if !r.robust {
                format!("witness {} is not robust: {}", witness.text, r.note)
            } else {
                format!(
                    "witness {} survives changes of complement by closed generators, but changes by decomposable elements are not covered",
                    witness.text
                )
            };
            fallback(a, s, split, Some(witness), Some(r), reason)
        }
        Err(AnalysisError::UnsupportedShape(msg)) => fallback(a, s, split, Some(witness), None, msg),
        Err(e) => Err(e),
    }
}

fn fallback(
    a: &FreeCDGA,
    s: u32,
    split: Splitting,
    witness: Option<Witness>,
    robustness: Option<Robustness>,
    reason: String,
) -> Result<FormalityVerdict, AnalysisError> {
    for s0 in 1..s {
        let lower = s_formality(a, s0)?;
        if lower.status == FormalityStatus::NotSFormal {
            let mut notes = lower.notes;
            notes.push(format!("not {s0}-formal, hence not {s}-formal"));
            return Ok(FormalityVerdict {
                s,
                status: FormalityStatus::NotSFormal,
                certificate: lower.certificate,
                notes,
            });
        }
    }
    let scan = massey_obstruction_scan(a, s, SCAN_LENGTH)?;
    if let Some(hit) = scan.hits.into_iter().next() {
        let notes = vec![
            reason,
            format!("nonvanishing Massey product in the obstruction windows for s = {s}"),
        ];
        let certificate = match (witness, robustness) {
            (Some(witness), Some(robustness)) if robustness.robust => Certificate::Witness {
                s,
                splitting: split,
                witness,
                robustness,
                massey: Some(hit),
            },
            _ => Certificate::Massey { s, result: hit },
        };
        return Ok(FormalityVerdict {
            s,
            status: FormalityStatus::NotSFormal,
            certificate,
            notes,
        });
    }
    let mut notes = vec![format!(
        "Massey scan found no obstruction ({} tuples, {} defined, {} inconclusive)",
        scan.examined, scan.defined, scan.inconclusive
    )];
    notes.push(reason.clone());
    Ok(FormalityVerdict {
        s,
        status: FormalityStatus::Undecided,
        certificate: Certificate::Undecided { reason, witness },
        notes,
    })
}

/// Formality of an algebra with formal dimension `m`, decided through
/// `s = ceil(m/2) - 1`, optionally cross-checked at `s = m`.
#[derive(Debug, Clone)]
pub struct FormalityReport {
    pub m: u32,
    pub s: u32,
    pub verdict: FormalityVerdict,
    pub strict: Option<FormalityVerdict>,
}

impl FormalityReport {
    pub fn status(&self) -> FormalityStatus {
        self.verdict.status
    }

    /// The two computations never give opposite decided answers.
    pub fn consistent(&self) -> bool {
        match &self.strict {
            None => true,
            Some(v) => {
                v.status == FormalityStatus::Undecided
                    || self.verdict.status == FormalityStatus::Undecided
                    || v.status == self.verdict.status
            }
        }
    }
}

pub fn formality(a: &FreeCDGA, strict: bool) -> Result<FormalityReport, AnalysisError> {
    let m = require_dim(a)?;
    let s = m.div_ceil(2).saturating_sub(1);
    let verdict = s_formality(a, s)?;
    let strict = if strict { Some(s_formality(a, m)?) } else { None };
    Ok(FormalityReport { m, s, verdict, strict })
}

/// Replays a certificate against the algebra it was computed for.
pub fn verify_verdict(a: &FreeCDGA, verdict: &FormalityVerdict) -> Result<bool, AnalysisError> {
    match &verdict.certificate {
        Certificate::Splitting { splitting, phi } => {
            let p = &splitting.presentation;
            if verdict.status != FormalityStatus::SFormal {
                return Ok(false);
            }
            let fresh = canonical_splitting(a, splitting.s)?;
            if fresh.degrees != splitting.degrees {
                return Ok(false);
            }
            for d in &splitting.degrees {
                if d.c.iter().any(|&g| !p.differential_of(g).is_zero()) {
                    return Ok(false);
                }
            }
            // phi commutes with d: the closed part of each dx is exact.
            let images: Vec<Element> = (0..p.arity())
                .map(|g| match phi.iter().find(|(n, _)| n == p.gens().name(g)) {
                    Some((_, e)) => e.clone(),
                    None => p.zero(),
                })
                .collect();
            for d in &splitting.degrees {
                for &g in &d.n {
                    let img = apply_morphism(p, p, &images, p.differential_of(g))?;
                    if !p.is_exact(&img, d.degree + 1)? {
                        return Ok(false);
                    }
                }
            }
            let search = search_ideal_witness(&fresh)?;
            Ok(search.witness.is_none() && search.undecided_degrees.is_empty())
        }
        Certificate::Witness {
            s,
            splitting,
            witness,
            robustness,
            massey,
        } => {
            let p = &splitting.presentation;
            if verdict.status != FormalityStatus::NotSFormal || !p.is_closed(&witness.element)? {
                return Ok(false);
            }
            if witness.element.terms().any(|(m, _)| !splitting.in_ideal(m)) {
                return Ok(false);
            }
            if p.is_exact(&witness.element, witness.degree)? {
                return Ok(false);
            }
            let again = witness_robustness(splitting, &witness.element)?;
            if again != *robustness || !again.robust {
                return Ok(false);
            }
            match massey {
                Some(m) => replay_massey(a, *s, m),
                None => Ok(again.coverage == Coverage::Complete),
            }
        }
        Certificate::Massey { s, result } => replay_massey(a, *s, result),
        Certificate::Undecided { .. } => Ok(verdict.status == FormalityStatus::Undecided),
    }
}

fn replay_massey(a: &FreeCDGA, s: u32, m: &MasseyResult) -> Result<bool, AnalysisError> {
    if !scan_windows_ok(&m.degrees, s) {
        return Ok(false);
    }
    let again = massey_product(a, &m.inputs)?;
    Ok(again.verdict == MasseyVerdict::Nonvanishing && again.class == m.class)
}
