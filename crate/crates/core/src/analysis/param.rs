//! Algebra elements whose coefficients are polynomials in free parameters.
//! Used to sweep over every defining system of a Massey product at once.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cdga::FreeCDGA;
use crate::error::AlgebraError;
use crate::grading::Element;
use crate::qlinalg::Rational;

/// A monomial in the parameters: sorted `(index, exponent)` pairs.
pub(crate) type PMono = Vec<(usize, u32)>;

pub(crate) fn pmono_degree(m: &PMono) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

fn pmono_mul(a: &PMono, b: &PMono) -> PMono {
    let mut out: BTreeMap<usize, u32> = a.iter().copied().collect();
    for &(p, e) in b {
        *out.entry(p).or_insert(0) += e;
    }
    out.into_iter().collect()
}

/// A polynomial in the parameters with rational coefficients.
type Poly = BTreeMap<PMono, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let c = ca * cb;
            let e = out.entry(pmono_mul(ma, mb)).or_insert_with(Rational::zero);
            *e += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `constant + Σ coeff * param`.
#[derive(Debug, Clone)]
pub(crate) struct Affine {
    pub constant: Rational,
    pub linear: Vec<(usize, Rational)>,
}

impl Affine {
    fn as_poly(&self) -> Poly {
        let mut p = Poly::new();
        if !self.constant.is_zero() {
            p.insert(Vec::new(), self.constant.clone());
        }
        for (i, c) in &self.linear {
            if !c.is_zero() {
                *p.entry(vec![(*i, 1)]).or_insert_with(Rational::zero) += c;
            }
        }
        p.retain(|_, c| !c.is_zero());
        p
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PElem {
    arity: usize,
    terms: BTreeMap<PMono, Element>,
}

impl PElem {
    pub fn zero(arity: usize) -> Self {
        PElem {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(e: Element) -> Self {
        let mut p = PElem::zero(e.arity());
        p.push(Vec::new(), e);
        p
    }

    pub fn param(index: usize, e: Element) -> Self {
        let mut p = PElem::zero(e.arity());
        p.push(vec![(index, 1)], e);
        p
    }

    fn push(&mut self, m: PMono, e: Element) {
        if e.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(|| Element::zero(e.arity()));
        *slot = &*slot + &e;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Element)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Element {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| Element::zero(self.arity))
    }

    pub fn add(&self, other: &PElem) -> PElem {
        let mut out = self.clone();
        for (m, e) in &other.terms {
            out.push(m.clone(), e.clone());
        }
        out
    }

    pub fn negated_if(&self, negative: bool) -> PElem {
        if !negative {
            return self.clone();
        }
        let minus = -Rational::one();
        PElem {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, e)| (m.clone(), e.scaled(&minus))).collect(),
        }
    }

    pub fn mul(&self, other: &PElem, alg: &FreeCDGA) -> Result<PElem, AlgebraError> {
        let mut out = PElem::zero(self.arity);
        for (ma, ea) in &self.terms {
            for (mb, eb) in &other.terms {
                out.push(pmono_mul(ma, mb), alg.multiply(ea, eb)?);
            }
        }
        Ok(out)
    }

    /// Replaces each parameter in `sub` by an affine expression.
    pub fn substitute(&self, sub: &BTreeMap<usize, Affine>) -> PElem {
        let mut out = PElem::zero(self.arity);
        for (m, e) in &self.terms {
            let mut poly: Poly = [(Vec::new(), Rational::one())].into_iter().collect();
            for &(p, exp) in m {
                let factor = match sub.get(&p) {
                    Some(a) => a.as_poly(),
                    None => [(vec![(p, 1)], Rational::one())].into_iter().collect(),
                };
                for _ in 0..exp {
                    poly = poly_mul(&poly, &factor);
                }
            }
            for (pm, c) in poly {
                out.push(pm, e.scaled(&c));
            }
        }
        out
    }
}
