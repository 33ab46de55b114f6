//! Free graded-commutative algebras: generators, monomials and elements.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::qlinalg::{fmt_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Ordered generators of a free graded-commutative algebra.
///
/// Declaration order is the well-ordering used by minimality checks, so it
/// must be non-decreasing in degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl GeneratorSet {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Result<Self, AlgebraError> {
        let mut out = GeneratorSet {
            gens: Vec::new(),
            index: HashMap::new(),
        };
        for (name, degree) in gens {
            let name = name.into();
            if degree == 0 {
                return Err(AlgebraError::BadDegree { name, degree });
            }
            if out.index.contains_key(&name) {
                return Err(AlgebraError::DuplicateGenerator(name));
            }
            if out.gens.last().is_some_and(|g| g.degree > degree) {
                return Err(AlgebraError::DegreeOrder { name, degree });
            }
            out.index.insert(name.clone(), out.gens.len());
            out.gens.push(Generator { name, degree });
        }
        Ok(out)
    }

    pub fn empty() -> Self {
        GeneratorSet {
            gens: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.gens[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].degree % 2 == 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// Indices of generators of degree exactly `k`.
    pub fn in_degree(&self, k: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degree(i) == k).collect()
    }
}

/// A monomial as a dense exponent vector.
///
/// Monomials order descending-lexicographically on exponents, so `a1*a2`
/// sorts before `a1*a3` and the unit sorts last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn generator(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree(&self, gens: &GeneratorSet) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| e * gens.degree(i)).sum()
    }

    /// Generator indices in canonical order, repeated by exponent.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }

    /// Removes one copy of generator `i`, returning the sign of moving that
    /// factor to the front first.
    pub fn remove_front(&self, i: usize, gens: &GeneratorSet) -> Option<(bool, Monomial)> {
        if self.0[i] == 0 {
            return None;
        }
        let mut rest = self.0.clone();
        rest[i] -= 1;
        let negative = gens.is_odd(i) && (0..i).filter(|&j| gens.is_odd(j)).map(|j| rest[j]).sum::<u32>() % 2 == 1;
        Some((negative, Monomial(rest)))
    }

    pub fn display(&self, gens: &GeneratorSet) -> String {
        if self.is_unit() {
            return "1".into();
        }
        let names: Vec<&str> = self.factors().into_iter().map(|i| gens.name(i)).collect();
        names.join("*")
    }
}

/// Product of two monomials with its Koszul sign; `None` when an odd
/// generator would appear twice.
pub fn monomial_product(a: &Monomial, b: &Monomial, gens: &GeneratorSet) -> Option<(bool, Monomial)> {
    let n = a.arity();
    let mut exps = Vec::with_capacity(n);
    for i in 0..n {
        let e = a.0[i] + b.0[i];
        if e > 1 && gens.is_odd(i) {
            return None;
        }
        exps.push(e);
    }
    // Each odd factor of `b` moves left past the odd factors of `a` with a larger index.
    let mut odd_a_after = 0u32;
    let mut swaps = 0u32;
    for i in (0..n).rev() {
        if !gens.is_odd(i) {
            continue;
        }
        if b.0[i] == 1 {
            swaps += odd_a_after;
        }
        odd_a_after += a.0[i];
    }
    Some((swaps % 2 == 1, Monomial(exps)))
}

/// All monomials of total degree `k`, in monomial order.
pub fn degree_basis(gens: &GeneratorSet, k: u32) -> Vec<Monomial> {
    fn go(gens: &GeneratorSet, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if left == 0 {
            let mut e = cur.clone();
            e.resize(gens.len(), 0);
            out.push(Monomial(e));
            return;
        }
        if i == gens.len() {
            return;
        }
        let d = gens.degree(i);
        let max = if gens.is_odd(i) { 1 } else { left / d };
        for e in (0..=max.min(left / d)).rev() {
            cur.push(e);
            go(gens, i + 1, left - e * d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, 0, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sign of stably sorting `factors` by key, each adjacent transposition of
/// degrees `p` and `q` contributing `(-1)^(pq)`.
pub fn koszul_sign(factors: &[(usize, u32)]) -> i8 {
    let mut v = factors.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1].0 > v[j].0 {
            if v[j - 1].1 % 2 == 1 && v[j].1 % 2 == 1 {
                sign = -sign;
            }
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

/// A finite rational linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero(arity: usize) -> Self {
        Element {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::term(Monomial::unit(arity), c)
    }

    pub fn generator(arity: usize, i: usize) -> Self {
        Self::term(Monomial::generator(arity, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = Element::zero(m.arity());
        e.add_term(m, c);
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.arity(), self.arity, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(self.arity);
        }
        Element {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self, gens: &GeneratorSet) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree(gens));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, gens: &GeneratorSet) -> bool {
        self.is_zero() || self.degree(gens).is_some()
    }

    /// Whether every term is a product of at least two generators.
    pub fn is_decomposable(&self) -> bool {
        self.terms.keys().all(|m| m.word_length() >= 2)
    }

    /// Part of the element made of single generators.
    pub fn linear_part(&self) -> Element {
        let mut out = Element::zero(self.arity);
        for (m, c) in &self.terms {
            if m.word_length() == 1 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Indices of generators occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) > 0))
            .collect()
    }

    /// The same element in an algebra with extra generators appended.
    pub fn extend_arity(&self, arity: usize) -> Element {
        assert!(arity >= self.arity, "cannot shrink arity");
        let mut out = Element::zero(arity);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(arity, 0);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Text form using `*` for products, e.g. `-a1*a2 + 1/2*b3`.
    pub fn display(&self, gens: &GeneratorSet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_unit() {
                out.push_str(&fmt_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_rational(&abs));
                    out.push('*');
                }
                out.push_str(&m.display(gens));
            }
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.arity, rhs.arity, "element arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.arity, rhs.arity, "element arity");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// Graded-commutative product.
pub fn multiply(x: &Element, y: &Element, gens: &GeneratorSet) -> Result<Element, AlgebraError> {
    if x.arity != gens.len() || y.arity != gens.len() {
        return Err(AlgebraError::GeneratorMismatch);
    }
    let mut out = Element::zero(gens.len());
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if let Some((negative, m)) = monomial_product(a, b, gens) {
                let c = ca * cb;
                out.add_term(m, if negative { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// Product of a list of elements, left to right.
pub fn product(factors: &[&Element], gens: &GeneratorSet) -> Result<Element, AlgebraError> {
    let mut out = Element::one(gens.len());
    for f in factors {
        out = multiply(&out, f, gens)?;
    }
    Ok(out)
}

pub fn power(x: &Element, k: u32, gens: &GeneratorSet) -> Result<Element, AlgebraError> {
    let mut out = Element::one(gens.len());
    for _ in 0..k {
        out = multiply(&out, x, gens)?;
    }
    Ok(out)
}
