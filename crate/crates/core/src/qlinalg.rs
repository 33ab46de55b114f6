//! Exact linear algebra over the rationals.
//!
//! Every cohomology, exactness and quotient computation in the crate reduces
//! to the routines here. All arithmetic is done with arbitrary-precision
//! rationals, and every basis handed back to callers is derived from a reduced
//! row-echelon form so that results are reproducible run to run.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("membership error: {0}")]
    Membership(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Size heuristic used to pick elimination pivots.
fn bit_cost(x: &Rational) -> u64 {
    x.numer().bits() + x.denom().bits()
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Sparse matrix with rational entries. Absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Self {
        assert_eq!(data.len(), rows, "row count");
        let mut m = Self::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length");
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        if value.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), value);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = zero_vec(self.rows);
        for (&(r, c), x) in &self.entries {
            if !v[c].is_zero() {
                out[r] += x * &v[c];
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension");
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, k), x) in &self.entries {
            for (&(_, c), y) in other.entries.range((k, 0)..(k + 1, 0)) {
                *acc.entry((r, c)).or_insert_with(Rational::zero) += x * y;
            }
        }
        for ((r, c), v) in acc {
            out.set(r, c, v);
        }
        out
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.cols, self.rows);
        for (&(r, c), x) in &self.entries {
            out.set(c, r, x.clone());
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        let mut col = zero_vec(self.rows);
        for (&(r, cc), x) in &self.entries {
            if cc == c {
                col[r] = x.clone();
            }
        }
        col
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![zero_vec(self.cols); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r][c] = x.clone();
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::new(self.cols, self.to_dense()).rank()
    }
}

/// Reduced row-echelon form of a list of row vectors.
///
/// Pivot columns are taken left to right; within a column the pivot row is
/// the candidate whose entry has the fewest numerator+denominator bits. The
/// resulting RREF does not depend on that choice, only the cost of getting
/// there does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize, mut rows: Vec<Vec<Rational>>) -> Self {
        for row in &rows {
            assert_eq!(row.len(), ncols, "row length");
        }
        let mut pivots = Vec::new();
        let mut cur = 0;
        for c in 0..ncols {
            if cur == rows.len() {
                break;
            }
            let best = (cur..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by_key(|&r| bit_cost(&rows[r][c]));
            let Some(p) = best else { continue };
            rows.swap(cur, p);
            let inv = rows[cur][c].recip();
            let support: Vec<usize> = (c..ncols).filter(|&j| !rows[cur][j].is_zero()).collect();
            for &j in &support {
                rows[cur][j] *= &inv;
            }
            let pivot_row = rows[cur].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == cur || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for &j in &support {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
            pivots.push(c);
            cur += 1;
        }
        rows.truncate(cur);
        Echelon { ncols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the echelon rows so that `v` vanishes on every pivot column.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols, "vector length");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    out[j] -= &factor * x;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon rows, if `v` lies in their span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Indices of columns carrying no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// A linear subspace of `Q^n` given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = zero_vec(ambient_dim);
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors; the stored basis is their RREF.
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let ech = Echelon::new(ambient_dim, vectors);
        Subspace {
            ambient_dim,
            basis: ech.rows,
        }
    }

    /// Wraps vectors already known to be linearly independent.
    pub(crate) fn from_independent(ambient_dim: usize, basis: Vec<Vec<Rational>>) -> Self {
        debug_assert_eq!(Echelon::new(ambient_dim, basis.clone()).rank(), basis.len());
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self.ambient_dim, self.basis.clone())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let ech = other.echelon();
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| ech.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, all)
    }
}

/// Basis of `{v : m v = 0}`, one vector per free column of the RREF of `m`.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let ech = Echelon::new(m.cols(), m.to_dense());
    let basis = ech
        .free_columns()
        .into_iter()
        .map(|f| {
            let mut v = zero_vec(m.cols());
            v[f] = Rational::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Subspace::from_independent(m.cols(), basis)
}

/// Basis (in RREF) of the column span of `m`.
pub fn image_basis(m: &RationalMatrix) -> Subspace {
    Subspace::span(m.rows(), m.transpose().to_dense())
}

/// Some `v` with `m v = b`, free variables set to zero; `None` if `b` is not in the image.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let mut rows = m.to_dense();
    for (row, rhs) in rows.iter_mut().zip(b) {
        row.push(rhs.clone());
    }
    let ech = Echelon::new(m.cols() + 1, rows);
    if ech.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut v = zero_vec(m.cols());
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        v[p] = row[m.cols()].clone();
    }
    Some(v)
}

/// The quotient `ambient / sub` with a fixed complement basis.
///
/// The complement is the RREF of the ambient basis reduced modulo `sub`, so it
/// depends only on the two subspaces and the coordinate order.
#[derive(Debug, Clone)]
pub struct Quotient {
    ambient: Echelon,
    sub: Echelon,
    complement: Echelon,
}

impl Quotient {
    pub fn new(ambient: &Subspace, sub: &Subspace) -> Result<Self, LinalgError> {
        if ambient.ambient_dim() != sub.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient.ambient_dim(),
                actual: sub.ambient_dim(),
            });
        }
        let amb = ambient.echelon();
        let sub_ech = sub.echelon();
        if let Some(i) = sub.basis().iter().position(|v| !amb.contains(v)) {
            return Err(LinalgError::Membership(format!(
                "basis vector {i} of the subspace is not in the ambient space"
            )));
        }
        let residuals = ambient.basis().iter().map(|v| sub_ech.reduce(v)).collect();
        let complement = Echelon::new(ambient.ambient_dim(), residuals);
        Ok(Quotient {
            ambient: amb,
            sub: sub_ech,
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.rank()
    }

    /// Complement vectors; each lies in the ambient space.
    pub fn complement_basis(&self) -> &[Vec<Rational>] {
        self.complement.rows()
    }

    pub fn contains_in_sub(&self, v: &[Rational]) -> bool {
        self.sub.contains(v)
    }

    pub fn coordinates(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.ambient.ncols() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient.ncols(),
                actual: v.len(),
            });
        }
        if !self.ambient.contains(v) {
            return Err(LinalgError::Membership("vector is not in the ambient space".into()));
        }
        let r = self.sub.reduce(v);
        Ok(self.complement.pivots.iter().map(|&p| r[p].clone()).collect())
    }

    /// Inverse of `coordinates` up to elements of `sub`.
    pub fn lift(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.ambient.ncols());
        for (c, row) in coords.iter().zip(self.complement.rows()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }
}

pub fn quotient_coordinates(ambient: &Subspace, sub: &Subspace, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    Quotient::new(ambient, sub)?.coordinates(v)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

/// Normalizes a nonzero vector so its first nonzero entry is positive.
pub fn sign_normalize(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}
