use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::AlgebraError;
use crate::qlinalg::{image_basis, is_zero_vec, kernel_basis, zero_vec, Quotient, Rational, RationalMatrix, Subspace};

/// A non-negatively graded cochain algebra with finite-dimensional slices,
/// accessed through coordinates in a fixed basis of each degree.
pub trait CochainAlgebra: Sync {
    fn slice_dim(&self, k: u32) -> usize;

    /// Matrix of `d` from degree `k` to degree `k + 1`.
    fn differential(&self, k: u32) -> Arc<RationalMatrix>;

    /// Product of a degree-`p` vector and a degree-`q` vector.
    fn product_vec(&self, p: u32, x: &[Rational], q: u32, y: &[Rational]) -> Vec<Rational>;

    /// Coordinates of the unit in degree 0.
    fn unit_vec(&self) -> Vec<Rational>;

    fn cohomology(&self, k: u32) -> Arc<CohomologySlice>;

    /// Human-readable form of a degree-`k` vector.
    fn describe(&self, k: u32, v: &[Rational]) -> String;
}

/// `H^k` as cycles modulo boundaries, with a fixed basis of representatives.
#[derive(Debug, Clone)]
pub struct CohomologySlice {
    degree: u32,
    cycles: Subspace,
    boundaries: Subspace,
    quotient: Quotient,
}

impl CohomologySlice {
    /// `d_in`: degree `k-1 -> k` (or `None` at `k = 0`); `d_out`: `k -> k+1`.
    pub fn compute(degree: u32, d_in: Option<&RationalMatrix>, d_out: &RationalMatrix) -> Self {
        let cycles = kernel_basis(d_out);
        let boundaries = match d_in {
            Some(m) => image_basis(m),
            None => Subspace::zero(d_out.cols()),
        };
        let quotient = Quotient::new(&cycles, &boundaries).expect("boundaries are cycles when d^2 = 0");
        CohomologySlice {
            degree,
            cycles,
            boundaries,
            quotient,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cycles.ambient_dim()
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Cycle vectors whose classes form the chosen basis of `H^k`.
    pub fn representatives(&self) -> &[Vec<Rational>] {
        self.quotient.complement_basis()
    }

    pub fn is_cycle(&self, v: &[Rational]) -> bool {
        self.cycles.contains(v)
    }

    pub fn is_exact(&self, v: &[Rational]) -> bool {
        self.quotient.contains_in_sub(v)
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&self, v: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        if !self.is_cycle(v) {
            return Err(AlgebraError::NotClosed);
        }
        Ok(self.quotient.coordinates(v)?)
    }

    /// A cycle representing the class with the given coordinates.
    pub fn lift(&self, coords: &[Rational]) -> Vec<Rational> {
        self.quotient.lift(coords)
    }
}

/// A finite-dimensional CDGA given by explicit bases and structure constants.
///
/// Used for cohomology algebras with zero differential and other small
/// inputs to the minimal-model construction.
#[derive(Debug, Clone)]
pub struct FiniteCdga {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    d: Vec<RationalMatrix>,
    mult: HashMap<(u32, usize, u32, usize), Vec<Rational>>,
    unit: Vec<Rational>,
    slices: Vec<Arc<CohomologySlice>>,
}

impl FiniteCdga {
    /// `d[k]` maps degree `k` to `k + 1`; `mult[(p, i, q, j)]` is the product of
    /// basis vector `i` of degree `p` with basis vector `j` of degree `q`.
    /// Missing products are zero. The unit is basis vector 0 of degree 0
    /// unless replaced with [`FiniteCdga::with_unit`].
    pub fn new(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        d: Vec<RationalMatrix>,
        mult: HashMap<(u32, usize, u32, usize), Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        if dims.first().is_none_or(|&n| n == 0) {
            return Err(AlgebraError::Invalid("degree 0 must be nonzero".into()));
        }
        if labels.len() != dims.len() || labels.iter().zip(&dims).any(|(l, &n)| l.len() != n) {
            return Err(AlgebraError::Invalid("one label per basis vector required".into()));
        }
        let top = dims.len() as u32 - 1;
        let mut dm = Vec::new();
        for k in 0..=top {
            let rows = dims.get(k as usize + 1).copied().unwrap_or(0);
            let m = d
                .get(k as usize)
                .cloned()
                .unwrap_or_else(|| RationalMatrix::zeros(rows, dims[k as usize]));
            if m.rows() != rows || m.cols() != dims[k as usize] {
                return Err(AlgebraError::Invalid(format!(
                    "differential in degree {k} has the wrong shape"
                )));
            }
            dm.push(m);
        }
        for (&(p, i, q, j), v) in &mult {
            let target = (p + q) as usize;
            let ok = (p as usize) < dims.len()
                && (q as usize) < dims.len()
                && i < dims[p as usize]
                && j < dims[q as usize]
                && v.len() == dims.get(target).copied().unwrap_or(0);
            if !ok {
                return Err(AlgebraError::Invalid(format!("bad product entry ({p},{i})*({q},{j})")));
            }
        }
        let mut unit = zero_vec(dims[0]);
        unit[0] = crate::qlinalg::q(1);
        let mut alg = FiniteCdga {
            unit,
            dims,
            labels,
            d: dm,
            mult,
            slices: Vec::new(),
        };
        for k in 0..=top {
            let d_in = (k > 0).then(|| &alg.d[k as usize - 1]);
            let s = CohomologySlice::compute(k, d_in, &alg.d[k as usize]);
            alg.slices.push(Arc::new(s));
        }
        Ok(alg)
    }

    /// `Q[h]/(h^height)` with `|h| = degree`, zero differential.
    pub fn truncated_polynomial(degree: u32, height: u32) -> Result<Self, AlgebraError> {
        if degree == 0 || degree % 2 == 1 && height > 2 {
            return Err(AlgebraError::Invalid(
                "h must have positive degree, and h^2 = 0 when h is odd".into(),
            ));
        }
        let top = degree * (height - 1);
        let mut dims = vec![0; top as usize + 1];
        let mut labels = vec![Vec::new(); top as usize + 1];
        for e in 0..height {
            dims[(e * degree) as usize] = 1;
            labels[(e * degree) as usize].push(match e {
                0 => "1".to_string(),
                1 => "h".to_string(),
                _ => format!("h^{e}"),
            });
        }
        let mut mult = HashMap::new();
        for a in 0..height {
            for b in 0..height {
                if a + b < height {
                    mult.insert((a * degree, 0, b * degree, 0), vec![crate::qlinalg::q(1)]);
                }
            }
        }
        FiniteCdga::new(dims, labels, Vec::new(), mult)
    }

    pub fn with_unit(mut self, unit: Vec<Rational>) -> Self {
        assert_eq!(unit.len(), self.dims[0], "unit lives in degree 0");
        self.unit = unit;
        self
    }

    pub fn top_degree(&self) -> u32 {
        self.dims.len() as u32 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self, k: u32) -> &[String] {
        &self.labels[k as usize]
    }

    pub fn basis_product(&self, p: u32, i: usize, q: u32, j: usize) -> Vec<Rational> {
        self.mult
            .get(&(p, i, q, j))
            .cloned()
            .unwrap_or_else(|| zero_vec(self.slice_dim(p + q)))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(|m| m.nnz() == 0)
    }
}

impl CochainAlgebra for FiniteCdga {
    fn slice_dim(&self, k: u32) -> usize {
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    fn differential(&self, k: u32) -> Arc<RationalMatrix> {
        match self.d.get(k as usize) {
            Some(m) => Arc::new(m.clone()),
            None => Arc::new(RationalMatrix::zeros(self.slice_dim(k + 1), 0)),
        }
    }

    fn product_vec(&self, p: u32, x: &[Rational], q: u32, y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.slice_dim(p + q));
        if out.is_empty() {
            return out;
        }
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if let Some(v) = self.mult.get(&(p, i, q, j)) {
                    let c = a * b;
                    for (o, t) in out.iter_mut().zip(v) {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    fn unit_vec(&self) -> Vec<Rational> {
        self.unit.clone()
    }

    fn cohomology(&self, k: u32) -> Arc<CohomologySlice> {
        match self.slices.get(k as usize) {
            Some(s) => s.clone(),
            None => Arc::new(CohomologySlice::compute(k, None, &RationalMatrix::zeros(0, 0))),
        }
    }

    fn describe(&self, k: u32, v: &[Rational]) -> String {
        if is_zero_vec(v) {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .zip(&self.labels[k as usize])
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{}*{}", crate::qlinalg::fmt_rational(c), l))
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_cohomology() {
        let a = FiniteCdga::truncated_polynomial(2, 3).unwrap();
        assert_eq!(a.top_degree(), 4);
        let betti: Vec<usize> = (0..=5).map(|k| a.cohomology(k).dim()).collect();
        assert_eq!(betti, [1, 0, 1, 0, 1, 0]);
        let h = vec![crate::qlinalg::q(1)];
        assert_eq!(a.product_vec(2, &h, 2, &h), h);
        assert!(a.product_vec(4, &h, 2, &h).is_empty());
    }
}
