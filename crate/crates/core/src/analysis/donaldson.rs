use super::formality::{FormalityStatus, FormalityVerdict};
use super::lefschetz::{lefschetz_degree, omega};
use super::{half_dim, AnalysisError};
use crate::cdga::FreeCDGA;
use crate::grading::Element;
use crate::qlinalg::{kernel_basis, Quotient, Subspace};

/// Whether the Lefschetz hypothesis is enforced or only reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DonaldsonMode {
    RequireLefschetz,
    ReportOnly,
}

/// `H^p(Z) ≅ H^p(M) / ker([ω]: H^p(M) -> H^(p+2)(M))` for `p = 2(n-1) - i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DonaldsonDegree {
    pub i: u32,
    pub p: u32,
    pub betti: usize,
    pub kernel: Vec<Element>,
    /// Representatives of classes spanning a complement of the kernel.
    pub quotient_basis: Vec<Element>,
    /// `b_(p+2)(M)`, which the quotient dimension must match.
    pub expected_dim: usize,
    /// Whether `[ω]^(n-i): H^i -> H^(2n-i)` is an isomorphism.
    pub lefschetz_holds: bool,
}

impl DonaldsonDegree {
    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DonaldsonReport {
    pub n: u32,
    pub s: u32,
    /// `(i, b_i(M))` for `i <= n - 2`, where `H^i(Z) ≅ H^i(M)`.
    pub low_degrees: Vec<(u32, usize)>,
    pub degrees: Vec<DonaldsonDegree>,
    /// `b_(n-1)(Z) >= b_(n-1)(M)`.
    pub middle_lower_bound: usize,
}

/// Kernel of `[x] -> [ω x]` on `H^p`, as representatives.
pub fn omega_kernel(a: &FreeCDGA, p: u32) -> Result<Vec<Element>, AnalysisError> {
    let w = omega(a)?;
    let m = a.cup_product_map(w, p)?;
    Ok(kernel_basis(&m).basis().iter().map(|v| a.class_element(p, v)).collect())
}

/// Kernel of restriction `H^p(M) -> H^p(Z)` for `n <= p <= 2n - 2`.
pub fn restriction_kernel(a: &FreeCDGA, p: u32) -> Result<Vec<Element>, AnalysisError> {
    let n = half_dim(a)?;
    let (lo, hi) = (n, (2 * n).saturating_sub(2));
    if n < 2 || p < lo || p > hi {
        return Err(AnalysisError::DegreeOutOfRange { p, lo, hi });
    }
    omega_kernel(a, p)
}

/// Cohomology of a Donaldson-type submanifold `Z` in degrees
/// `p = 2(n-1) - i`, `0 <= i <= min(s, n - 2)`.
pub fn donaldson_quotient(a: &FreeCDGA, s: u32, mode: DonaldsonMode) -> Result<DonaldsonReport, AnalysisError> {
    omega(a)?;
    let n = half_dim(a)?;
    if n < 2 {
        return Err(AnalysisError::DegreeOutOfRange { p: 0, lo: 2, hi: 2 });
    }
    let mut degrees = Vec::new();
    for i in 0..=s.min(n - 2) {
        let lefschetz_holds = lefschetz_degree(a, n, i)?.iso;
        if mode == DonaldsonMode::RequireLefschetz && !lefschetz_holds {
            return Err(AnalysisError::NotSLefschetz { degree: i });
        }
        let p = 2 * (n - 1) - i;
        let w = omega(a)?;
        let m = a.cup_product_map(w, p)?;
        let ker = kernel_basis(&m);
        let betti = a.betti(p);
        let quotient = Quotient::new(&Subspace::full(betti), &ker)?;
        degrees.push(DonaldsonDegree {
            i,
            p,
            betti,
            kernel: ker.basis().iter().map(|v| a.class_element(p, v)).collect(),
            quotient_basis: quotient
                .complement_basis()
                .iter()
                .map(|v| a.class_element(p, v))
                .collect(),
            expected_dim: a.betti(p + 2),
            lefschetz_holds,
        });
    }
    Ok(DonaldsonReport {
        n,
        s,
        low_degrees: (0..=n - 2).map(|i| (i, a.betti(i))).collect(),
        degrees,
        middle_lower_bound: a.betti(n - 1),
    })
}

/// What formality of `M` says about a Donaldson-type submanifold of dimension `2n - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransportStatement {
    /// `Z` is formal.
    Formal,
    /// `Z` is s-formal.
    SFormal(u32),
    NoConclusion(String),
}

pub fn transport_formality(verdict: &FormalityVerdict, n: u32) -> TransportStatement {
    if n < 2 || verdict.s > n - 2 {
        return TransportStatement::NoConclusion(format!("needs s <= n - 2 = {}", n as i64 - 2));
    }
    match verdict.status {
        FormalityStatus::SFormal if verdict.s == n - 2 => TransportStatement::Formal,
        FormalityStatus::SFormal => TransportStatement::SFormal(verdict.s),
        status => TransportStatement::NoConclusion(format!("M is {status} at s = {}", verdict.s)),
    }
}
