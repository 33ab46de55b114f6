//! Decision procedures for s-formality, s-Lefschetz and Massey products,
//! and the cohomology of Donaldson-type submanifolds.

mod donaldson;
mod formality;
mod lefschetz;
mod massey;
mod param;

use thiserror::Error;

use crate::cdga::FreeCDGA;
use crate::error::AlgebraError;

pub use donaldson::{
    donaldson_quotient, omega_kernel, restriction_kernel, transport_formality, DonaldsonDegree, DonaldsonMode,
    DonaldsonReport, TransportStatement,
};
pub use formality::{
    canonical_splitting, formality, ideal_witness, s_formality, search_ideal_witness, verify_verdict,
    witness_robustness, Certificate, Coverage, FormalityReport, FormalityStatus, FormalityVerdict, Robustness,
    SplitDegree, Splitting, Witness, WitnessSearch,
};
pub use lefschetz::{parity_obstruction, s_lefschetz, LefschetzDegree, LefschetzReport};
pub use massey::{
    massey_higher, massey_obstruction_scan, massey_product, massey_triple, scan_windows_ok, MasseyResult, MasseyScan,
    MasseyVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("algebra is not minimal: {0}")]
    NotMinimal(String),
    #[error("no formal dimension declared")]
    MissingDimension,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("no symplectic class declared")]
    NoSymplecticClass,
    #[error("formal dimension {0} is odd")]
    OddDimension(u32),
    #[error("not {degree}-Lefschetz: multiplication by the symplectic class fails in degree {degree}")]
    NotSLefschetz { degree: u32 },
    #[error("degree {p} out of range {lo}..={hi}")]
    DegreeOutOfRange { p: u32, lo: u32, hi: u32 },
    #[error("Massey product not defined: {0}")]
    NotDefined(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<crate::qlinalg::LinalgError> for AnalysisError {
    fn from(e: crate::qlinalg::LinalgError) -> Self {
        AnalysisError::Algebra(e.into())
    }
}

pub(crate) fn require_minimal(a: &FreeCDGA) -> Result<(), AnalysisError> {
    let report = a.validate();
    if !report.is_valid() {
        let v = &report.violations[0];
        return Err(AnalysisError::Algebra(AlgebraError::Invalid(format!(
            "{} ({})",
            v.kind.label(),
            v.detail
        ))));
    }
    if let Some(v) = report.violations.iter().find(|v| v.kind.is_minimality()) {
        return Err(AnalysisError::NotMinimal(format!(
            "{}: {}",
            v.generator.as_deref().unwrap_or("omega"),
            v.detail
        )));
    }
    Ok(())
}

pub(crate) fn require_dim(a: &FreeCDGA) -> Result<u32, AnalysisError> {
    a.formal_dim().ok_or(AnalysisError::MissingDimension)
}

/// `n` with `formal_dim = 2n`.
pub(crate) fn half_dim(a: &FreeCDGA) -> Result<u32, AnalysisError> {
    let m = require_dim(a)?;
    if m % 2 == 1 {
        return Err(AnalysisError::OddDimension(m));
    }
    Ok(m / 2)
}
