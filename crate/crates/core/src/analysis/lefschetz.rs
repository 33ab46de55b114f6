use super::{half_dim, AnalysisError};
use crate::cdga::FreeCDGA;
use crate::error::AlgebraError;
use crate::grading::Element;
use crate::qlinalg::kernel_basis;

/// `[ω]^(n-i): H^i -> H^(2n-i)` for one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct LefschetzDegree {
    pub degree: u32,
    pub power: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
    /// Representatives of a basis of the kernel.
    pub kernel: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LefschetzReport {
    pub n: u32,
    pub s: u32,
    pub degrees: Vec<LefschetzDegree>,
}

impl LefschetzReport {
    /// Whether every checked map is an isomorphism.
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.iso)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.degrees.iter().find(|d| !d.iso).map(|d| d.degree)
    }

    /// Whether the checked range reaches `n - 1`, so the report covers hard Lefschetz.
    pub fn is_full(&self) -> bool {
        self.s + 1 >= self.n
    }
}

pub(crate) fn omega(a: &FreeCDGA) -> Result<&Element, AnalysisError> {
    let w = a.omega().ok_or(AnalysisError::NoSymplecticClass)?;
    if !a.is_closed(w)? {
        return Err(AlgebraError::NotClosed.into());
    }
    Ok(w)
}

pub(crate) fn lefschetz_degree(a: &FreeCDGA, n: u32, i: u32) -> Result<LefschetzDegree, AnalysisError> {
    let w = omega(a)?;
    let target = 2 * n - i;
    if !a.exactness_bound().is_decidable(target) {
        return Err(AlgebraError::Invalid(format!("H^{target} is beyond what this model determines")).into());
    }
    let power = n - i;
    let c = a.power(w, power)?;
    let m = a.cup_product_map(&c, i)?;
    let rank = m.rank();
    let source_dim = a.betti(i);
    let target_dim = a.betti(target);
    let kernel = kernel_basis(&m).basis().iter().map(|v| a.class_element(i, v)).collect();
    Ok(LefschetzDegree {
        degree: i,
        power,
        source_dim,
        target_dim,
        rank,
        iso: rank == source_dim && rank == target_dim,
        kernel,
    })
}

/// Checks that `[ω]^(n-i): H^i -> H^(2n-i)` is an isomorphism for
/// `0 <= i <= min(s, n - 1)`, where the formal dimension is `2n`.
pub fn s_lefschetz(a: &FreeCDGA, s: u32) -> Result<LefschetzReport, AnalysisError> {
    omega(a)?;
    let n = half_dim(a)?;
    let top = s.min(n.saturating_sub(1));
    let mut degrees = Vec::new();
    if n > 0 {
        for i in 0..=top {
            degrees.push(lefschetz_degree(a, n, i)?);
        }
    }
    Ok(LefschetzReport { n, s, degrees })
}

/// Odd degrees `2i + 1 <= n` with odd Betti number, as `(degree, betti)`.
/// Any such degree rules out hard Lefschetz through it.
pub fn parity_obstruction(a: &FreeCDGA) -> Result<Vec<(u32, usize)>, AnalysisError> {
    let n = half_dim(a)?;
    Ok((1..=n)
        .step_by(2)
        .map(|k| (k, a.betti(k)))
        .filter(|&(_, b)| b % 2 == 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{builtin, fls, iwasawa, kodaira_thurston, s3_times_s7};

    #[test]
    fn kt_is_zero_but_not_one_lefschetz() {
        let kt = kodaira_thurston();
        let r = s_lefschetz(&kt, 1).unwrap();
        assert_eq!(r.first_failure(), Some(1));
        assert!(r.degrees[0].iso);
        let d1 = &r.degrees[1];
        assert_eq!((d1.source_dim, d1.target_dim, d1.rank), (3, 3, 2));
        assert_eq!(d1.kernel.len(), 1);
        assert_eq!(kt.display(&d1.kernel[0]), "a2");
        assert!(s_lefschetz(&kt, 0).unwrap().holds());
    }

    #[test]
    fn other_examples() {
        assert!(!s_lefschetz(&iwasawa(), 1).unwrap().holds());
        assert!(s_lefschetz(&iwasawa(), 0).unwrap().holds());
        let f = fls();
        assert!(s_lefschetz(&f, 1).unwrap().holds());
        let r = s_lefschetz(&f, 2).unwrap();
        assert_eq!(r.first_failure(), Some(2));
        assert!(r.is_full());
        assert!(s_lefschetz(&builtin("torus4").unwrap(), 5).unwrap().holds());
        assert!(s_lefschetz(&builtin("cp2").unwrap(), 1).unwrap().holds());
    }

    #[test]
    fn parity() {
        assert_eq!(parity_obstruction(&kodaira_thurston()).unwrap(), [(1, 3)]);
        let s = s3_times_s7();
        assert_eq!(parity_obstruction(&s).unwrap(), [(3, 1)]);
        assert!(parity_obstruction(&fls()).unwrap().is_empty());
        assert!(matches!(
            parity_obstruction(&builtin("heisenberg3").unwrap()),
            Err(AnalysisError::OddDimension(3))
        ));
        assert!(matches!(s_lefschetz(&s, 1), Err(AnalysisError::NoSymplecticClass)));
    }
}
