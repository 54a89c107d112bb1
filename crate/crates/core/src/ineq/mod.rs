//! One checker per norm inequality. Each evaluates both sides exactly as the
//! inequality is stated and returns an [`IneqReport`] per requested norm.
//!
//! Checkers consume the functional calculus from [`crate::herglotz`] and take
//! boundary distances from the exact spectra carried by
//! [`SpectralDecomposition`], never from a fresh eigensolve.

mod conjugate;
mod hilbert_schmidt;
mod oracle;
mod positive;
mod prior;
mod two_term;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herglotz::dist_boundary_spectrum;
use crate::matcore::CMatrix;
use crate::norms::{norm_from_singular_values, NormKind};
use crate::spectral::SpectralDecomposition;

pub use conjugate::{
    check_conj_bound, check_conj_mirror, check_numrange_variant, check_phased, check_real_part_bound,
    RealPartForm,
};
pub use hilbert_schmidt::{check_hs_identity, check_hs_mixed, check_hs_symmetrized, HsForm};
pub use oracle::{check_fcalc_oracle, check_resolvent_growth};
pub use positive::{check_pos_multiplier, check_re_diff, MultiplierVariant, ReDiffVariant};
pub use prior::{check_prior, PriorForm};
pub use two_term::{
    check_block_conj, check_block_two_term, check_norm_two_term, check_sv_two_term, scaled_sum_minimum, BlockConjForm,
    BlockForm,
};

/// Instance metadata attached to a report.
pub type Params = BTreeMap<String, serde_json::Value>;

/// `holds ⇔ slack >= -(atol + rtol · max(|lhs|, |rhs|))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { atol: 1e-10, rtol: 1e-9 }
    }
}

impl Tolerance {
    pub fn margin(&self, lhs: f64, rhs: f64) -> f64 {
        self.atol + self.rtol * lhs.abs().max(rhs.abs())
    }

    pub fn holds(&self, lhs: f64, rhs: f64) -> bool {
        rhs - lhs >= -self.margin(lhs, rhs)
    }
}

/// The `±` of a two-sign statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn combine(self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        match self {
            Sign::Plus => a + b,
            Sign::Minus => a - b,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// One evaluation of one inequality in one norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IneqReport {
    pub name: String,
    /// `None` for statements about individual singular values or for identity
    /// audits that aggregate several norms.
    pub norm: Option<NormKind>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub params: Params,
}

impl IneqReport {
    pub fn new(name: impl Into<String>, norm: Option<NormKind>, lhs: f64, rhs: f64, tol: &Tolerance, params: Params) -> Self {
        IneqReport { name: name.into(), norm, lhs, rhs, slack: rhs - lhs, holds: tol.holds(lhs, rhs), params }
    }

    /// `lhs` and `rhs` agree to the bit (used by replay).
    pub fn same_values(&self, other: &IneqReport) -> bool {
        self.lhs.to_bits() == other.lhs.to_bits() && self.rhs.to_bits() == other.rhs.to_bits()
    }
}

/// Reports for a statement `|||L||| <= rhs(kind)` across `kinds`, given the
/// singular values of `L`.
pub(crate) fn grid_reports(
    name: &str,
    kinds: &[NormKind],
    lhs_sv: &[f64],
    rhs: impl Fn(NormKind) -> f64,
    tol: &Tolerance,
    params: &Params,
) -> Vec<IneqReport> {
    kinds
        .iter()
        .map(|&kind| {
            IneqReport::new(name, Some(kind), norm_from_singular_values(lhs_sv, kind), rhs(kind), tol, params.clone())
        })
        .collect()
}

/// Distance from the unit circle to the spectrum, as a hypothesis check.
pub(crate) fn boundary_distance(d: &SpectralDecomposition, label: &str) -> Result<f64> {
    dist_boundary_spectrum(d).map_err(|_| {
        Error::Hypothesis(format!("spectrum of {label} is not inside the open unit disk"))
    })
}

pub(crate) fn require_real_spectrum(d: &SpectralDecomposition, label: &str) -> Result<()> {
    let scale = 1.0 + d.spectral_radius();
    if d.is_real(1e-12 * scale) {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{label} must be Hermitian (real spectrum)")))
    }
}

/// All matrices square of one common size.
pub(crate) fn common_size(ms: &[(&str, &CMatrix)]) -> Result<usize> {
    let n = ms[0].1.rows();
    for (label, m) in ms {
        if m.shape() != (n, n) {
            return Err(Error::Dimension(format!("{label} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
        }
    }
    Ok(n)
}

pub(crate) fn base_params(n: usize, d_a: f64, d_b: f64) -> Params {
    let mut p = Params::new();
    p.insert("dim".into(), n.into());
    p.insert("d_a".into(), d_a.into());
    p.insert("d_b".into(), d_b.into());
    p
}

pub(crate) fn with_sign(mut p: Params, sign: Sign) -> Params {
    p.insert("sign".into(), sign.label().into());
    p
}

pub(crate) fn signed_name(stem: &str, sign: Sign) -> String {
    format!("{stem}_{}", sign.label())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_policy() {
        let t = Tolerance::default();
        assert!(t.holds(1.0, 1.0));
        assert!(t.holds(1.0 + 5e-10, 1.0));
        assert!(!t.holds(1.0 + 5e-9, 1.0));
        assert!(t.holds(5e-11, 0.0));
        assert!(!t.holds(2e-10, 0.0));
    }

    #[test]
    fn report_json_shape() {
        let mut p = Params::new();
        p.insert("dim".into(), 2.into());
        let r = IneqReport::new("demo", Some(NormKind::Operator), 1.0, 2.0, &Tolerance::default(), p);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["norm"]["tag"], "operator");
        assert_eq!(v["slack"], 1.0);
        assert_eq!(v["holds"], true);
        assert_eq!(v["params"]["dim"], 2);
        let back: IneqReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
