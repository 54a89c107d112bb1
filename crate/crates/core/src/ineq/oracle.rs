//! Identity audits phrased as reports: the spectral functional calculus
//! against its contour-integral oracle, and the resolvent growth identity of
//! normal matrices.

use super::{IneqReport, Params, Tolerance};
use crate::error::Result;
use crate::herglotz::{apply_contour, apply_spectral, contour_error_bound, ContourSpec, HerglotzFunction};
use crate::norms::{hs_norm_direct, NormKind};
use crate::spectral::{resolvent_defect, SpectralDecomposition};
use crate::matcore::C64;

/// `‖f(A)_spectral - f(A)_contour‖₂` against `√n` times the a-priori
/// quadrature error per eigenvalue.
pub fn check_fcalc_oracle(
    f: &HerglotzFunction,
    decomp: &SpectralDecomposition,
    spec: &ContourSpec,
    tol: &Tolerance,
) -> Result<IneqReport> {
    let n = decomp.dim();
    let rho = decomp.spectral_radius();
    let spectral = apply_spectral(f, decomp, false)?;
    let contour = apply_contour(f, &decomp.reconstruct(), rho, spec)?;
    let lhs = hs_norm_direct(&(&spectral - &contour));
    let rhs = (n as f64).sqrt() * contour_error_bound(rho, spec);
    let mut params = Params::new();
    params.insert("dim".into(), n.into());
    params.insert("rho".into(), rho.into());
    params.insert("radius".into(), spec.radius.into());
    params.insert("nodes".into(), spec.nodes.into());
    params.insert("relative".into(), (lhs / hs_norm_direct(&spectral)).into());
    Ok(IneqReport::new("fcalc_oracle", Some(NormKind::HilbertSchmidt), lhs, rhs, tol, params))
}

/// Resolvent defect of a normal matrix against zero.
pub fn check_resolvent_growth(decomp: &SpectralDecomposition, samples: &[C64], tol: &Tolerance) -> Result<IneqReport> {
    let lhs = resolvent_defect(&decomp.reconstruct(), decomp, samples)?;
    let mut params = Params::new();
    params.insert("dim".into(), decomp.dim().into());
    params.insert("samples".into(), samples.len().into());
    Ok(IneqReport::new("resolvent_growth", None, lhs, 0.0, tol, params))
}
