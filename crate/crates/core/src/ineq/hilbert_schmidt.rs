//! Hilbert-Schmidt bounds for Hermitian `A`, `B` with spectra in the disk.

use serde::{Deserialize, Serialize};

use super::{
    base_params, boundary_distance, common_size, require_real_spectrum, signed_name, with_sign, IneqReport, Sign,
    Tolerance,
};
use crate::error::Result;
use crate::herglotz::{apply_spectral, HerglotzFunction};
use crate::matcore::CMatrix;
use crate::norms::{hs_norm_direct, NormKind};
use crate::spectral::{abs_normal, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HsForm {
    /// `f(A)X + Xg(B) ± f(A)Xg(B)`
    Mixed,
    /// `f(A)Xg(B) ± g(B)Xf(A)`
    Symmetrized,
}

struct HermitianPair {
    n: usize,
    d_a: f64,
    d_b: f64,
    fa: CMatrix,
    gb: CMatrix,
    /// `I + |A|`
    pa: CMatrix,
    /// `I + |B|`
    pb: CMatrix,
}

fn prepare(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    g: &HerglotzFunction,
) -> Result<HermitianPair> {
    require_real_spectrum(a, "A")?;
    require_real_spectrum(b, "B")?;
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x)])?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let eye = CMatrix::identity(n);
    Ok(HermitianPair {
        n,
        d_a,
        d_b,
        fa: apply_spectral(f, a, false)?,
        gb: apply_spectral(g, b, false)?,
        pa: &eye + &abs_normal(a),
        pb: &eye + &abs_normal(b),
    })
}

/// `‖f(A)X + Xg(B) ± f(A)Xg(B)‖₂ <=
///   ‖(X + |A|X)/d_A + (X + X|B|)/d_B + (I+|A|)X(I+|B|)/(d_A d_B)‖₂`.
#[allow(clippy::too_many_arguments)]
pub fn check_hs_mixed(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    g: &HerglotzFunction,
    sign: Sign,
    tol: &Tolerance,
) -> Result<IneqReport> {
    let p = prepare(a, b, x, f, g)?;
    let fx = &p.fa * x;
    let lhs = sign.combine(&(&fx + &(x * &p.gb)), &(&fx * &p.gb));
    let pax = &p.pa * x;
    let xpb = x * &p.pb;
    let rhs = &(&pax.scale_real(1.0 / p.d_a) + &xpb.scale_real(1.0 / p.d_b))
        + &(&pax * &p.pb).scale_real(1.0 / (p.d_a * p.d_b));
    Ok(report(&signed_name("hs_fx_xg_fxg", sign), &lhs, &rhs, &p, sign, tol))
}

/// `‖f(A)Xg(B) ± g(B)Xf(A)‖₂ <= ‖(I+|A|)X(I+|B|) + (I+|B|)X(I+|A|)‖₂ / (d_A d_B)`.
#[allow(clippy::too_many_arguments)]
pub fn check_hs_symmetrized(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    g: &HerglotzFunction,
    sign: Sign,
    tol: &Tolerance,
) -> Result<IneqReport> {
    let p = prepare(a, b, x, f, g)?;
    let lhs = sign.combine(&(&(&p.fa * x) * &p.gb), &(&(&p.gb * x) * &p.fa));
    let rhs = (&(&(&p.pa * x) * &p.pb) + &(&(&p.pb * x) * &p.pa)).scale_real(1.0 / (p.d_a * p.d_b));
    Ok(report(&signed_name("hs_fxg_gxf", sign), &lhs, &rhs, &p, sign, tol))
}

/// Either form with `X = I`.
pub fn check_hs_identity(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    f: &HerglotzFunction,
    g: &HerglotzFunction,
    sign: Sign,
    form: HsForm,
    tol: &Tolerance,
) -> Result<IneqReport> {
    let eye = CMatrix::identity(a.dim());
    let (mut r, stem) = match form {
        HsForm::Mixed => (check_hs_mixed(a, b, &eye, f, g, sign, tol)?, "hs_f_g_fg"),
        HsForm::Symmetrized => (check_hs_symmetrized(a, b, &eye, f, g, sign, tol)?, "hs_fg_gf"),
    };
    r.name = signed_name(stem, sign);
    Ok(r)
}

fn report(name: &str, lhs: &CMatrix, rhs: &CMatrix, p: &HermitianPair, sign: Sign, tol: &Tolerance) -> IneqReport {
    IneqReport::new(
        name,
        Some(NormKind::HilbertSchmidt),
        hs_norm_direct(lhs),
        hs_norm_direct(rhs),
        tol,
        with_sign(base_params(p.n, p.d_a, p.d_b), sign),
    )
}
