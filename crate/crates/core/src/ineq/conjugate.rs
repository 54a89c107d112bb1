//! Bounds pairing `f` with its conjugate function `f̄` (`f̄(B) = f(B)*` for
//! normal `B`).

use serde::{Deserialize, Serialize};

use super::{
    base_params, boundary_distance, common_size, grid_reports, signed_name, with_sign, IneqReport, Params, Sign,
    Tolerance,
};
use crate::error::{Error, Result};
use crate::herglotz::{apply_spectral, numerical_range_distance, HerglotzFunction};
use crate::matcore::{CMatrix, C64};
use crate::norms::{norm_from_singular_values, NormKind};
use crate::spectral::{abs_matrix, singular_values, SpectralDecomposition};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Shared body of the conjugate bounds: `|||left ± right|||` against the
/// sign's constant times `|||inner|||`.
#[allow(clippy::too_many_arguments)]
fn conj_reports(
    name: String,
    left: &CMatrix,
    right: &CMatrix,
    sign: Sign,
    inner: CMatrix,
    d_a: f64,
    d_b: f64,
    kinds: &[NormKind],
    tol: &Tolerance,
    params: Params,
) -> Vec<IneqReport> {
    let c = match sign {
        Sign::Plus => 2.0 / (d_a * d_b),
        Sign::Minus => 2.0 * SQRT_2 / (d_a * d_b),
    };
    let lhs = singular_values(&sign.combine(left, right));
    let inner_sv = singular_values(&inner);
    grid_reports(&name, kinds, &lhs, |k| c * norm_from_singular_values(&inner_sv, k), tol, &params)
}

/// `X - AXB*` for plus, `|AX| + |XB*|` for minus.
fn forward_inner(am: &CMatrix, bm: &CMatrix, x: &CMatrix, sign: Sign) -> Result<CMatrix> {
    Ok(match sign {
        Sign::Plus => x - &(&(am * x) * &bm.adjoint()),
        Sign::Minus => &abs_matrix(&(am * x))? + &abs_matrix(&(x * &bm.adjoint()))?,
    })
}

/// `|||f(A)X ± Xf̄(B)|||` against `2/(d_A d_B) |||X - AXB*|||` (plus) or
/// `2√2/(d_A d_B) |||(|AX| + |XB*|)|||` (minus).
#[allow(clippy::too_many_arguments)]
pub fn check_conj_bound(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    sign: Sign,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x)])?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let left = &apply_spectral(f, a, false)? * x;
    let right = x * &apply_spectral(f, b, true)?;
    let inner = forward_inner(&a.reconstruct(), &b.reconstruct(), x, sign)?;
    let params = with_sign(base_params(n, d_a, d_b), sign);
    Ok(conj_reports(signed_name("fx_xfbar", sign), &left, &right, sign, inner, d_a, d_b, kinds, tol, params))
}

/// `|||f̄(A)X ± Xf(B)|||` against `2/(d_A d_B) |||X - A*XB|||` (plus) or
/// `2√2/(d_A d_B) |||(|A*X| + |XB|)|||` (minus).
#[allow(clippy::too_many_arguments)]
pub fn check_conj_mirror(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    sign: Sign,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x)])?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let left = &apply_spectral(f, a, true)? * x;
    let right = x * &apply_spectral(f, b, false)?;
    let (am, bm) = (a.reconstruct(), b.reconstruct());
    let inner = match sign {
        Sign::Plus => x - &(&(&am.adjoint() * x) * &bm),
        Sign::Minus => &abs_matrix(&(&am.adjoint() * x))? + &abs_matrix(&(x * &bm))?,
    };
    let params = with_sign(base_params(n, d_a, d_b), sign);
    Ok(conj_reports(signed_name("fbarx_xf", sign), &left, &right, sign, inner, d_a, d_b, kinds, tol, params))
}

/// [`check_conj_bound`] with `D_A = 1 - w(A)` and `D_B = 1 - w(B)` from the
/// numerical range in place of `d_A`, `d_B`.
#[allow(clippy::too_many_arguments)]
pub fn check_numrange_variant(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    sign: Sign,
    angle_count: usize,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x)])?;
    let (am, bm) = (a.reconstruct(), b.reconstruct());
    let range_distance = |m: &CMatrix, label: &str| {
        numerical_range_distance(m, angle_count).map_err(|e| match e {
            Error::OutsideDisk(_) => {
                Error::Hypothesis(format!("numerical range of {label} is not inside the open unit disk"))
            }
            other => other,
        })
    };
    let big_d_a = range_distance(&am, "A")?;
    let big_d_b = range_distance(&bm, "B")?;
    let left = &apply_spectral(f, a, false)? * x;
    let right = x * &apply_spectral(f, b, true)?;
    let inner = forward_inner(&am, &bm, x, sign)?;
    let mut params = with_sign(base_params(n, big_d_a, big_d_b), sign);
    params.insert("angle_count".into(), angle_count.into());
    Ok(conj_reports(
        signed_name("numrange_fx_xfbar", sign),
        &left,
        &right,
        sign,
        inner,
        big_d_a,
        big_d_b,
        kinds,
        tol,
        params,
    ))
}

/// `|||e^{-iβ}AX + e^{iα}XB*||| <= √2 |||(|AX| + |XB*|)|||` for any `A`, `B`,
/// `X` and angles `α`, `β`.
#[allow(clippy::too_many_arguments)]
pub fn check_phased(
    a: &CMatrix,
    b: &CMatrix,
    x: &CMatrix,
    alpha: f64,
    beta: f64,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a), ("B", b), ("X", x)])?;
    let ax = a * x;
    let xb = x * &b.adjoint();
    let lhs = &ax.scale(C64::from_polar(1.0, -beta)) + &xb.scale(C64::from_polar(1.0, alpha));
    let lhs_sv = singular_values(&lhs);
    let inner_sv = singular_values(&(&abs_matrix(&ax)? + &abs_matrix(&xb)?));
    let mut params = Params::new();
    params.insert("dim".into(), n.into());
    params.insert("alpha".into(), alpha.into());
    params.insert("beta".into(), beta.into());
    Ok(grid_reports("phased_ax_xb", kinds, &lhs_sv, |k| SQRT_2 * norm_from_singular_values(&inner_sv, k), tol, &params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealPartForm {
    /// `|||f(A) + f̄(B)||| <= 2/(d_A d_B) |||I - AB*|||`
    SumWithConj,
    /// `|||Re f(A)||| <= 1/d_A² |||I - AA*|||`
    RealPart,
}

/// `B` is ignored by [`RealPartForm::RealPart`].
pub fn check_real_part_bound(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    f: &HerglotzFunction,
    form: RealPartForm,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = a.dim();
    let d_a = boundary_distance(a, "A")?;
    let eye = CMatrix::identity(n);
    let am = a.reconstruct();
    let fa = apply_spectral(f, a, false)?;
    let (lhs, inner, c, name, params) = match form {
        RealPartForm::SumWithConj => {
            common_size(&[("A", a.u()), ("B", b.u())])?;
            let d_b = boundary_distance(b, "B")?;
            let lhs = &fa + &apply_spectral(f, b, true)?;
            let inner = &eye - &(&am * &b.reconstruct().adjoint());
            (lhs, inner, 2.0 / (d_a * d_b), "f_plus_fbar", base_params(n, d_a, d_b))
        }
        RealPartForm::RealPart => {
            let inner = &eye - &(&am * &am.adjoint());
            (fa.hermitian_part(), inner, 1.0 / (d_a * d_a), "re_f", base_params(n, d_a, d_a))
        }
    };
    let lhs_sv = singular_values(&lhs);
    let inner_sv = singular_values(&inner);
    Ok(grid_reports(name, kinds, &lhs_sv, |k| c * norm_from_singular_values(&inner_sv, k), tol, &params))
}
