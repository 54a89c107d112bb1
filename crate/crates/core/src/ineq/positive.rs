//! Bounds with a positive multiplier `X >= mI`, and the real-part difference
//! bound built on them. Two of these statements have plus-sign forms that do
//! not hold in general; both forms are evaluated.

use serde::{Deserialize, Serialize};

use super::{base_params, boundary_distance, common_size, grid_reports, IneqReport, Params, Tolerance};
use crate::error::{Error, Result};
use crate::herglotz::{apply_spectral, HerglotzFunction};
use crate::matcore::{classify, CMatrix};
use crate::norms::{norm_from_singular_values, NormKind};
use crate::spectral::{eig_hermitian, singular_values, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplierVariant {
    /// `m |||A - B||| <= |||AX + XB|||`
    StatedPlus,
    /// `m |||A - B||| <= |||AX - XB|||`
    ProofMinus,
}

impl MultiplierVariant {
    pub fn name(self) -> &'static str {
        match self {
            MultiplierVariant::StatedPlus => "pos_multiplier_plus",
            MultiplierVariant::ProofMinus => "pos_multiplier_minus",
        }
    }
}

fn require_hermitian(m: &CMatrix, label: &str) -> Result<()> {
    let scale = 1.0 + m.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if classify(m, 1e-12 * scale)?.hermitian {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{label} must be Hermitian")))
    }
}

/// `X` Hermitian with `λ_min(X) >= m > 0`.
fn require_lower_bound(x: &CMatrix, m: f64) -> Result<()> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::Hypothesis(format!("multiplier bound m = {m} must be positive")));
    }
    require_hermitian(x, "X")?;
    let ev = eig_hermitian(x)?;
    let low = ev.eigenvalues().last().map_or(f64::INFINITY, |z| z.re);
    if low < m * (1.0 - 1e-12) - 1e-14 {
        return Err(Error::Hypothesis(format!("X has eigenvalue {low} below m = {m}")));
    }
    Ok(())
}

/// `m |||A - B|||` against `|||AX ± XB|||` for Hermitian `A`, `B`.
#[allow(clippy::too_many_arguments)]
pub fn check_pos_multiplier(
    a: &CMatrix,
    b: &CMatrix,
    x: &CMatrix,
    m: f64,
    variant: MultiplierVariant,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a), ("B", b), ("X", x)])?;
    require_hermitian(a, "A")?;
    require_hermitian(b, "B")?;
    require_lower_bound(x, m)?;
    let lhs_sv: Vec<f64> = singular_values(&(a - b)).into_iter().map(|s| m * s).collect();
    let (ax, xb) = (a * x, x * b);
    let rhs = match variant {
        MultiplierVariant::StatedPlus => &ax + &xb,
        MultiplierVariant::ProofMinus => &ax - &xb,
    };
    let rhs_sv = singular_values(&rhs);
    let mut params = Params::new();
    params.insert("dim".into(), n.into());
    params.insert("m".into(), m.into());
    Ok(grid_reports(variant.name(), kinds, &lhs_sv, |k| norm_from_singular_values(&rhs_sv, k), tol, &params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReDiffVariant {
    /// RHS `(|||X - AXB*||| + |||X - A*XB|||) / (d_A d_B)`
    Stated,
    /// RHS `2 |||X - AXB*||| / (d_A d_B)`, meant for unitary `A`, `B`;
    /// evaluated on spectra of modulus `1 - δ`
    NearUnitary,
}

impl ReDiffVariant {
    pub fn name(self) -> &'static str {
        match self {
            ReDiffVariant::Stated => "re_f_diff",
            ReDiffVariant::NearUnitary => "re_f_diff_near_unitary",
        }
    }
}

/// `m |||Re f(A) - Re f(B)|||` for normal `A`, `B` in the disk and `X >= mI`.
#[allow(clippy::too_many_arguments)]
pub fn check_re_diff(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    m: f64,
    f: &HerglotzFunction,
    variant: ReDiffVariant,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x)])?;
    require_lower_bound(x, m)?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let diff = &apply_spectral(f, a, false)?.hermitian_part() - &apply_spectral(f, b, false)?.hermitian_part();
    let lhs_sv: Vec<f64> = singular_values(&diff).into_iter().map(|s| m * s).collect();
    let (am, bm) = (a.reconstruct(), b.reconstruct());
    let fwd = singular_values(&(x - &(&(&am * x) * &bm.adjoint())));
    let c = 1.0 / (d_a * d_b);
    let mut params = base_params(n, d_a, d_b);
    params.insert("m".into(), m.into());
    let reports = match variant {
        ReDiffVariant::Stated => {
            let back = singular_values(&(x - &(&(&am.adjoint() * x) * &bm)));
            grid_reports(
                variant.name(),
                kinds,
                &lhs_sv,
                |k| c * (norm_from_singular_values(&fwd, k) + norm_from_singular_values(&back, k)),
                tol,
                &params,
            )
        }
        ReDiffVariant::NearUnitary => {
            params.insert("delta".into(), d_a.min(d_b).into());
            grid_reports(variant.name(), kinds, &lhs_sv, |k| 2.0 * c * norm_from_singular_values(&fwd, k), tol, &params)
        }
    };
    Ok(reports)
}
