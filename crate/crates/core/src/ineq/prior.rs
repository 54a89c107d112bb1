//! Two-function bounds with the constant `2√2 / (d_A d_B)`.

use serde::{Deserialize, Serialize};

use super::{base_params, boundary_distance, common_size, grid_reports, IneqReport, Tolerance};
use crate::error::Result;
use crate::herglotz::{apply_spectral, HerglotzFunction};
use crate::matcore::CMatrix;
use crate::norms::NormKind;
use crate::spectral::{abs_matrix, singular_values, SpectralDecomposition};

/// Which left-hand side is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorForm {
    /// `|||f(A)X - Xg(B)||| <= c |||(|AX| + |XB|)|||`
    FxMinusXg,
    /// `|||f(A)X + Xg(B)||| <= c |||(|AXB| + |X|)|||`
    FxPlusXg,
    /// `|||f(A)Xg(B) - X||| <= c |||(|AX| + |XB|)|||`
    FxgMinusX,
    /// `|||f(A)Xg(B) + X||| <= c |||(|AXB| + |X|)|||`
    FxgPlusX,
}

impl PriorForm {
    pub const ALL: [PriorForm; 4] = [PriorForm::FxMinusXg, PriorForm::FxPlusXg, PriorForm::FxgMinusX, PriorForm::FxgPlusX];

    pub fn name(self) -> &'static str {
        match self {
            PriorForm::FxMinusXg => "fx_minus_xg",
            PriorForm::FxPlusXg => "fx_plus_xg",
            PriorForm::FxgMinusX => "fxg_minus_x",
            PriorForm::FxgPlusX => "fxg_plus_x",
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn check_prior(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    f: &HerglotzFunction,
    g: &HerglotzFunction,
    form: PriorForm,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let (am, bm) = (a.reconstruct(), b.reconstruct());
    let n = common_size(&[("A", &am), ("B", &bm), ("X", x)])?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let fa = apply_spectral(f, a, false)?;
    let gb = apply_spectral(g, b, false)?;

    let lhs = match form {
        PriorForm::FxMinusXg => &(&fa * x) - &(x * &gb),
        PriorForm::FxPlusXg => &(&fa * x) + &(x * &gb),
        PriorForm::FxgMinusX => &(&(&fa * x) * &gb) - x,
        PriorForm::FxgPlusX => &(&(&fa * x) * &gb) + x,
    };
    let ax = &am * x;
    let inner = match form {
        PriorForm::FxMinusXg | PriorForm::FxgMinusX => &abs_matrix(&ax)? + &abs_matrix(&(x * &bm))?,
        PriorForm::FxPlusXg | PriorForm::FxgPlusX => &abs_matrix(&(&ax * &bm))? + &abs_matrix(x)?,
    };
    let c = 2.0 * std::f64::consts::SQRT_2 / (d_a * d_b);
    let inner_sv = singular_values(&inner);
    let lhs_sv = singular_values(&lhs);
    let params = base_params(n, d_a, d_b);
    Ok(grid_reports(
        form.name(),
        kinds,
        &lhs_sv,
        |k| c * crate::norms::norm_from_singular_values(&inner_sv, k),
        tol,
        &params,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{gaussian_with, random_in_disk_with, C64};
    use crate::norms::audit_grid;
    use crate::herglotz::random_herglotz_with;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn scalar(z: f64) -> SpectralDecomposition {
        SpectralDecomposition::diagonal(vec![C64::new(z, 0.0)])
    }

    #[test]
    fn scalar_instance() {
        // f(1/2) = 3, g(0) = 1: |3 - 1| = 2 against (2√2 / (1/2)) · (1/2) = 2√2
        let f = HerglotzFunction::cayley();
        let one = CMatrix::identity(1);
        let r = check_prior(&scalar(0.5), &scalar(0.0), &one, &f, &f, PriorForm::FxMinusXg, &[NormKind::Operator], &Tolerance::default())
            .unwrap();
        assert!((r[0].lhs - 2.0).abs() < 1e-14);
        assert!((r[0].rhs - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(r[0].holds);
        assert_eq!(r[0].name, "fx_minus_xg");
    }

    #[test]
    fn zero_matrices() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let x = gaussian_with(&mut rng, 3, 3);
        let zero = SpectralDecomposition::diagonal(vec![C64::new(0.0, 0.0); 3]);
        let f = random_herglotz_with(&mut rng, 2).unwrap();
        let g = random_herglotz_with(&mut rng, 3).unwrap();
        let kinds = audit_grid(3);
        let r = check_prior(&zero, &zero, &x, &f, &g, PriorForm::FxPlusXg, &kinds, &Tolerance::default()).unwrap();
        for (rep, kind) in r.iter().zip(&kinds) {
            let xn = crate::norms::uinorm(&x, *kind);
            assert!((rep.lhs - 2.0 * xn).abs() < 1e-12);
            assert!((rep.rhs - 2.0 * 2f64.sqrt() * xn).abs() < 1e-12);
        }
    }

    #[test]
    fn random_instances_hold() {
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        let tol = Tolerance::default();
        for _ in 0..5 {
            let (_, a) = random_in_disk_with(&mut rng, 4, 0.9, false);
            let (_, b) = random_in_disk_with(&mut rng, 4, 0.9, false);
            let x = gaussian_with(&mut rng, 4, 4);
            let f = random_herglotz_with(&mut rng, 3).unwrap();
            let g = random_herglotz_with(&mut rng, 2).unwrap();
            for form in PriorForm::ALL {
                for r in check_prior(&a, &b, &x, &f, &g, form, &audit_grid(4), &tol).unwrap() {
                    assert!(r.holds, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn hypothesis_violation() {
        let f = HerglotzFunction::cayley();
        let one = CMatrix::identity(1);
        let err = check_prior(&scalar(1.0), &scalar(0.0), &one, &f, &f, PriorForm::FxgPlusX, &[NormKind::Operator], &Tolerance::default());
        assert!(matches!(err, Err(crate::error::Error::Hypothesis(_))));
    }
}
