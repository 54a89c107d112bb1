//! Two-term bounds `AX ± YB` against `X ⊕ Y`, and the block bounds built on
//! them.

use serde::{Deserialize, Serialize};

use super::{
    base_params, boundary_distance, common_size, grid_reports, signed_name, with_sign, IneqReport, Params, Sign,
    Tolerance,
};
use crate::error::Result;
use crate::herglotz::{apply_spectral, HerglotzFunction};
use crate::matcore::{direct_sum, CMatrix};
use crate::norms::{norm_from_singular_values, op_norm, NormKind};
use crate::spectral::{abs_matrix, abs_normal, singular_values, SpectralDecomposition};

/// `2 √(‖A‖ ‖B‖)`.
fn two_term_constant(a: &CMatrix, b: &CMatrix) -> f64 {
    2.0 * (op_norm(a) * op_norm(b)).sqrt()
}

/// Singular values of `M ⊕ 0_n`: those of `M` followed by `n` zeros.
fn padded_sv(m: &CMatrix, n: usize) -> Vec<f64> {
    let mut s = singular_values(m);
    s.resize(s.len() + n, 0.0);
    s
}

fn general_params(n: usize, sign: Sign) -> Params {
    let mut p = Params::new();
    p.insert("dim".into(), n.into());
    with_sign(p, sign)
}

/// `s_j(AX ± YB) <= 2√(‖A‖‖B‖) s_j(X ⊕ Y)` for every `j`.
///
/// The single report carries the index with the least margin (`params.j`,
/// 1-based).
pub fn check_sv_two_term(
    a: &CMatrix,
    b: &CMatrix,
    x: &CMatrix,
    y: &CMatrix,
    sign: Sign,
    tol: &Tolerance,
) -> Result<IneqReport> {
    let n = common_size(&[("A", a), ("B", b), ("X", x), ("Y", y)])?;
    let c = two_term_constant(a, b);
    let lhs = singular_values(&sign.combine(&(a * x), &(y * b)));
    let rhs = singular_values(&direct_sum(x, y));
    let (j, l, r) = lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .map(|(j, (&l, &s))| (j, l, c * s))
        .min_by(|p, q| {
            let mp = p.2 - p.1 + tol.margin(p.1, p.2);
            let mq = q.2 - q.1 + tol.margin(q.1, q.2);
            mp.total_cmp(&mq)
        })
        .expect("n >= 1");
    let mut params = general_params(n, sign);
    params.insert("j".into(), (j + 1).into());
    params.insert("constant".into(), c.into());
    Ok(IneqReport::new(signed_name("sv_ax_yb", sign), None, l, r, tol, params))
}

/// `|||(AX ± YB) ⊕ 0||| <= 2√(‖A‖‖B‖) |||X ⊕ Y|||`.
pub fn check_norm_two_term(
    a: &CMatrix,
    b: &CMatrix,
    x: &CMatrix,
    y: &CMatrix,
    sign: Sign,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a), ("B", b), ("X", x), ("Y", y)])?;
    let c = two_term_constant(a, b);
    let lhs = padded_sv(&sign.combine(&(a * x), &(y * b)), n);
    let xy = singular_values(&direct_sum(x, y));
    let params = general_params(n, sign);
    Ok(grid_reports(&signed_name("norm_ax_yb", sign), kinds, &lhs, |k| c * norm_from_singular_values(&xy, k), tol, &params))
}

/// Golden-section minimum of `t a + b / t` over `t > 0`, searched in `log t`.
/// Independent of the closed form `2√(ab)`.
pub fn scaled_sum_minimum(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let h = |s: f64| s.exp() * a + b / s.exp();
    let (mut lo, mut hi) = (-60.0f64, 60.0f64);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (h(x1), h(x2));
    for _ in 0..200 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = h(x2);
        }
    }
    f1.min(f2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockForm {
    /// `((f(A) - g(B))X ± Y(f(B) - g(A))) ⊕ 0` against `‖|A| + |B|‖`
    Difference,
    /// `((f(A) + g(B))X ± Y(f(B) + g(A))) ⊕ 0` against `‖I + |AB|‖`
    Sum,
}

/// Block bound with constant `4√2 / (d_A d_B)` for normal `A`, `B`.
#[allow(clippy::too_many_arguments)]
pub fn check_block_two_term(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    y: &CMatrix,
    f: &HerglotzFunction,
    g: &HerglotzFunction,
    sign: Sign,
    form: BlockForm,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x), ("Y", y)])?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let fa = apply_spectral(f, a, false)?;
    let fb = apply_spectral(f, b, false)?;
    let ga = apply_spectral(g, a, false)?;
    let gb = apply_spectral(g, b, false)?;
    let (left, right, factor, stem) = match form {
        BlockForm::Difference => {
            let s = &abs_normal(a) + &abs_normal(b);
            (&fa - &gb, &fb - &ga, op_norm(&s), "block_diff")
        }
        BlockForm::Sum => {
            let ab = &a.reconstruct() * &b.reconstruct();
            let s = &CMatrix::identity(n) + &abs_matrix(&ab)?;
            (&fa + &gb, &fb + &ga, op_norm(&s), "block_sum")
        }
    };
    let m = sign.combine(&(&left * x), &(y * &right));
    let lhs = padded_sv(&m, n);
    let xy = singular_values(&direct_sum(x, y));
    let c = 4.0 * std::f64::consts::SQRT_2 / (d_a * d_b) * factor;
    let params = with_sign(base_params(n, d_a, d_b), sign);
    Ok(grid_reports(&signed_name(stem, sign), kinds, &lhs, |k| c * norm_from_singular_values(&xy, k), tol, &params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockConjForm {
    /// `((f(A) + f̄(B))X - Y(f(B) + f̄(A))) ⊕ 0 <= 4/(d_A d_B) ‖I - AB*‖ |||X ⊕ Y|||`
    General,
    /// `(Re f(A) X - Y Re f(A)) ⊕ 0 <= 2/d_A² ‖I - AA*‖ |||X ⊕ Y|||`
    RealPart,
}

#[allow(clippy::too_many_arguments)]
pub fn check_block_conj(
    a: &SpectralDecomposition,
    b: &SpectralDecomposition,
    x: &CMatrix,
    y: &CMatrix,
    f: &HerglotzFunction,
    form: BlockConjForm,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let n = common_size(&[("A", a.u()), ("B", b.u()), ("X", x), ("Y", y)])?;
    let d_a = boundary_distance(a, "A")?;
    let d_b = boundary_distance(b, "B")?;
    let am = a.reconstruct();
    let eye = CMatrix::identity(n);
    let fa = apply_spectral(f, a, false)?;
    let (m, c, name, params) = match form {
        BlockConjForm::General => {
            let left = &fa + &apply_spectral(f, b, true)?;
            let right = &apply_spectral(f, b, false)? + &apply_spectral(f, a, true)?;
            let m = &(&left * x) - &(y * &right);
            let c = 4.0 / (d_a * d_b) * op_norm(&(&eye - &(&am * &b.reconstruct().adjoint())));
            (m, c, "block_conj", base_params(n, d_a, d_b))
        }
        BlockConjForm::RealPart => {
            let re = fa.hermitian_part();
            let m = &(&re * x) - &(y * &re);
            let c = 2.0 / (d_a * d_a) * op_norm(&(&eye - &(&am * &am.adjoint())));
            (m, c, "block_re_f", base_params(n, d_a, d_a))
        }
    };
    let lhs = padded_sv(&m, n);
    let xy = singular_values(&direct_sum(x, y));
    Ok(grid_reports(name, kinds, &lhs, |k| c * norm_from_singular_values(&xy, k), tol, &params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::random_herglotz_with;
    use crate::matcore::{gaussian_with, random_in_disk_with, C64};
    use crate::norms::{audit_grid, uinorm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn eye1() -> CMatrix {
        CMatrix::identity(1)
    }

    fn zeros(n: usize) -> SpectralDecomposition {
        SpectralDecomposition::diagonal(vec![C64::new(0.0, 0.0); n])
    }

    #[test]
    fn sv_identity_equality() {
        let r = check_sv_two_term(&eye1(), &eye1(), &eye1(), &eye1(), Sign::Plus, &Tolerance::default()).unwrap();
        assert_eq!((r.lhs, r.rhs), (2.0, 2.0));
        assert!(r.holds);
        assert_eq!(r.params["j"], 1);
    }

    #[test]
    fn sv_with_zero_y_and_balanced_norms() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let a = gaussian_with(&mut rng, 4, 4);
        let x = gaussian_with(&mut rng, 4, 4);
        let y = CMatrix::zeros(4, 4);
        // ‖B‖ = ‖A‖ makes the constant 2‖A‖, which dominates s_j(AX) <= ‖A‖ s_j(X)
        let b = a.scale_real(1.0);
        let r = check_sv_two_term(&a, &b, &x, &y, Sign::Minus, &Tolerance::default()).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn two_term_bound_fails_for_unbalanced_norms() {
        // 1x1: |1·1 + 1·0.01| = 1.01 but 2√(1·0.01)·max(1, 1) = 0.2
        let b = CMatrix::from_real_diag(&[0.01]);
        let tol = Tolerance::default();
        let r = check_sv_two_term(&eye1(), &b, &eye1(), &eye1(), Sign::Plus, &tol).unwrap();
        assert!(!r.holds);
        assert!((r.lhs - 1.01).abs() < 1e-15 && (r.rhs - 0.2).abs() < 1e-15);
        let r = check_norm_two_term(&eye1(), &b, &eye1(), &eye1(), Sign::Plus, &[NormKind::Operator], &tol).unwrap();
        assert!(!r[0].holds);
    }

    #[test]
    fn rescaling_does_not_preserve_the_two_term_bound() {
        // A = B = 1, X = 2, Y = 1/2: |2 + 1/2| against 2·2 holds. With t = 2 the
        // instance (2, 1/2, 1, 1) has the same LHS and constant but
        // s_1(X/t ⊕ tY) drops from 2 to 1.
        let tol = Tolerance::default();
        let s = |x: f64| CMatrix::from_real_diag(&[x]);
        let r = check_sv_two_term(&s(1.0), &s(1.0), &s(2.0), &s(0.5), Sign::Plus, &tol).unwrap();
        assert!(r.holds && r.lhs == 2.5 && r.rhs == 4.0);
        let r = check_sv_two_term(&s(2.0), &s(0.5), &s(1.0), &s(1.0), Sign::Plus, &tol).unwrap();
        assert!(!r.holds && r.lhs == 2.5 && r.rhs == 2.0);
    }

    #[test]
    fn norm_two_term_examples() {
        let tol = Tolerance::default();
        let r = check_norm_two_term(&eye1(), &eye1(), &eye1(), &eye1(), Sign::Plus, &audit_grid(2), &tol).unwrap();
        assert_eq!((r[0].lhs, r[0].rhs), (2.0, 2.0));
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let a = gaussian_with(&mut rng, 3, 3);
        let b = gaussian_with(&mut rng, 3, 3);
        let z = CMatrix::zeros(3, 3);
        for rep in check_norm_two_term(&a, &b, &z, &z, Sign::Minus, &audit_grid(6), &tol).unwrap() {
            assert_eq!((rep.lhs, rep.rhs), (0.0, 0.0));
        }
    }

    #[test]
    fn scaled_sum_minimum_matches_closed_form() {
        for a in [0.1, 1.0, 3.7] {
            for b in [0.2, 1.0, 9.0] {
                let got = scaled_sum_minimum(a, b);
                assert!((got - 2.0 * (a * b).sqrt()).abs() <= 1e-12 * (1.0 + got));
            }
        }
        assert_eq!(scaled_sum_minimum(0.0, 3.0), 0.0);
    }

    #[test]
    fn block_two_term_at_zero() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let (x, y) = (gaussian_with(&mut rng, 3, 3), gaussian_with(&mut rng, 3, 3));
        let f = random_herglotz_with(&mut rng, 2).unwrap();
        let g = random_herglotz_with(&mut rng, 2).unwrap();
        let tol = Tolerance::default();
        let kinds = audit_grid(6);
        for sign in Sign::BOTH {
            for r in check_block_two_term(&zeros(3), &zeros(3), &x, &y, &f, &f, sign, BlockForm::Difference, &kinds, &tol).unwrap() {
                assert!(r.lhs < 1e-14 && r.holds);
            }
        }
        let r = check_block_two_term(&zeros(3), &zeros(3), &x, &y, &f, &g, Sign::Plus, BlockForm::Sum, &kinds, &tol).unwrap();
        let sum = (&x + &y).scale_real(2.0);
        let xy = direct_sum(&x, &y);
        for (rep, k) in r.iter().zip(&kinds) {
            assert!((rep.lhs - uinorm(&sum, *k)).abs() < 1e-12);
            assert!((rep.rhs - 4.0 * 2f64.sqrt() * uinorm(&xy, *k)).abs() < 1e-11);
            assert!(rep.holds);
        }
    }

    #[test]
    fn block_forms_hold_on_random_normal() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let tol = Tolerance::default();
        let (_, a) = random_in_disk_with(&mut rng, 3, 0.9, false);
        let (_, b) = random_in_disk_with(&mut rng, 3, 0.9, false);
        let (x, y) = (gaussian_with(&mut rng, 3, 3), gaussian_with(&mut rng, 3, 3));
        let f = random_herglotz_with(&mut rng, 3).unwrap();
        let g = random_herglotz_with(&mut rng, 1).unwrap();
        let kinds = audit_grid(6);
        for sign in Sign::BOTH {
            for form in [BlockForm::Difference, BlockForm::Sum] {
                for r in check_block_two_term(&a, &b, &x, &y, &f, &g, sign, form, &kinds, &tol).unwrap() {
                    assert!(r.holds, "{r:?}");
                }
            }
        }
        for form in [BlockConjForm::General, BlockConjForm::RealPart] {
            for r in check_block_conj(&a, &b, &x, &y, &f, form, &kinds, &tol).unwrap() {
                assert!(r.holds, "{r:?}");
            }
        }
    }

    #[test]
    fn block_conj_examples() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let x = gaussian_with(&mut rng, 2, 2);
        let f = random_herglotz_with(&mut rng, 2).unwrap();
        let tol = Tolerance::default();
        let kinds = audit_grid(4);
        for r in check_block_conj(&zeros(2), &zeros(2), &x, &x, &f, BlockConjForm::General, &kinds, &tol).unwrap() {
            assert!(r.lhs < 1e-14);
        }
        let z = CMatrix::zeros(2, 2);
        let r = check_block_conj(&zeros(2), &zeros(2), &x, &z, &f, BlockConjForm::General, &kinds, &tol).unwrap();
        for (rep, k) in r.iter().zip(&kinds) {
            let xn = uinorm(&x, *k);
            assert!((rep.lhs - 2.0 * xn).abs() < 1e-12 && (rep.rhs - 4.0 * xn).abs() < 1e-12);
        }
    }
}
