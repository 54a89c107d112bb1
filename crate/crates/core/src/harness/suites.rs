//! Registry of randomized suites. Each suite draws one instance per trial from
//! its own seeded stream and runs one or more checkers on it.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::herglotz::{random_herglotz_with, ContourSpec, HerglotzFunction, DEFAULT_ANGLE_COUNT};
use crate::ineq::{self, BlockConjForm, BlockForm, HsForm, IneqReport, MultiplierVariant, PriorForm, RealPartForm,
    ReDiffVariant, Sign, Tolerance};
use crate::matcore::{gaussian_with, normal_from_spectrum_with, random_in_disk_with, CMatrix, C64};
use crate::norms::{audit_grid, check_direct_sum_identities, check_submultiplicative, kyfan_dominance_check, op_norm,
    NormKind};
use crate::spectral::{circle_samples, SpectralDecomposition};

/// Theorem suites must never report a violation; recording suites only
/// tally outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theorem,
    Recording,
}

/// Everything a trial needs besides its random stream.
#[derive(Debug, Clone, Copy)]
pub struct TrialContext {
    pub dim: usize,
    pub spectrum_radius: f64,
    pub contour_nodes: usize,
    pub tol: Tolerance,
}

type EvalFn = fn(&TrialContext, &mut ChaCha20Rng) -> Result<Vec<IneqReport>>;

pub struct Suite {
    pub id: &'static str,
    pub mode: Mode,
    pub summary: &'static str,
    eval: EvalFn,
}

impl Suite {
    pub fn evaluate(&self, ctx: &TrialContext, trial_seed: u64) -> Result<Vec<IneqReport>> {
        (self.eval)(ctx, &mut ChaCha20Rng::seed_from_u64(trial_seed))
    }
}

impl std::fmt::Debug for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Suite").field("id", &self.id).field("mode", &self.mode).finish()
    }
}

const fn theorem(id: &'static str, summary: &'static str, eval: EvalFn) -> Suite {
    Suite { id, mode: Mode::Theorem, summary, eval }
}

const fn recording(id: &'static str, summary: &'static str, eval: EvalFn) -> Suite {
    Suite { id, mode: Mode::Recording, summary, eval }
}

pub static SUITES: &[Suite] = &[
    theorem("submultiplicative", "|||AXB||| <= ‖A‖‖B‖ |||X|||", submultiplicative),
    theorem("direct_sum", "direct sum and off-diagonal block identities", direct_sum),
    theorem("kyfan_dominance", "Ky Fan dominance implies Schatten dominance", kyfan_dominance),
    theorem("prior", "f(A)X ∓ Xg(B) and f(A)Xg(B) ∓ X bounds", prior),
    theorem("hs_mixed", "Hilbert-Schmidt bound on f(A)X + Xg(B) ± f(A)Xg(B)", hs_mixed),
    theorem("hs_symmetrized", "Hilbert-Schmidt bound on f(A)Xg(B) ± g(B)Xf(A)", hs_symmetrized),
    theorem("hs_identity", "Hilbert-Schmidt bounds with X = I", hs_identity),
    theorem("sv_two_term", "s_j(AX ± YB) <= 2√(‖A‖‖B‖) s_j(X ⊕ Y)", sv_two_term),
    theorem("norm_two_term", "|||(AX ± YB) ⊕ 0||| <= 2√(‖A‖‖B‖) |||X ⊕ Y|||", norm_two_term),
    theorem("block_two_term", "block difference and sum bounds", block_two_term),
    theorem("conj_bound", "f(A)X ± Xf̄(B) bounds", conj_bound),
    theorem("conj_mirror", "f̄(A)X ± Xf(B) bounds", conj_mirror),
    theorem("phased", "|||e^{-iβ}AX + e^{iα}XB*||| <= √2 |||(|AX| + |XB*|)|||", phased),
    theorem("real_part", "f(A) + f̄(B) and Re f(A) bounds", real_part),
    theorem("numrange", "f(A)X ± Xf̄(B) bounds with numerical-range distances", numrange),
    theorem("block_conj", "block bounds with f + f̄", block_conj),
    theorem("fcalc_oracle", "spectral functional calculus against contour quadrature", fcalc_oracle),
    theorem("resolvent_growth", "‖(z - A)^{-1}‖ = 1/dist(z, σ(A)) for normal A", resolvent_growth),
    theorem("pos_multiplier_minus", "m |||A - B||| <= |||AX - XB||| for X >= mI", pos_multiplier_minus),
    recording("pos_multiplier_plus", "m |||A - B||| <= |||AX + XB||| for X >= mI", pos_multiplier_plus),
    recording("re_f_diff", "m |||Re f(A) - Re f(B)||| bound", re_f_diff),
    recording("re_f_diff_near_unitary", "m |||Re f(A) - Re f(B)||| bound, spectra near the circle", re_f_diff_near_unitary),
];

pub fn find_suite(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

/// Per-trial stream seed: a splitmix64 chain over `(seed, suite, dim, trial)`,
/// so any trial can be regenerated without replaying the others.
pub fn trial_seed(seed: u64, suite: &str, dim: usize, trial: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    // FNV-1a over the suite id
    let id_hash = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    [id_hash, dim as u64, trial as u64].iter().fold(mix(seed), |h, &v| mix(h ^ v))
}

const DELTA_NEAR_UNITARY: f64 = 1e-3;

fn normal(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> SpectralDecomposition {
    random_in_disk_with(rng, ctx.dim, ctx.spectrum_radius, false).1
}

fn hermitian(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> SpectralDecomposition {
    random_in_disk_with(rng, ctx.dim, ctx.spectrum_radius, true).1
}

fn mat(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> CMatrix {
    gaussian_with(rng, ctx.dim, ctx.dim)
}

fn herglotz(rng: &mut ChaCha20Rng) -> Result<HerglotzFunction> {
    let atoms = rng.random_range(1..=4);
    random_herglotz_with(rng, atoms)
}

/// `X = mI + GG*` with `m` uniform on `[0.1, 1)`.
fn positive_multiplier(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> (CMatrix, f64) {
    let m = rng.random_range(0.1..1.0);
    let g = mat(ctx, rng);
    (&CMatrix::identity(ctx.dim).scale_real(m) + &(&g * &g.adjoint()), m)
}

fn grid(ctx: &TrialContext) -> Vec<NormKind> {
    audit_grid(ctx.dim)
}

/// Grid for statements about `n ⊕ n` block matrices.
fn block_grid(ctx: &TrialContext) -> Vec<NormKind> {
    audit_grid(2 * ctx.dim)
}

fn submultiplicative(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b, x) = (mat(ctx, rng), mat(ctx, rng), mat(ctx, rng));
    check_submultiplicative(&a, &b, &x, &grid(ctx), &ctx.tol)
}

fn direct_sum(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (mat(ctx, rng), mat(ctx, rng));
    Ok(vec![check_direct_sum_identities(&a, &b, &block_grid(ctx), &ctx.tol)?])
}

/// `Y = XC` with `‖C‖ < 1`, so `s_j(Y) <= s_j(X)` and the premise holds.
fn kyfan_dominance(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let x = mat(ctx, rng);
    let c = mat(ctx, rng);
    let shrink = rng.random_range(0.5..1.0) / op_norm(&c);
    let y = &x * &c.scale_real(shrink);
    Ok(vec![kyfan_dominance_check(&y, &x, &ctx.tol)?])
}

fn prior(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let x = mat(ctx, rng);
    let (f, g) = (herglotz(rng)?, herglotz(rng)?);
    let kinds = grid(ctx);
    let mut out = Vec::new();
    for form in PriorForm::ALL {
        out.extend(ineq::check_prior(&a, &b, &x, &f, &g, form, &kinds, &ctx.tol)?);
    }
    Ok(out)
}

fn hs_mixed(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (hermitian(ctx, rng), hermitian(ctx, rng));
    let x = mat(ctx, rng);
    let (f, g) = (herglotz(rng)?, herglotz(rng)?);
    Sign::BOTH.iter().map(|&s| ineq::check_hs_mixed(&a, &b, &x, &f, &g, s, &ctx.tol)).collect()
}

fn hs_symmetrized(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (hermitian(ctx, rng), hermitian(ctx, rng));
    let x = mat(ctx, rng);
    let (f, g) = (herglotz(rng)?, herglotz(rng)?);
    Sign::BOTH.iter().map(|&s| ineq::check_hs_symmetrized(&a, &b, &x, &f, &g, s, &ctx.tol)).collect()
}

fn hs_identity(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (hermitian(ctx, rng), hermitian(ctx, rng));
    let (f, g) = (herglotz(rng)?, herglotz(rng)?);
    let mut out = Vec::new();
    for form in [HsForm::Mixed, HsForm::Symmetrized] {
        for sign in Sign::BOTH {
            out.push(ineq::check_hs_identity(&a, &b, &f, &g, sign, form, &ctx.tol)?);
        }
    }
    Ok(out)
}

fn sv_two_term(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b, x, y) = (mat(ctx, rng), mat(ctx, rng), mat(ctx, rng), mat(ctx, rng));
    Sign::BOTH.iter().map(|&s| ineq::check_sv_two_term(&a, &b, &x, &y, s, &ctx.tol)).collect()
}

fn norm_two_term(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b, x, y) = (mat(ctx, rng), mat(ctx, rng), mat(ctx, rng), mat(ctx, rng));
    let kinds = block_grid(ctx);
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        out.extend(ineq::check_norm_two_term(&a, &b, &x, &y, sign, &kinds, &ctx.tol)?);
    }
    Ok(out)
}

fn block_two_term(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let (x, y) = (mat(ctx, rng), mat(ctx, rng));
    let (f, g) = (herglotz(rng)?, herglotz(rng)?);
    let kinds = block_grid(ctx);
    let mut out = Vec::new();
    for form in [BlockForm::Difference, BlockForm::Sum] {
        for sign in Sign::BOTH {
            out.extend(ineq::check_block_two_term(&a, &b, &x, &y, &f, &g, sign, form, &kinds, &ctx.tol)?);
        }
    }
    Ok(out)
}

fn conj_bound(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let x = mat(ctx, rng);
    let f = herglotz(rng)?;
    let kinds = grid(ctx);
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        out.extend(ineq::check_conj_bound(&a, &b, &x, &f, sign, &kinds, &ctx.tol)?);
    }
    Ok(out)
}

fn conj_mirror(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let x = mat(ctx, rng);
    let f = herglotz(rng)?;
    let kinds = grid(ctx);
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        out.extend(ineq::check_conj_mirror(&a, &b, &x, &f, sign, &kinds, &ctx.tol)?);
    }
    Ok(out)
}

fn phased(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b, x) = (mat(ctx, rng), mat(ctx, rng), mat(ctx, rng));
    let alpha = rng.random_range(0.0..TAU);
    let beta = rng.random_range(0.0..TAU);
    ineq::check_phased(&a, &b, &x, alpha, beta, &grid(ctx), &ctx.tol)
}

fn real_part(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let f = herglotz(rng)?;
    let kinds = grid(ctx);
    let mut out = ineq::check_real_part_bound(&a, &b, &f, RealPartForm::SumWithConj, &kinds, &ctx.tol)?;
    out.extend(ineq::check_real_part_bound(&a, &b, &f, RealPartForm::RealPart, &kinds, &ctx.tol)?);
    Ok(out)
}

fn numrange(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let x = mat(ctx, rng);
    let f = herglotz(rng)?;
    let kinds = grid(ctx);
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        out.extend(ineq::check_numrange_variant(&a, &b, &x, &f, sign, DEFAULT_ANGLE_COUNT, &kinds, &ctx.tol)?);
    }
    Ok(out)
}

fn block_conj(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let (x, y) = (mat(ctx, rng), mat(ctx, rng));
    let f = herglotz(rng)?;
    let kinds = block_grid(ctx);
    let mut out = ineq::check_block_conj(&a, &b, &x, &y, &f, BlockConjForm::General, &kinds, &ctx.tol)?;
    out.extend(ineq::check_block_conj(&a, &b, &x, &y, &f, BlockConjForm::RealPart, &kinds, &ctx.tol)?);
    Ok(out)
}

fn fcalc_oracle(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let a = normal(ctx, rng);
    let f = herglotz(rng)?;
    let spec = ContourSpec::midway(a.spectral_radius(), ctx.contour_nodes);
    Ok(vec![ineq::check_fcalc_oracle(&f, &a, &spec, &ctx.tol)?])
}

/// Samples on the unit circle, the boundary the spectra approach.
fn resolvent_growth(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let a = normal(ctx, rng);
    let turn = C64::from_polar(1.0, rng.random_range(0.0..TAU));
    let samples: Vec<C64> = circle_samples(32, 1.0).into_iter().map(|z| z * turn).collect();
    Ok(vec![ineq::check_resolvent_growth(&a, &samples, &ctx.tol)?])
}

/// Hermitian `A`, `B` with spectra in `[-2, 2]`; no disk hypothesis applies.
fn multiplier_instance(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> (CMatrix, CMatrix, CMatrix, f64) {
    let a = random_in_disk_with(rng, ctx.dim, 1.0, true).0.scale_real(2.0);
    let b = random_in_disk_with(rng, ctx.dim, 1.0, true).0.scale_real(2.0);
    let (x, m) = positive_multiplier(ctx, rng);
    (a, b, x, m)
}

fn pos_multiplier_minus(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b, x, m) = multiplier_instance(ctx, rng);
    ineq::check_pos_multiplier(&a, &b, &x, m, MultiplierVariant::ProofMinus, &grid(ctx), &ctx.tol)
}

fn pos_multiplier_plus(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b, x, m) = multiplier_instance(ctx, rng);
    ineq::check_pos_multiplier(&a, &b, &x, m, MultiplierVariant::StatedPlus, &grid(ctx), &ctx.tol)
}

fn re_f_diff(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (normal(ctx, rng), normal(ctx, rng));
    let (x, m) = positive_multiplier(ctx, rng);
    let f = herglotz(rng)?;
    ineq::check_re_diff(&a, &b, &x, m, &f, ReDiffVariant::Stated, &grid(ctx), &ctx.tol)
}

fn near_unitary(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> SpectralDecomposition {
    let spectrum = (0..ctx.dim).map(|_| C64::from_polar(1.0 - DELTA_NEAR_UNITARY, rng.random_range(0.0..TAU))).collect();
    normal_from_spectrum_with(rng, spectrum).1
}

fn re_f_diff_near_unitary(ctx: &TrialContext, rng: &mut ChaCha20Rng) -> Result<Vec<IneqReport>> {
    let (a, b) = (near_unitary(ctx, rng), near_unitary(ctx, rng));
    let (x, m) = positive_multiplier(ctx, rng);
    let f = herglotz(rng)?;
    ineq::check_re_diff(&a, &b, &x, m, &f, ReDiffVariant::NearUnitary, &grid(ctx), &ctx.tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        for (i, s) in SUITES.iter().enumerate() {
            assert!(SUITES[i + 1..].iter().all(|t| t.id != s.id), "{}", s.id);
        }
    }

    #[test]
    fn trial_seeds_differ() {
        let base = trial_seed(42, "prior", 3, 0);
        assert_eq!(base, trial_seed(42, "prior", 3, 0));
        assert_ne!(base, trial_seed(42, "prior", 3, 1));
        assert_ne!(base, trial_seed(42, "prior", 4, 0));
        assert_ne!(base, trial_seed(42, "phased", 3, 0));
        assert_ne!(base, trial_seed(43, "prior", 3, 0));
    }

    #[test]
    fn every_suite_runs_at_dim_one_and_two() {
        for dim in [1, 2] {
            let ctx = TrialContext { dim, spectrum_radius: 0.9, contour_nodes: 64, tol: Tolerance::default() };
            for s in SUITES {
                let reports = s.evaluate(&ctx, trial_seed(1, s.id, dim, 0)).unwrap();
                assert!(!reports.is_empty(), "{}", s.id);
            }
        }
    }
}
