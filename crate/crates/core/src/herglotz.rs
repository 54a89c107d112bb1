//! Analytic self-maps of the disk into the right half-plane normalized by
//! `f(0) = 1`, represented by finitely atomic Herglotz measures:
//!
//! ```text
//! f(z) = Σ_m w_m (e^{iα_m} + z) / (e^{iα_m} - z),   w_m > 0,  Σ w_m = 1.
//! ```
//!
//! Every such `f` has positive real part on the open disk. Matrix arguments are
//! restricted to normal matrices (through [`SpectralDecomposition`]); the
//! contour integral in [`apply_contour`] is an independent route to the same
//! matrix used as an oracle.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, C64};
use crate::spectral::{eig_hermitian, SpectralDecomposition};

pub const DEFAULT_CONTOUR_NODES: usize = 256;
pub const DEFAULT_ANGLE_COUNT: usize = 720;

const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHerglotz")]
pub struct HerglotzFunction {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

#[derive(Deserialize)]
struct RawHerglotz {
    atoms: Vec<f64>,
    weights: Vec<f64>,
}

impl TryFrom<RawHerglotz> for HerglotzFunction {
    type Error = Error;

    fn try_from(raw: RawHerglotz) -> Result<Self> {
        HerglotzFunction::new(raw.atoms, raw.weights)
    }
}

impl HerglotzFunction {
    /// Atoms must lie in `[0, 2π)`, weights must be positive and sum to one.
    pub fn new(atoms: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} atoms with {} weights",
                atoms.len(),
                weights.len()
            )));
        }
        if let Some(a) = atoms.iter().find(|a| !(0.0..TAU).contains(*a)) {
            return Err(Error::InvalidMeasure(format!("atom {a} outside [0, 2π)")));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidMeasure(format!("weight {w} is not positive")));
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass {mass} != 1")));
        }
        Ok(HerglotzFunction { atoms, weights })
    }

    /// Unit point mass at `alpha`: `f(z) = (e^{iα} + z) / (e^{iα} - z)`.
    pub fn point_mass(alpha: f64) -> Result<Self> {
        Self::new(vec![alpha], vec![1.0])
    }

    /// `(1 + z) / (1 - z)`.
    pub fn cayley() -> Self {
        HerglotzFunction { atoms: vec![0.0], weights: vec![1.0] }
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub(crate) fn eval_in_disk(&self, z: C64) -> C64 {
        self.atoms
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| {
                let e = C64::from_polar(1.0, a);
                (e + z) / (e - z) * w
            })
            .sum()
    }
}

fn check_in_disk(z: C64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk(z.to_string()))
    }
}

pub fn herglotz_eval(f: &HerglotzFunction, z: C64) -> Result<C64> {
    check_in_disk(z)?;
    Ok(f.eval_in_disk(z))
}

/// `conj(f(z))`, the scalar action of the conjugate function `f̄`.
pub fn conj_eval(f: &HerglotzFunction, z: C64) -> Result<C64> {
    herglotz_eval(f, z).map(|w| w.conj())
}

/// `U diag(f(λ_j)) U*`, or with `conj(f(λ_j))` when `conjugate` is set. For a
/// normal matrix the conjugate form is `f(A)*`.
pub fn apply_spectral(f: &HerglotzFunction, decomp: &SpectralDecomposition, conjugate: bool) -> Result<CMatrix> {
    for &z in decomp.eigenvalues() {
        check_in_disk(z)?;
    }
    Ok(if conjugate {
        decomp.map_spectrum(|z| f.eval_in_disk(z).conj())
    } else {
        decomp.map_spectrum(|z| f.eval_in_disk(z))
    })
}

/// Trapezoidal discretization of the circle `|z| = radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub radius: f64,
    pub nodes: usize,
}

impl ContourSpec {
    /// Radius halfway between the spectral radius and the unit circle.
    pub fn midway(spectral_radius: f64, nodes: usize) -> Self {
        ContourSpec { radius: 0.5 * (spectral_radius + 1.0), nodes }
    }

    pub fn for_decomposition(decomp: &SpectralDecomposition) -> Self {
        Self::midway(decomp.spectral_radius(), DEFAULT_CONTOUR_NODES)
    }
}

/// `(1/2πi) ∮ f(z) (z - A)^{-1} dz` by the trapezoid rule on a circle.
///
/// With `z_k = r e^{2πik/N}` and `dz = i z dθ` this is
/// `(1/N) Σ_k f(z_k) z_k (z_k - A)^{-1}`. Aliasing makes the error decay like
/// `r^N + (ρ/r)^N` for spectral radius `ρ`.
pub fn apply_contour(
    f: &HerglotzFunction,
    a: &CMatrix,
    spectral_radius: f64,
    spec: &ContourSpec,
) -> Result<CMatrix> {
    let n = a.ensure_square()?;
    if !(spectral_radius < spec.radius && spec.radius < 1.0) || spec.nodes == 0 {
        return Err(Error::ContourRadius { radius: spec.radius, spectral_radius });
    }
    let mut acc = CMatrix::zeros(n, n);
    let eye = CMatrix::identity(n);
    let count = spec.nodes as f64;
    for k in 0..spec.nodes {
        let z = C64::from_polar(spec.radius, TAU * k as f64 / count);
        let resolvent = (&eye.scale(z) - a).inverse()?;
        let weight = f.eval_in_disk(z) * z / count;
        acc = &acc + &resolvent.scale(weight);
    }
    Ok(acc)
}

/// A priori bound on the entrywise-modulus error of [`apply_contour`] on one
/// eigenvalue of modulus at most `rho`.
///
/// With `f = Σ c_j z^j` (`c_0 = 1`, `|c_j| <= 2`) the trapezoid sum picks up the
/// aliased coefficients `j - m = ±N, ±2N, ...` of `f(z) z/(z - λ)`, giving
/// `2 r^N / ((1 - r^N)(1 - ρ)) + q/(1 - q) · (1 + ρ)/(1 - ρ)` with `q = (ρ/r)^N`.
pub fn contour_error_bound(rho: f64, spec: &ContourSpec) -> f64 {
    let n = spec.nodes as i32;
    let rn = spec.radius.powi(n);
    let q = (rho / spec.radius).powi(n);
    2.0 * rn / ((1.0 - rn) * (1.0 - rho)) + q / (1.0 - q) * (1.0 + rho) / (1.0 - rho)
}

/// `d_A = 1 - max_j |λ_j|`, the distance from the unit circle to the spectrum.
pub fn dist_boundary_spectrum(decomp: &SpectralDecomposition) -> Result<f64> {
    let rho = decomp.spectral_radius();
    if rho >= 1.0 {
        return Err(Error::OutsideDisk(format!("eigenvalue of modulus {rho}")));
    }
    Ok(1.0 - rho)
}

/// Numerical radius `w(A) = max_θ λ_max(Re(e^{iθ} A))` over an equispaced
/// grid of `angle_count` angles.
///
/// The grid maximum is a lower bound; by convexity of the numerical range the
/// true value is at most `w / cos(π / angle_count)`.
pub fn numerical_radius(a: &CMatrix, angle_count: usize) -> Result<f64> {
    a.ensure_square()?;
    if angle_count == 0 {
        return Err(Error::Config("angle_count must be positive".into()));
    }
    let step = TAU / angle_count as f64;
    // θ and θ + π share one eigensolve: λ_max(-H) = -λ_min(H)
    let paired = angle_count.is_multiple_of(2);
    let solves = if paired { angle_count / 2 } else { angle_count };
    let mut best = f64::NEG_INFINITY;
    for k in 0..solves {
        let rot = C64::from_polar(1.0, step * k as f64);
        let h = a.scale(rot).hermitian_part();
        let ev = eig_hermitian(&h)?;
        let vals = ev.eigenvalues();
        best = best.max(vals[0].re);
        if paired {
            best = best.max(-vals[vals.len() - 1].re);
        }
    }
    Ok(best)
}

/// `D_A = 1 - w(A)`, the distance from the unit circle to the closure of the
/// numerical range.
pub fn numerical_range_distance(a: &CMatrix, angle_count: usize) -> Result<f64> {
    let w = numerical_radius(a, angle_count)?;
    if w >= 1.0 {
        return Err(Error::OutsideDisk(format!("numerical radius {w}")));
    }
    Ok(1.0 - w)
}

/// Uniform atoms and flat-Dirichlet weights.
pub fn random_herglotz_with<R: Rng + ?Sized>(rng: &mut R, atom_count: usize) -> Result<HerglotzFunction> {
    if atom_count == 0 {
        return Err(Error::InvalidMeasure("atom_count must be positive".into()));
    }
    let atoms: Vec<f64> = (0..atom_count).map(|_| rng.random_range(0.0..TAU)).collect();
    let raw: Vec<f64> = (0..atom_count).map(|_| rng.sample::<f64, _>(Exp1) + f64::MIN_POSITIVE).collect();
    let total: f64 = raw.iter().sum();
    let weights = raw.iter().map(|w| w / total).collect();
    HerglotzFunction::new(atoms, weights)
}

pub fn random_herglotz(atom_count: usize, seed: u64) -> Result<HerglotzFunction> {
    random_herglotz_with(&mut ChaCha20Rng::seed_from_u64(seed), atom_count)
}
