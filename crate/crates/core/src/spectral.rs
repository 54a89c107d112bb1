//! Hermitian eigendecomposition and singular value decomposition by Jacobi
//! rotations, the matrix absolute value, and the resolvent-growth defect.

use crate::error::{Error, Result};
use crate::matcore::{CMatrix, C64, ONE, ZERO};
use crate::norms::hs_norm_direct;

/// Sweep cap for the Hermitian eigensolver; exceeding it is an error.
pub const MAX_SWEEPS: usize = 30;

const SVD_MAX_SWEEPS: usize = 60;

/// Closest a resolvent sample may come to the spectrum.
pub const MIN_SAMPLE_DISTANCE: f64 = 1e-3;

/// `A = U diag(λ) U*` with `U` unitary.
///
/// Holding one of these is what makes a matrix usable by the functional
/// calculus: only normal matrices admit the factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    u: CMatrix,
    eigenvalues: Vec<C64>,
}

impl SpectralDecomposition {
    /// Checked constructor: `u` must be square, unitary to `1e-10 * dim`, and
    /// match the eigenvalue count.
    pub fn new(u: CMatrix, eigenvalues: Vec<C64>) -> Result<Self> {
        let n = u.ensure_square()?;
        if eigenvalues.len() != n {
            return Err(Error::Dimension(format!(
                "{} eigenvalues for a {n}x{n} eigenvector matrix",
                eigenvalues.len()
            )));
        }
        if let Some(z) = eigenvalues.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidSpec(format!("non-finite eigenvalue {z}")));
        }
        let defect = hs_norm_direct(&(&(&u.adjoint() * &u) - &CMatrix::identity(n)));
        if defect > 1e-10 * n.max(1) as f64 {
            return Err(Error::NotUnitary(defect));
        }
        Ok(SpectralDecomposition { u, eigenvalues })
    }

    /// Diagonal matrix with the given eigenvalues in the standard basis.
    pub fn diagonal(eigenvalues: Vec<C64>) -> Self {
        let u = CMatrix::identity(eigenvalues.len());
        SpectralDecomposition { u, eigenvalues }
    }

    pub(crate) fn from_parts(u: CMatrix, eigenvalues: Vec<C64>) -> Self {
        debug_assert_eq!(u.rows(), eigenvalues.len());
        SpectralDecomposition { u, eigenvalues }
    }

    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.eigenvalues
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `max |λ_j|`.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `U diag(g(λ_j)) U*`.
    pub fn map_spectrum(&self, g: impl Fn(C64) -> C64) -> CMatrix {
        let n = self.dim();
        let vals: Vec<C64> = self.eigenvalues.iter().map(|&z| g(z)).collect();
        CMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| self.u[(i, k)] * vals[k] * self.u[(j, k)].conj()).sum()
        })
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|z| z)
    }

    /// The decomposition of `A*`.
    pub fn adjoint(&self) -> Self {
        SpectralDecomposition {
            u: self.u.clone(),
            eigenvalues: self.eigenvalues.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugated by a further unitary: the decomposition of `W A W*`.
    pub fn conjugated_by(&self, w: &CMatrix) -> Self {
        SpectralDecomposition { u: w * &self.u, eigenvalues: self.eigenvalues.clone() }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.eigenvalues.iter().all(|z| z.im.abs() <= tol)
    }
}

/// `A = U diag(s) V*` with square unitary `U` (rows×rows) and `V` (cols×cols).
#[derive(Debug, Clone)]
pub struct SvdResult {
    u: CMatrix,
    singular_values: Vec<f64>,
    v: CMatrix,
}

impl SvdResult {
    pub fn u(&self) -> &CMatrix {
        &self.u
    }

    /// Non-increasing, length `min(rows, cols)`.
    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    pub fn reconstruct(&self) -> CMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let k = self.singular_values.len();
        CMatrix::from_fn(m, n, |i, j| {
            (0..k).map(|l| self.u[(i, l)] * self.singular_values[l] * self.v[(j, l)].conj()).sum()
        })
    }
}

/// Parameters of the unitary 2x2 rotation `J` that diagonalizes the Hermitian
/// block `[[app, apq], [conj(apq), aqq]]` via `J* M J`.
///
/// `J = [[c, s], [-s·conj(ph), c·conj(ph)]]` where `ph = apq / |apq|`.
#[derive(Clone, Copy)]
struct Rotation {
    c: f64,
    s: f64,
    /// `conj(ph)`
    phase: C64,
    t: f64,
    b: f64,
}

impl Rotation {
    fn new(app: f64, aqq: f64, apq: C64) -> Self {
        let b = apq.norm();
        let phase = (apq / b).conj();
        let theta = (aqq - app) / (2.0 * b);
        let t = if theta.is_infinite() {
            0.0
        } else {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        Rotation { c, s: t * c, phase, t, b }
    }

    /// `(x_p, x_q) <- (c x_p - s ph̄ x_q, s x_p + c ph̄ x_q)`, i.e. right
    /// multiplication of a row vector by `J`.
    #[inline]
    fn apply_cols(&self, xp: C64, xq: C64) -> (C64, C64) {
        let yq = self.phase * xq;
        (xp * self.c - yq * self.s, xp * self.s + yq * self.c)
    }

    /// Left multiplication by `J*`.
    #[inline]
    fn apply_rows(&self, xp: C64, xq: C64) -> (C64, C64) {
        let yq = self.phase.conj() * xq;
        (xp * self.c - yq * self.s, xp * self.s + yq * self.c)
    }
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Stops once the off-diagonal Frobenius mass falls to `1e-14` of its initial
/// value, or to the rounding floor `n·ε·‖A‖_HS`. Eigenvalues are returned
/// non-increasing.
pub fn eig_hermitian(a: &CMatrix) -> Result<SpectralDecomposition> {
    let n = a.ensure_square()?;
    let norm = hs_norm_direct(a);
    let skew = hs_norm_direct(&(a - &a.adjoint()));
    if skew > 1e-8 * (1.0 + norm) {
        return Err(Error::NotHermitian(skew));
    }
    let sym = a.hermitian_part();
    let mut w: Vec<C64> = sym.entries().to_vec();
    let mut v: Vec<C64> = CMatrix::identity(n).entries().to_vec();

    let off0 = off_diagonal_norm(&w, n);
    let floor = (n as f64) * f64::EPSILON * norm;
    let mut off = off0;
    let mut sweeps = 0;
    while off > 1e-14 * off0 && off > floor {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[p * n + q];
                let app = w[p * n + p].re;
                let aqq = w[q * n + q].re;
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                if mag <= 0.5 * f64::EPSILON * (app.abs().min(aqq.abs())) {
                    w[p * n + q] = ZERO;
                    w[q * n + p] = ZERO;
                    continue;
                }
                let rot = Rotation::new(app, aqq, apq);
                for k in 0..n {
                    let (x, y) = rot.apply_cols(w[k * n + p], w[k * n + q]);
                    w[k * n + p] = x;
                    w[k * n + q] = y;
                }
                for k in 0..n {
                    let (x, y) = rot.apply_rows(w[p * n + k], w[q * n + k]);
                    w[p * n + k] = x;
                    w[q * n + k] = y;
                }
                for k in 0..n {
                    let (x, y) = rot.apply_cols(v[k * n + p], v[k * n + q]);
                    v[k * n + p] = x;
                    v[k * n + q] = y;
                }
                w[p * n + p] = C64::new(app - rot.t * rot.b, 0.0);
                w[q * n + q] = C64::new(aqq + rot.t * rot.b, 0.0);
                w[p * n + q] = ZERO;
                w[q * n + p] = ZERO;
            }
        }
        off = off_diagonal_norm(&w, n);
    }

    let diag: Vec<f64> = (0..n).map(|i| w[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let u = CMatrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
    let eigenvalues = order.iter().map(|&k| C64::new(diag[k], 0.0)).collect();
    Ok(SpectralDecomposition::from_parts(u, eigenvalues))
}

/// Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
pub fn svd(a: &CMatrix) -> SvdResult {
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint());
        return SvdResult { u: t.v, singular_values: t.singular_values, v: t.u };
    }
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.col(j)).collect();
    let mut vcols: Vec<Vec<C64>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect()).collect();
    let tol = f64::EPSILON * (m as f64).sqrt();

    for _ in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = ZERO;
                    for i in 0..m {
                        alpha += cp[i].norm_sqr();
                        beta += cq[i].norm_sqr();
                        gamma += cp[i].conj() * cq[i];
                    }
                    (alpha, beta, gamma)
                };
                if alpha == 0.0 || beta == 0.0 || gamma.norm() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::new(alpha, beta, gamma);
                let (lo, hi) = cols.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    (*x, *y) = rot.apply_cols(*x, *y);
                }
                let (lo, hi) = vcols.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    (*x, *y) = rot.apply_cols(*x, *y);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let singular_values: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let mut ucols: Vec<Option<Vec<C64>>> = order
        .iter()
        .map(|&k| (norms[k] > 0.0).then(|| cols[k].iter().map(|z| z / norms[k]).collect()))
        .collect();
    ucols.resize(m, None);
    let ucols = complete_orthonormal(ucols, m);

    let u = CMatrix::from_fn(m, m, |i, j| ucols[j][i]);
    let v = CMatrix::from_fn(n, n, |i, j| vcols[order[j]][i]);
    SvdResult { u, singular_values, v }
}

/// Fills the `None` slots with unit vectors orthogonal to every other column.
fn complete_orthonormal(cols: Vec<Option<Vec<C64>>>, m: usize) -> Vec<Vec<C64>> {
    let mut done: Vec<Vec<C64>> = cols.iter().flatten().cloned().collect();
    let mut fill = Vec::new();
    for _ in cols.iter().filter(|c| c.is_none()) {
        let mut best: Option<(f64, Vec<C64>)> = None;
        for k in 0..m {
            let mut e: Vec<C64> = (0..m).map(|i| if i == k { ONE } else { ZERO }).collect();
            for _ in 0..2 {
                for d in &done {
                    let proj: C64 = d.iter().zip(&e).map(|(x, y)| x.conj() * y).sum();
                    for (ei, di) in e.iter_mut().zip(d) {
                        *ei -= proj * di;
                    }
                }
            }
            let nrm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
                best = Some((nrm, e));
            }
        }
        let (nrm, e) = best.expect("m > 0 whenever a slot needs filling");
        let unit: Vec<C64> = e.iter().map(|z| z / nrm).collect();
        done.push(unit.clone());
        fill.push(unit);
    }
    let mut fill = fill.into_iter();
    cols.into_iter().map(|c| c.unwrap_or_else(|| fill.next().unwrap())).collect()
}

pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// `|A| = (A*A)^{1/2}`, assembled as `V diag(s) V*`.
pub fn abs_matrix(a: &CMatrix) -> Result<CMatrix> {
    let n = a.ensure_square()?;
    let f = svd(a);
    let s = &f.singular_values;
    let v = &f.v;
    Ok(CMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * s[k] * v[(j, k)].conj()).sum()))
}

/// `|A|` for a normal matrix given by its decomposition: `U diag(|λ|) U*`.
pub fn abs_normal(d: &SpectralDecomposition) -> CMatrix {
    d.map_spectrum(|z| C64::new(z.norm(), 0.0))
}

/// Largest deviation of `‖(z - A)^{-1}‖` from `1 / dist(z, σ(A))` over the
/// samples. Zero (to rounding) when `A` satisfies the resolvent growth
/// condition there; normal matrices always do.
pub fn resolvent_defect(a: &CMatrix, decomp: &SpectralDecomposition, z_samples: &[C64]) -> Result<f64> {
    let n = a.ensure_square()?;
    if decomp.dim() != n {
        return Err(Error::Dimension(format!("decomposition of size {} for a {n}x{n} matrix", decomp.dim())));
    }
    let mut worst: f64 = 0.0;
    for &z in z_samples {
        let dist = decomp.eigenvalues().iter().map(|l| (z - l).norm()).fold(f64::INFINITY, f64::min);
        if dist < MIN_SAMPLE_DISTANCE {
            return Err(Error::SampleTooClose { z: z.to_string(), dist });
        }
        let shifted = &CMatrix::identity(n).scale(z) - a;
        let s_min = svd(&shifted).singular_values.last().copied().unwrap_or(0.0);
        let resolvent_norm = 1.0 / s_min;
        worst = worst.max((resolvent_norm - 1.0 / dist).abs());
    }
    Ok(worst)
}

/// `count` equispaced points on the circle `|z| = radius`.
pub fn circle_samples(count: usize, radius: f64) -> Vec<C64> {
    (0..count)
        .map(|k| C64::from_polar(radius, std::f64::consts::TAU * k as f64 / count as f64))
        .collect()
}
