//! Dense complex matrices, block constructions, seeded random generators and
//! structural classification.
//!
//! Matrices are immutable values: every operation returns a new matrix. The
//! arithmetic operators (`&a * &b`, `&a + &b`, ...) panic on shape mismatch the
//! same way slice indexing does; use [`CMatrix::try_mul`] where the shapes come
//! from user input.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::hs_norm_direct;
use crate::spectral::{svd, SpectralDecomposition};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<RawMatrix> for CMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        let data = raw.entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
        CMatrix::new(raw.rows, raw.cols, data)
    }
}

impl From<CMatrix> for RawMatrix {
    fn from(m: CMatrix) -> Self {
        RawMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { ZERO })
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(diag[i], 0.0) } else { ZERO })
    }

    /// Scalar `z` viewed as a 1x1 matrix.
    pub fn scalar(z: C64) -> Self {
        CMatrix { rows: 1, cols: 1, data: vec![z] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn diag(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub(crate) fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, z: C64) -> Self {
        self.map(|w| w * z)
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.map(|w| w * x)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    pub fn try_mul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![ZERO; self.rows * rhs.cols];
        for i in 0..self.rows {
            let row = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(CMatrix { rows: self.rows, cols: rhs.cols, data: out })
    }

    fn zip_with(&self, rhs: &CMatrix, op: &str, f: impl Fn(C64, C64) -> C64) -> CMatrix {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "cannot {op} {}x{} and {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// LU factorization with partial pivoting, returning `self^{-1}`.
    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.ensure_square()?;
        let scale = self.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut a = self.data.clone();
        let mut inv = CMatrix::identity(n).data;
        for k in 0..n {
            let (piv, pmag) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag <= f64::EPSILON * scale * n as f64 || pmag == 0.0 {
                return Err(Error::Singular(pmag));
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                    inv.swap(k * n + j, piv * n + j);
                }
            }
            let d = a[k * n + k].inv();
            for j in 0..n {
                a[k * n + j] *= d;
                inv[k * n + j] *= d;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a[i * n + k];
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let akj = a[k * n + j];
                    let ikj = inv[k * n + j];
                    a[i * n + j] -= factor * akj;
                    inv[i * n + j] -= factor * ikj;
                }
            }
        }
        Ok(CMatrix { rows: n, cols: n, data: inv })
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        match self.try_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, "add", |a, b| a + b)
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.map(|z| -z)
    }
}

/// Block-diagonal matrix `diag(A, B)`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows + b.rows;
    let cols = a.cols + b.cols;
    CMatrix::from_fn(rows, cols, |i, j| {
        if i < a.rows && j < a.cols {
            a[(i, j)]
        } else if i >= a.rows && j >= a.cols {
            b[(i - a.rows, j - a.cols)]
        } else {
            ZERO
        }
    })
}

/// `M ⊕ 0` with a square zero block of size `n`.
pub fn pad_zero(m: &CMatrix, n: usize) -> CMatrix {
    direct_sum(m, &CMatrix::zeros(n, n))
}

/// The off-diagonal block matrix `[[0, A], [B, 0]]` for square `A`, `B` of equal size.
pub fn block_offdiag(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let n = a.ensure_square()?;
    if b.shape() != (n, n) {
        return Err(Error::Dimension(format!(
            "off-diagonal blocks {}x{} and {}x{} differ",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(CMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => a[(i, j - n)],
        (false, true) => b[(i - n, j)],
        _ => ZERO,
    }))
}

/// Which family a random matrix is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    HermitianInDisk,
    NormalInDisk,
    Unitary,
    GeneralBounded,
}

pub const DEFAULT_SPECTRUM_RADIUS: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub dim: usize,
    pub seed: u64,
    pub spectrum_radius: f64,
    pub kind: MatrixKind,
}

impl RandomSpec {
    pub fn new(dim: usize, seed: u64, kind: MatrixKind) -> Self {
        RandomSpec { dim, seed, spectrum_radius: DEFAULT_SPECTRUM_RADIUS, kind }
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.spectrum_radius = r;
        self
    }

    fn validate(&self, allowed: &[MatrixKind]) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dim must be positive".into()));
        }
        if !allowed.contains(&self.kind) {
            return Err(Error::InvalidSpec(format!("kind {:?} not accepted here", self.kind)));
        }
        let in_disk = matches!(self.kind, MatrixKind::HermitianInDisk | MatrixKind::NormalInDisk);
        if in_disk && !(self.spectrum_radius > 0.0 && self.spectrum_radius < 1.0) {
            return Err(Error::InvalidSpec(format!(
                "spectrum_radius {} must lie in (0, 1)",
                self.spectrum_radius
            )));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

pub(crate) fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Complex Ginibre matrix with entries of variance `1/cols`, so the operator
/// norm stays O(1) across sizes.
pub fn gaussian_with<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let s = 1.0 / (cols.max(1) as f64).sqrt();
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng) * s)
}

/// Haar-distributed unitary from an explicit generator.
///
/// Gram-Schmidt (applied twice) on a Ginibre matrix yields `Q` with a positive
/// real `R` diagonal, which is the phase convention that makes `Q` Haar.
pub fn haar_unitary_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    loop {
        let z = gaussian_with(rng, n, n);
        let mut cols: Vec<Vec<C64>> = (0..n).map(|j| z.col(j)).collect();
        let mut ok = true;
        for j in 0..n {
            for _ in 0..2 {
                for k in 0..j {
                    let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                    let (head, tail) = cols.split_at_mut(j);
                    for (cj, &ck) in tail[0].iter_mut().zip(&head[k]) {
                        *cj -= proj * ck;
                    }
                }
            }
            let nrm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nrm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|z| *z /= nrm);
        }
        if ok {
            return CMatrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}

/// Haar unitary for `spec` (kind must be `Unitary`).
pub fn haar_unitary(spec: &RandomSpec) -> Result<CMatrix> {
    spec.validate(&[MatrixKind::Unitary])?;
    Ok(haar_unitary_with(&mut spec.rng(), spec.dim))
}

/// Eigenvalues for an in-disk draw: real uniform on `(-r, r)` or uniform on the
/// disk of radius `r`.
pub fn random_spectrum_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    radius: f64,
    hermitian: bool,
) -> Vec<C64> {
    (0..n)
        .map(|_| {
            if hermitian {
                C64::new(rng.random_range(-radius..radius), 0.0)
            } else {
                let rho = radius * rng.random::<f64>().sqrt();
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                C64::from_polar(rho, theta)
            }
        })
        .collect()
}

/// `U diag(λ) U*` with `U` Haar and the given eigenvalues.
pub fn normal_from_spectrum_with<R: Rng + ?Sized>(
    rng: &mut R,
    eigenvalues: Vec<C64>,
) -> (CMatrix, SpectralDecomposition) {
    let u = haar_unitary_with(rng, eigenvalues.len());
    let decomp = SpectralDecomposition::from_parts(u, eigenvalues);
    (decomp.reconstruct(), decomp)
}

pub fn random_in_disk_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    radius: f64,
    hermitian: bool,
) -> (CMatrix, SpectralDecomposition) {
    let lambda = random_spectrum_with(rng, n, radius, hermitian);
    normal_from_spectrum_with(rng, lambda)
}

/// Hermitian or normal matrix with spectrum in the disk of radius
/// `spec.spectrum_radius`, together with its exact decomposition.
pub fn random_in_disk(spec: &RandomSpec) -> Result<(CMatrix, SpectralDecomposition)> {
    spec.validate(&[MatrixKind::HermitianInDisk, MatrixKind::NormalInDisk])?;
    let hermitian = spec.kind == MatrixKind::HermitianInDisk;
    Ok(random_in_disk_with(&mut spec.rng(), spec.dim, spec.spectrum_radius, hermitian))
}

/// Draws a matrix of any kind; in-disk kinds drop the decomposition.
pub fn random_matrix(spec: &RandomSpec) -> Result<CMatrix> {
    match spec.kind {
        MatrixKind::Unitary => haar_unitary(spec),
        MatrixKind::HermitianInDisk | MatrixKind::NormalInDisk => Ok(random_in_disk(spec)?.0),
        MatrixKind::GeneralBounded => {
            spec.validate(&[MatrixKind::GeneralBounded])?;
            Ok(gaussian_with(&mut spec.rng(), spec.dim, spec.dim))
        }
    }
}

/// Structural flags of a square matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub hermitian: bool,
    pub normal: bool,
    pub unitary: bool,
    pub contraction: bool,
}

pub fn classify(a: &CMatrix, tol: f64) -> Result<Structure> {
    let n = a.ensure_square()?;
    let adj = a.adjoint();
    let hs = hs_norm_direct(a);
    let gram = &adj * a;
    let hermitian = hs_norm_direct(&(a - &adj)) <= tol * (1.0 + hs);
    let normal = hs_norm_direct(&(&gram - &(a * &adj))) <= tol * (1.0 + hs * hs);
    let unitary = hs_norm_direct(&(&gram - &CMatrix::identity(n))) <= tol * n as f64;
    let s1 = svd(a).singular_values().first().copied().unwrap_or(0.0);
    let contraction = s1 <= 1.0 + tol;
    Ok(Structure { hermitian, normal, unitary, contraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::svd;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(CMatrix::new(2, 2, vec![ONE; 3]), Err(Error::Dimension(_))));
        assert!(matches!(
            CMatrix::new(1, 2, vec![ONE, c(f64::NAN, 0.0)]),
            Err(Error::NonFinite(1))
        ));
    }

    #[test]
    fn direct_sum_places_blocks() {
        let s = direct_sum(&CMatrix::from_real_diag(&[3.0]), &CMatrix::from_real_diag(&[4.0]));
        assert_eq!(s, CMatrix::from_real_diag(&[3.0, 4.0]));
        let a = CMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(direct_sum(&a, &CMatrix::zeros(0, 0)), a);
    }

    #[test]
    fn direct_sum_singular_values_merge() {
        // [[0,1],[0,0]] has Gram matrix diag(0,1): singular values (1, 0).
        let nil = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = direct_sum(&nil, &CMatrix::from_real_diag(&[2.0]));
        let sv = svd(&s).singular_values().to_vec();
        assert_eq!(sv.len(), 3);
        for (got, want) in sv.iter().zip([2.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn offdiag_layout_and_errors() {
        let m = block_offdiag(&CMatrix::from_real_diag(&[1.0]), &CMatrix::from_real_diag(&[2.0])).unwrap();
        assert_eq!(m, CMatrix::from_real(2, 2, &[0.0, 1.0, 2.0, 0.0]).unwrap());
        let z = block_offdiag(&CMatrix::zeros(2, 2), &CMatrix::zeros(2, 2)).unwrap();
        assert_eq!(z, CMatrix::zeros(4, 4));
        assert!(block_offdiag(&CMatrix::zeros(2, 2), &CMatrix::zeros(3, 3)).is_err());
        assert!(block_offdiag(&CMatrix::zeros(2, 3), &CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn offdiag_matches_direct_sum_spectrum() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let a = gaussian_with(&mut rng, 3, 3);
        let b = gaussian_with(&mut rng, 3, 3);
        let s1 = svd(&block_offdiag(&a, &b).unwrap()).singular_values().to_vec();
        let s2 = svd(&direct_sum(&a, &b)).singular_values().to_vec();
        for (x, y) in s1.iter().zip(&s2) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn haar_unitary_properties() {
        let one = haar_unitary(&RandomSpec::new(1, 3, MatrixKind::Unitary)).unwrap();
        assert!((one[(0, 0)].norm() - 1.0).abs() < 1e-15);

        let spec = RandomSpec::new(4, 11, MatrixKind::Unitary);
        let u = haar_unitary(&spec).unwrap();
        let defect = hs_norm_direct(&(&(&u.adjoint() * &u) - &CMatrix::identity(4)));
        assert!(defect <= 1e-12, "{defect}");
        assert_eq!(u, haar_unitary(&spec).unwrap());
        assert_ne!(u, haar_unitary(&RandomSpec { seed: 12, ..spec }).unwrap());
        assert!(haar_unitary(&RandomSpec::new(4, 1, MatrixKind::GeneralBounded)).is_err());
    }

    #[test]
    fn random_in_disk_properties() {
        let spec = RandomSpec::new(1, 5, MatrixKind::HermitianInDisk);
        let (a, d) = random_in_disk(&spec).unwrap();
        assert!(a[(0, 0)].im.abs() < 1e-15);
        assert!(a[(0, 0)].re.abs() < 0.9);
        assert_eq!(d.eigenvalues().len(), 1);

        for kind in [MatrixKind::HermitianInDisk, MatrixKind::NormalInDisk] {
            let spec = RandomSpec::new(6, 99, kind);
            let (a, d) = random_in_disk(&spec).unwrap();
            assert!(hs_norm_direct(&(&a - &d.reconstruct())) <= 1e-13);
            assert!(d.eigenvalues().iter().all(|z| z.norm() < 0.9));
            let flags = classify(&a, 1e-10).unwrap();
            assert!(flags.normal);
            if kind == MatrixKind::HermitianInDisk {
                assert!(hs_norm_direct(&(&a - &a.adjoint())) <= 1e-13);
                assert!(flags.hermitian);
            }
        }
        let bad = RandomSpec::new(3, 1, MatrixKind::NormalInDisk).with_radius(1.0);
        assert!(random_in_disk(&bad).is_err());
        assert!(random_in_disk(&RandomSpec::new(0, 1, MatrixKind::NormalInDisk)).is_err());
    }

    #[test]
    fn classify_examples() {
        let d = CMatrix::from_real_diag(&[0.5, -0.3]);
        let f = classify(&d, 1e-12).unwrap();
        assert_eq!(f, Structure { hermitian: true, normal: true, unitary: false, contraction: true });

        let nil = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let f = classify(&nil, 1e-12).unwrap();
        assert!(!f.hermitian && !f.normal && f.contraction && !f.unitary);

        let u = haar_unitary(&RandomSpec::new(5, 2, MatrixKind::Unitary)).unwrap();
        let f = classify(&u, 1e-10).unwrap();
        assert!(f.unitary && f.normal && f.contraction);

        assert!(matches!(classify(&CMatrix::zeros(2, 3), 1e-12), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let a = gaussian_with(&mut rng, 5, 5);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).max_abs_diff(&CMatrix::identity(5)) < 1e-12);
        assert!(matches!(CMatrix::zeros(2, 2).inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn json_is_bit_exact() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let a = gaussian_with(&mut rng, 3, 2);
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.starts_with(r#"{"rows":3,"cols":2,"entries":[["#));
        let back: CMatrix = serde_json::from_str(&text).unwrap();
        assert!(a.entries().iter().zip(back.entries()).all(|(x, y)| {
            x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()
        }));
        let bad = r#"{"rows":2,"cols":2,"entries":[[1,0]]}"#;
        assert!(serde_json::from_str::<CMatrix>(bad).is_err());
    }
}
