//! Unitarily invariant norms (operator, Hilbert-Schmidt, Schatten-p, Ky Fan-k)
//! and the structural norm identities for direct sums.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::{IneqReport, Params, Tolerance};
use crate::matcore::{block_offdiag, direct_sum, CMatrix};
use crate::spectral::singular_values;

/// A unitarily invariant norm, evaluated from singular values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum NormKind {
    Operator,
    HilbertSchmidt,
    Schatten { p: f64 },
    #[serde(rename = "kyfan")]
    KyFan { k: usize },
}

/// Schatten exponents in the audit grid (the operator and HS norms are listed
/// separately).
pub const AUDIT_SCHATTEN_P: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];

/// Exponents used by the Ky Fan dominance conclusion check.
pub const DOMINANCE_P: [f64; 6] = [1.0, 1.5, 2.0, 3.0, 5.0, f64::INFINITY];

impl NormKind {
    pub fn schatten(p: f64) -> Result<Self> {
        if p >= 1.0 {
            Ok(NormKind::Schatten { p })
        } else {
            Err(Error::Config(format!("Schatten exponent {p} must be >= 1")))
        }
    }

    pub fn kyfan(k: usize) -> Result<Self> {
        if k >= 1 {
            Ok(NormKind::KyFan { k })
        } else {
            Err(Error::Config("Ky Fan index must be >= 1".into()))
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NormKind::Schatten { p } => NormKind::schatten(p).map(|_| ()),
            NormKind::KyFan { k } => NormKind::kyfan(k).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Short label, also accepted by [`NormKind::parse`].
    pub fn label(&self) -> String {
        match self {
            NormKind::Operator => "operator".into(),
            NormKind::HilbertSchmidt => "hs".into(),
            NormKind::Schatten { p } => format!("schatten({p})"),
            NormKind::KyFan { k } => format!("kyfan({k})"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let arg = |prefix: &str| {
            s.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'))
        };
        match s {
            "operator" | "op" => Ok(NormKind::Operator),
            "hs" | "hilbert-schmidt" | "frobenius" => Ok(NormKind::HilbertSchmidt),
            _ => {
                if let Some(p) = arg("schatten") {
                    let p = if p == "inf" { f64::INFINITY } else { parse_num(p)? };
                    NormKind::schatten(p)
                } else if let Some(k) = arg("kyfan") {
                    NormKind::kyfan(k.parse().map_err(|_| Error::Config(format!("bad Ky Fan index {k:?}")))?)
                } else {
                    Err(Error::Config(format!("unknown norm {s:?}")))
                }
            }
        }
    }
}

fn parse_num(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Config(format!("bad number {s:?}")))
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Operator, HS, Schatten p over [`AUDIT_SCHATTEN_P`] and Ky Fan `1..=size`.
///
/// Ky Fan dominance makes the Ky Fan family decisive: `|||X||| <= |||Y|||` for
/// every unitarily invariant norm iff it holds for every Ky Fan norm. The
/// Schatten entries are spot checks of norms in between.
pub fn audit_grid(size: usize) -> Vec<NormKind> {
    let mut grid = vec![NormKind::Operator, NormKind::HilbertSchmidt];
    grid.extend(AUDIT_SCHATTEN_P.iter().map(|&p| NormKind::Schatten { p }));
    grid.extend((1..=size).map(|k| NormKind::KyFan { k }));
    grid
}

/// Norm from a non-increasing list of singular values. Missing values count as
/// zero, so Ky Fan indices past the end clamp to the full sum.
pub fn norm_from_singular_values(s: &[f64], kind: NormKind) -> f64 {
    let top = s.first().copied().unwrap_or(0.0);
    match kind {
        NormKind::Operator => top,
        NormKind::KyFan { k } => s.iter().take(k).sum(),
        NormKind::HilbertSchmidt => schatten(s, 2.0),
        NormKind::Schatten { p } if p.is_infinite() => top,
        NormKind::Schatten { p } => schatten(s, p),
    }
}

fn schatten(s: &[f64], p: f64) -> f64 {
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0.0;
    }
    // scaled by s_1 so large p neither overflows nor underflows
    top * s.iter().map(|&x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn uinorm(a: &CMatrix, kind: NormKind) -> f64 {
    norm_from_singular_values(&singular_values(a), kind)
}

/// Spectral norm `s_1(A)`.
pub fn op_norm(a: &CMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Entrywise `(Σ |a_ij|^2)^{1/2}`, independent of any factorization.
pub fn hs_norm_direct(a: &CMatrix) -> f64 {
    let top = a.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    top * a.entries().iter().map(|z| (z.norm() / top).powi(2)).sum::<f64>().sqrt()
}

/// `|||AXB||| <= ‖A‖ ‖B‖ |||X|||` for each requested norm.
pub fn check_submultiplicative(
    a: &CMatrix,
    b: &CMatrix,
    x: &CMatrix,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<Vec<IneqReport>> {
    let ax = a.try_mul(x)?;
    let axb = ax.try_mul(b)?;
    let lhs_sv = singular_values(&axb);
    let x_sv = singular_values(x);
    let factor = op_norm(a) * op_norm(b);
    Ok(kinds
        .iter()
        .map(|&kind| {
            IneqReport::new(
                "submultiplicative",
                Some(kind),
                norm_from_singular_values(&lhs_sv, kind),
                factor * norm_from_singular_values(&x_sv, kind),
                tol,
                Params::new(),
            )
        })
        .collect())
}

/// Checks `‖A⊕B‖ = max(‖A‖, ‖B‖)`, `‖A⊕B‖₂² = ‖A‖₂² + ‖B‖₂²` and
/// `|||[[0,A],[B,0]]||| = |||A⊕B|||` over `kinds`.
///
/// The report's `lhs` is the largest absolute defect and `rhs` is zero, so
/// `holds` means every identity is met to the absolute tolerance.
pub fn check_direct_sum_identities(
    a: &CMatrix,
    b: &CMatrix,
    kinds: &[NormKind],
    tol: &Tolerance,
) -> Result<IneqReport> {
    let sum = direct_sum(a, b);
    let sum_sv = singular_values(&sum);
    let op = |m: &CMatrix| op_norm(m);
    let d_op = (norm_from_singular_values(&sum_sv, NormKind::Operator) - op(a).max(op(b))).abs();
    let hs_sum = norm_from_singular_values(&sum_sv, NormKind::HilbertSchmidt);
    let (ha, hb) = (hs_norm_direct(a), hs_norm_direct(b));
    let d_hs = (hs_sum - (ha * ha + hb * hb).sqrt()).abs();
    let off_sv = singular_values(&block_offdiag(a, b)?);
    let d_block = kinds
        .iter()
        .map(|&k| (norm_from_singular_values(&off_sv, k) - norm_from_singular_values(&sum_sv, k)).abs())
        .fold(0.0, f64::max);
    let defect = d_op.max(d_hs).max(d_block);
    let mut params = Params::new();
    params.insert("operator_defect".into(), d_op.into());
    params.insert("hs_defect".into(), d_hs.into());
    params.insert("block_defect".into(), d_block.into());
    Ok(IneqReport::new("direct_sum_identities", None, defect, 0.0, tol, params))
}

/// If `X` is Ky Fan dominated by `Y`, checks that every Schatten norm in
/// [`DOMINANCE_P`] inherits the ordering.
///
/// When the premise fails the report holds vacuously with `lhs = rhs = 0` and
/// `params.premise = false`; otherwise it carries the tightest conclusion.
pub fn kyfan_dominance_check(x: &CMatrix, y: &CMatrix, tol: &Tolerance) -> Result<IneqReport> {
    if x.shape() != y.shape() {
        return Err(Error::Dimension(format!("{:?} vs {:?}", x.shape(), y.shape())));
    }
    let sx = singular_values(x);
    let sy = singular_values(y);
    let mut params = Params::new();
    let mut px = 0.0;
    let mut py = 0.0;
    let mut premise = true;
    for (k, (a, b)) in sx.iter().zip(&sy).enumerate() {
        px += a;
        py += b;
        if !tol.holds(px, py) {
            premise = false;
            params.insert("premise_fails_at_k".into(), (k + 1).into());
            break;
        }
    }
    params.insert("premise".into(), premise.into());
    if !premise {
        return Ok(IneqReport::new("kyfan_dominance", None, 0.0, 0.0, tol, params));
    }
    let worst = DOMINANCE_P
        .iter()
        .map(|&p| {
            let kind = NormKind::Schatten { p };
            let l = norm_from_singular_values(&sx, kind);
            let r = norm_from_singular_values(&sy, kind);
            (p, l, r)
        })
        .min_by(|a, b| (a.2 - a.1).total_cmp(&(b.2 - b.1)))
        .expect("non-empty exponent list");
    params.insert("worst_p".into(), if worst.0.is_infinite() { "inf".into() } else { worst.0.into() });
    Ok(IneqReport::new("kyfan_dominance", None, worst.1, worst.2, tol, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{gaussian_with, haar_unitary_with};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn uinorm_examples() {
        let d = CMatrix::from_real_diag(&[3.0, 4.0]);
        assert_eq!(uinorm(&d, NormKind::Operator), 4.0);
        assert_eq!(uinorm(&d, NormKind::KyFan { k: 2 }), 7.0);
        assert!((uinorm(&d, NormKind::Schatten { p: 2.0 }) - 5.0).abs() < 1e-15);
        assert_eq!(uinorm(&d, NormKind::KyFan { k: 9 }), 7.0);
        for kind in audit_grid(3) {
            assert_eq!(uinorm(&CMatrix::zeros(3, 3), kind), 0.0);
        }
        let ones = CMatrix::from_real(2, 2, &[1.0; 4]).unwrap();
        assert!((uinorm(&ones, NormKind::Schatten { p: 1.0 }) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hs_direct_examples() {
        assert_eq!(hs_norm_direct(&CMatrix::from_real(2, 2, &[1.0; 4]).unwrap()), 2.0);
        assert_eq!(hs_norm_direct(&CMatrix::from_real_diag(&[3.0, 4.0])), 5.0);
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let a = gaussian_with(&mut rng, 6, 6);
        let h = hs_norm_direct(&a);
        assert!((h - uinorm(&a, NormKind::HilbertSchmidt)).abs() <= 1e-10 * h);
    }

    #[test]
    fn kind_consistency() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let a = gaussian_with(&mut rng, 5, 5);
        let s = singular_values(&a);
        let op = norm_from_singular_values(&s, NormKind::Operator);
        assert_eq!(op, norm_from_singular_values(&s, NormKind::KyFan { k: 1 }));
        assert_eq!(op, norm_from_singular_values(&s, NormKind::Schatten { p: f64::INFINITY }));
        assert!((op - norm_from_singular_values(&s, NormKind::Schatten { p: 64.0 })).abs() <= 1e-6 * op);
        let hs = norm_from_singular_values(&s, NormKind::HilbertSchmidt);
        assert!((hs - norm_from_singular_values(&s, NormKind::Schatten { p: 2.0 })).abs() <= 1e-12 * hs);
    }

    #[test]
    fn parse_and_validate() {
        for kind in audit_grid(4) {
            assert_eq!(NormKind::parse(&kind.label()).unwrap(), kind);
        }
        assert!(NormKind::parse("schatten(0.5)").is_err());
        assert!(NormKind::parse("kyfan(0)").is_err());
        assert!(NormKind::parse("nuclear").is_err());
        assert!(NormKind::Schatten { p: 0.3 }.validate().is_err());
    }

    #[test]
    fn norm_json_shape() {
        let j = serde_json::to_string(&NormKind::KyFan { k: 2 }).unwrap();
        assert_eq!(j, r#"{"tag":"kyfan","k":2}"#);
        let j = serde_json::to_string(&NormKind::Schatten { p: 1.5 }).unwrap();
        assert_eq!(j, r#"{"tag":"schatten","p":1.5}"#);
        assert_eq!(serde_json::to_string(&NormKind::HilbertSchmidt).unwrap(), r#"{"tag":"hilbert-schmidt"}"#);
    }

    #[test]
    fn submultiplicative_examples() {
        let tol = Tolerance::default();
        let i = CMatrix::identity(3);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let x = gaussian_with(&mut rng, 3, 3);
        for r in check_submultiplicative(&i, &i, &x, &audit_grid(3), &tol).unwrap() {
            assert!(r.holds && r.slack.abs() < 1e-12);
        }
        let z = CMatrix::zeros(2, 2);
        let r = check_submultiplicative(&z, &z, &z, &[NormKind::Operator], &tol).unwrap();
        assert_eq!((r[0].lhs, r[0].rhs), (0.0, 0.0));
        let (a, b, x) = (gaussian_with(&mut rng, 4, 4), gaussian_with(&mut rng, 4, 4), gaussian_with(&mut rng, 4, 4));
        let r = check_submultiplicative(&a, &b, &x, &[NormKind::Schatten { p: 3.0 }], &tol).unwrap();
        assert!(r[0].holds && r[0].slack > 0.0);
        assert!(check_submultiplicative(&a, &b, &CMatrix::zeros(3, 3), &[NormKind::Operator], &tol).is_err());
    }

    #[test]
    fn direct_sum_identity_examples() {
        let tol = Tolerance::default();
        let r = check_direct_sum_identities(
            &CMatrix::from_real_diag(&[1.0]),
            &CMatrix::from_real_diag(&[2.0]),
            &audit_grid(2),
            &tol,
        )
        .unwrap();
        assert!(r.holds && r.lhs < 1e-15);
        let s = singular_values(&direct_sum(&CMatrix::from_real_diag(&[1.0]), &CMatrix::from_real_diag(&[2.0])));
        assert_eq!(s[0], 2.0);
        assert!((norm_from_singular_values(&s, NormKind::HilbertSchmidt) - 5f64.sqrt()).abs() < 1e-15);

        let mut rng = ChaCha20Rng::seed_from_u64(12);
        let a = gaussian_with(&mut rng, 3, 3);
        let z = CMatrix::zeros(3, 3);
        assert!((op_norm(&direct_sum(&a, &z)) - op_norm(&a)).abs() < 1e-14);
        let b = gaussian_with(&mut rng, 3, 3);
        let r = check_direct_sum_identities(&a, &b, &audit_grid(6), &tol).unwrap();
        assert!(r.holds && r.lhs <= 1e-10, "{}", r.lhs);
    }

    #[test]
    fn dominance_examples() {
        let tol = Tolerance::default();
        let mut rng = ChaCha20Rng::seed_from_u64(14);
        let x = gaussian_with(&mut rng, 3, 3);
        let r = kyfan_dominance_check(&x, &x.scale_real(2.0), &tol).unwrap();
        assert_eq!(r.params["premise"], true);
        assert!(r.holds && r.slack > 0.0);
        let r = kyfan_dominance_check(&x, &x, &tol).unwrap();
        assert!(r.holds && r.slack.abs() < 1e-12);
        let r = kyfan_dominance_check(&CMatrix::from_real_diag(&[3.0, 0.0]), &CMatrix::from_real_diag(&[2.0, 2.0]), &tol)
            .unwrap();
        assert_eq!(r.params["premise"], false);
        assert_eq!(r.params["premise_fails_at_k"], 1);
        assert!(kyfan_dominance_check(&x, &CMatrix::zeros(2, 2), &tol).is_err());
    }

    #[test]
    fn unitary_invariance() {
        let mut rng = ChaCha20Rng::seed_from_u64(15);
        let x = gaussian_with(&mut rng, 5, 5);
        let u = haar_unitary_with(&mut rng, 5);
        let v = haar_unitary_with(&mut rng, 5);
        let y = &(&u * &x) * &v;
        for kind in audit_grid(5) {
            let (a, b) = (uinorm(&x, kind), uinorm(&y, kind));
            assert!((a - b).abs() <= 1e-9 * a, "{kind}");
        }
    }
}
