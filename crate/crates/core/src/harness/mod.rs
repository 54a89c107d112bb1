//! Seeded randomized suites over every checker, with aggregation, report
//! emission and bit-exact replay of stored instances.

mod report;
mod suites;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::{IneqReport, Tolerance};
use crate::matcore::{classify, CMatrix, Structure};
use crate::norms::{norm_from_singular_values, NormKind};
use crate::spectral::singular_values;

pub use report::{
    emit_report, read_report, render_report, CheckerSummary, Instance, ReportFormat, SuiteReport, CSV_HEADER,
    EQUALITY_SLACK,
};
pub use suites::{find_suite, trial_seed, Mode, Suite, TrialContext, SUITES};

use report::{Aggregator, TrialTag};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    #[serde(alias = "radius")]
    pub spectrum_radius: f64,
    pub atol: f64,
    pub rtol: f64,
    /// Suite ids, or `"all"`.
    #[serde(alias = "suite")]
    pub suites: Vec<String>,
    pub contour_nodes: usize,
    #[serde(alias = "format")]
    pub report_format: ReportFormat,
    /// Where the report goes; not echoed into the report itself.
    #[serde(alias = "out", skip_serializing)]
    pub output_path: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let tol = Tolerance::default();
        SuiteConfig {
            trials: 200,
            dims: vec![2, 3, 4, 6, 8],
            seed: 42,
            spectrum_radius: crate::matcore::DEFAULT_SPECTRUM_RADIUS,
            atol: tol.atol,
            rtol: tol.rtol,
            suites: vec!["all".into()],
            contour_nodes: crate::herglotz::DEFAULT_CONTOUR_NODES,
            report_format: ReportFormat::Json,
            output_path: None,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SuiteConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance { atol: self.atol, rtol: self.rtol }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad(format!("dims must be a non-empty list of positive sizes, got {:?}", self.dims));
        }
        if !(self.spectrum_radius > 0.0 && self.spectrum_radius < 1.0) {
            return bad(format!("spectrum_radius {} must lie in (0, 1)", self.spectrum_radius));
        }
        for (label, v) in [("atol", self.atol), ("rtol", self.rtol)] {
            if !(v >= 0.0 && v.is_finite()) {
                return bad(format!("{label} must be a non-negative number, got {v}"));
            }
        }
        if self.contour_nodes == 0 {
            return bad("contour_nodes must be at least 1".into());
        }
        self.selected_suites().map(|_| ())
    }

    /// Suites in run order. `"all"` expands to the full registry; duplicates
    /// are dropped.
    pub fn selected_suites(&self) -> Result<Vec<&'static Suite>> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        let mut out: Vec<&'static Suite> = Vec::new();
        for id in &self.suites {
            let add: Vec<&'static Suite> = if id == "all" {
                SUITES.iter().collect()
            } else {
                vec![find_suite(id).ok_or_else(|| Error::Config(format!("unknown suite {id:?}")))?]
            };
            for s in add {
                if !out.iter().any(|t| t.id == s.id) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }
}

/// Runs every selected suite over `dims × trials`. Trials run in parallel;
/// aggregation walks them in order, so the result does not depend on the
/// thread count.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let tol = config.tolerance();
    let mut agg = Aggregator::new();
    for suite in config.selected_suites()? {
        for &dim in &config.dims {
            let ctx = TrialContext {
                dim,
                spectrum_radius: config.spectrum_radius,
                contour_nodes: config.contour_nodes,
                tol,
            };
            let results: Vec<(u64, Result<Vec<IneqReport>>)> = (0..config.trials)
                .into_par_iter()
                .map(|trial| {
                    let seed = trial_seed(config.seed, suite.id, dim, trial);
                    (seed, suite.evaluate(&ctx, seed))
                })
                .collect();
            for (trial, (seed, result)) in results.into_iter().enumerate() {
                let reports = result.map_err(|e| Error::Trial {
                    suite: suite.id.to_string(),
                    dim,
                    trial,
                    source: Box::new(e),
                })?;
                let tag = TrialTag { suite: suite.id, mode: suite.mode, dim, trial, trial_seed: seed, config };
                for r in reports {
                    agg.push(&tag, r);
                }
            }
        }
    }
    let entries = agg.finish();
    let count = |mode: Mode| entries.iter().filter(|e| e.mode == mode).map(|e| e.violations).sum();
    Ok(SuiteReport {
        config: SuiteConfig { output_path: None, ..config.clone() },
        theorem_violations: count(Mode::Theorem),
        recording_violations: count(Mode::Recording),
        entries,
        wall_time: start.elapsed(),
    })
}

/// Regenerates a stored instance and re-evaluates the report it names.
pub fn replay(instance: &Instance) -> Result<IneqReport> {
    let suite = find_suite(&instance.suite).ok_or_else(|| Error::Replay(format!("unknown suite {:?}", instance.suite)))?;
    if instance.dim == 0 {
        return Err(Error::Replay("dim must be positive".into()));
    }
    let ctx = TrialContext {
        dim: instance.dim,
        spectrum_radius: instance.spectrum_radius,
        contour_nodes: instance.contour_nodes,
        tol: Tolerance { atol: instance.atol, rtol: instance.rtol },
    };
    suite
        .evaluate(&ctx, instance.trial_seed)?
        .into_iter()
        .find(|r| r.name == instance.name && r.norm == instance.norm)
        .ok_or_else(|| {
            Error::Replay(format!("suite {} produced no report {} in the stored norm", instance.suite, instance.name))
        })
}

/// Structure flags, singular values and norms of one matrix.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixSummary {
    pub rows: usize,
    pub cols: usize,
    pub structure: Option<Structure>,
    pub singular_values: Vec<f64>,
    pub norms: Vec<NormValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormValue {
    pub norm: NormKind,
    pub label: String,
    pub value: f64,
}

/// Tolerance used for the structure flags of [`matrix_summary`].
pub const STRUCTURE_TOL: f64 = 1e-10;

pub fn matrix_summary(m: &CMatrix, kinds: &[NormKind]) -> Result<MatrixSummary> {
    let s = singular_values(m);
    let structure = if m.is_square() { Some(classify(m, STRUCTURE_TOL)?) } else { None };
    let norms = kinds
        .iter()
        .map(|&k| {
            k.validate()?;
            Ok(NormValue { norm: k, label: k.label(), value: norm_from_singular_values(&s, k) })
        })
        .collect::<Result<_>>()?;
    Ok(MatrixSummary { rows: m.rows(), cols: m.cols(), structure, singular_values: s, norms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: &str) -> SuiteConfig {
        SuiteConfig { trials: 3, dims: vec![2, 3], suites: vec![suite.into()], ..SuiteConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let zero = SuiteConfig { trials: 0, ..SuiteConfig::default() };
        assert!(matches!(zero.validate(), Err(Error::Config(_))));
        let unknown = SuiteConfig { suites: vec!["nope".into()], ..SuiteConfig::default() };
        assert!(matches!(unknown.validate(), Err(Error::Config(_))));
        let radius = SuiteConfig { spectrum_radius: 1.0, ..SuiteConfig::default() };
        assert!(radius.validate().is_err());
        assert!(SuiteConfig::from_json(r#"{"trials": 5, "bogus": 1}"#).is_err());
        let c = SuiteConfig::from_json(r#"{"trials": 5, "radius": 0.5, "suite": ["prior"], "format": "csv"}"#).unwrap();
        assert_eq!((c.trials, c.spectrum_radius, c.report_format), (5, 0.5, ReportFormat::Csv));
        assert_eq!(c.dims, vec![2, 3, 4, 6, 8]);
    }

    #[test]
    fn all_expands_without_duplicates() {
        let c = SuiteConfig { suites: vec!["prior".into(), "all".into()], ..SuiteConfig::default() };
        let s = c.selected_suites().unwrap();
        assert_eq!(s.len(), SUITES.len());
        assert_eq!(s[0].id, "prior");
    }

    #[test]
    fn single_trial_single_dim() {
        let c = SuiteConfig { trials: 1, dims: vec![1], suites: vec!["conj_bound".into()], ..SuiteConfig::default() };
        let r = run_suite(&c).unwrap();
        assert!(!r.entries.is_empty());
        for e in &r.entries {
            assert_eq!((e.trials, e.violations), (1, 0));
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn worst_instances_replay_exactly() {
        let r = run_suite(&small("block_two_term")).unwrap();
        for e in &r.entries {
            let again = replay(&e.worst).unwrap();
            assert_eq!(again.lhs.to_bits(), e.worst.lhs.to_bits());
            assert_eq!(again.rhs.to_bits(), e.worst.rhs.to_bits());
            assert_eq!(again.slack, e.min_slack);
        }
        let mut other = r.entries[0].worst.clone();
        other.trial_seed ^= 1;
        assert_ne!(replay(&other).unwrap().lhs, r.entries[0].worst.lhs);
    }

    #[test]
    fn recording_violations_do_not_set_exit_code() {
        let mut c = small("pos_multiplier_plus");
        c.trials = 20;
        let r = run_suite(&c).unwrap();
        assert_eq!(r.theorem_violations, 0);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.recording_status().len(), 1);
    }

    #[test]
    fn csv_shape() {
        let r = run_suite(&small("real_part")).unwrap();
        let text = String::from_utf8(render_report(&r, ReportFormat::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines.len(), 1 + r.entries.len());
    }

    #[test]
    fn matrix_summary_values() {
        let m = CMatrix::from_real_diag(&[3.0, 4.0]);
        let s = matrix_summary(&m, &[NormKind::Operator, NormKind::kyfan(2).unwrap()]).unwrap();
        assert_eq!(s.singular_values, vec![4.0, 3.0]);
        assert_eq!(s.norms[1].value, 7.0);
        assert!(s.structure.unwrap().hermitian);
    }
}
