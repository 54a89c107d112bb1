use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::suites::Mode;
use super::SuiteConfig;
use crate::error::{Error, Result};
use crate::ineq::{IneqReport, Params};
use crate::norms::NormKind;

/// A report with `|slack|` at most this counts as an equality witness.
pub const EQUALITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Config(format!("unknown report format {other:?} (expected json or csv)"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

/// Enough to regenerate one evaluated instance and pick out one report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub suite: String,
    pub name: String,
    pub norm: Option<NormKind>,
    pub dim: usize,
    pub trial: usize,
    pub trial_seed: u64,
    pub spectrum_radius: f64,
    pub contour_nodes: usize,
    pub atol: f64,
    pub rtol: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub params: Params,
}

/// Aggregate over all trials of one report name in one norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckerSummary {
    pub suite: String,
    pub name: String,
    pub norm: Option<NormKind>,
    pub mode: Mode,
    pub trials: usize,
    pub violations: usize,
    pub min_slack: f64,
    pub mean_slack: f64,
    pub equality_witnesses: usize,
    /// The instance with the smallest slack.
    pub worst: Instance,
}

impl CheckerSummary {
    pub fn norm_label(&self) -> String {
        self.norm.map_or_else(|| "-".to_string(), |k| k.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub entries: Vec<CheckerSummary>,
    pub theorem_violations: usize,
    pub recording_violations: usize,
    /// Kept out of the serialized form so identical configs give identical
    /// bytes.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    /// 0 when no theorem suite reported a violation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.theorem_violations == 0 {
            0
        } else {
            1
        }
    }

    /// One line per recording-mode entry with at least one violation, plus a
    /// line per recording suite that found none.
    pub fn recording_status(&self) -> Vec<String> {
        let mut by_suite: Vec<(&str, usize, usize)> = Vec::new();
        for e in self.entries.iter().filter(|e| e.mode == Mode::Recording) {
            match by_suite.iter_mut().find(|(s, _, _)| *s == e.suite) {
                Some(row) => {
                    row.1 += e.trials;
                    row.2 += e.violations;
                }
                None => by_suite.push((&e.suite, e.trials, e.violations)),
            }
        }
        by_suite
            .into_iter()
            .map(|(suite, evaluations, violations)| {
                let status = if violations == 0 { "no counterexample found" } else { "counterexamples found" };
                format!("{suite}: {status} ({violations} of {evaluations} evaluations violate)")
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Key {
    name: String,
    norm: String,
}

/// Streaming aggregation in a fixed order.
pub(crate) struct Aggregator {
    entries: Vec<CheckerSummary>,
    sums: Vec<f64>,
    index: HashMap<(String, Key), usize>,
}

pub(crate) struct TrialTag<'a> {
    pub suite: &'a str,
    pub mode: Mode,
    pub dim: usize,
    pub trial: usize,
    pub trial_seed: u64,
    pub config: &'a SuiteConfig,
}

impl Aggregator {
    pub fn new() -> Self {
        Aggregator { entries: Vec::new(), sums: Vec::new(), index: HashMap::new() }
    }

    pub fn push(&mut self, tag: &TrialTag<'_>, r: IneqReport) {
        let key = Key { name: r.name.clone(), norm: r.norm.map_or_else(String::new, |k| k.label()) };
        let i = match self.index.get(&(tag.suite.to_string(), key.clone())) {
            Some(&i) => i,
            None => {
                let i = self.entries.len();
                self.entries.push(CheckerSummary {
                    suite: tag.suite.to_string(),
                    name: r.name.clone(),
                    norm: r.norm,
                    mode: tag.mode,
                    trials: 0,
                    violations: 0,
                    min_slack: f64::INFINITY,
                    mean_slack: 0.0,
                    equality_witnesses: 0,
                    worst: instance(tag, &r),
                });
                self.sums.push(0.0);
                self.index.insert((tag.suite.to_string(), key), i);
                i
            }
        };
        let e = &mut self.entries[i];
        e.trials += 1;
        e.violations += usize::from(!r.holds);
        e.equality_witnesses += usize::from(r.slack.abs() <= EQUALITY_SLACK);
        self.sums[i] += r.slack;
        if r.slack < e.min_slack {
            e.min_slack = r.slack;
            e.worst = instance(tag, &r);
        }
    }

    pub fn finish(mut self) -> Vec<CheckerSummary> {
        for (e, s) in self.entries.iter_mut().zip(&self.sums) {
            e.mean_slack = s / e.trials as f64;
        }
        self.entries
    }
}

fn instance(tag: &TrialTag<'_>, r: &IneqReport) -> Instance {
    Instance {
        suite: tag.suite.to_string(),
        name: r.name.clone(),
        norm: r.norm,
        dim: tag.dim,
        trial: tag.trial,
        trial_seed: tag.trial_seed,
        spectrum_radius: tag.config.spectrum_radius,
        contour_nodes: tag.config.contour_nodes,
        atol: tag.config.atol,
        rtol: tag.config.rtol,
        lhs: r.lhs,
        rhs: r.rhs,
        slack: r.slack,
        params: r.params.clone(),
    }
}

pub const CSV_HEADER: [&str; 6] = ["name", "norm", "trials", "violations", "min_slack", "mean_slack"];

pub fn render_report(report: &SuiteReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for e in &report.entries {
                w.write_record([
                    e.name.clone(),
                    e.norm_label(),
                    e.trials.to_string(),
                    e.violations.to_string(),
                    e.min_slack.to_string(),
                    e.mean_slack.to_string(),
                ])?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
    }
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &SuiteReport, format: ReportFormat, path: Option<&Path>) -> Result<()> {
    let bytes = render_report(report, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

pub fn read_report(path: &Path) -> Result<SuiteReport> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
