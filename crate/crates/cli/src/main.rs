use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gnormlab_core::harness::{self, ReportFormat, SuiteConfig};
use gnormlab_core::norms::{audit_grid, NormKind};
use gnormlab_core::{CMatrix, Error};

/// Randomized verification of norm inequalities for Herglotz functions of
/// matrices.
#[derive(Parser)]
#[command(name = "gnormlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites and write an aggregated report.
    Run(RunArgs),
    /// Re-evaluate the worst instance stored in a JSON report.
    Replay {
        #[arg(long)]
        from: PathBuf,
        /// Entry index in the report (0-based).
        #[arg(long)]
        index: usize,
    },
    /// Print structure flags, singular values and norms of a matrix file.
    CheckMatrix {
        #[arg(long)]
        file: PathBuf,
        /// `all`, or a comma-separated list such as `operator,schatten(3),kyfan(2)`.
        #[arg(long, default_value = "all")]
        norms: String,
    },
    /// List the available suites.
    Suites,
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite ids or `all`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    suite: Option<Vec<String>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    contour_nodes: Option<usize>,
    #[arg(long)]
    format: Option<ReportFormat>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn into_config(self) -> Result<SuiteConfig, Error> {
        let mut c = match &self.config {
            Some(p) => SuiteConfig::from_json(&std::fs::read_to_string(p)?)?,
            None => SuiteConfig::default(),
        };
        if let Some(v) = self.suite {
            c.suites = v;
        }
        if let Some(v) = self.trials {
            c.trials = v;
        }
        if let Some(v) = self.dims {
            c.dims = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.radius {
            c.spectrum_radius = v;
        }
        if let Some(v) = self.atol {
            c.atol = v;
        }
        if let Some(v) = self.rtol {
            c.rtol = v;
        }
        if let Some(v) = self.contour_nodes {
            c.contour_nodes = v;
        }
        if let Some(v) = self.format {
            c.report_format = v;
        }
        if self.out.is_some() {
            c.output_path = self.out;
        }
        c.validate()?;
        Ok(c)
    }
}

fn run(args: RunArgs) -> Result<u8, Error> {
    let config = args.into_config()?;
    let report = harness::run_suite(&config)?;
    harness::emit_report(&report, config.report_format, config.output_path.as_deref())?;
    for e in report.entries.iter().filter(|e| e.violations > 0 && e.mode == harness::Mode::Theorem) {
        eprintln!(
            "VIOLATION {} [{}]: {} of {} trials, min slack {:e}",
            e.name,
            e.norm_label(),
            e.violations,
            e.trials,
            e.min_slack
        );
    }
    for line in report.recording_status() {
        eprintln!("recording {line}");
    }
    eprintln!(
        "{} entries, {} theorem violations, wall time {:.2}s",
        report.entries.len(),
        report.theorem_violations,
        report.wall_time.as_secs_f64()
    );
    Ok(report.exit_code() as u8)
}

fn replay(from: &Path, index: usize) -> Result<u8, Error> {
    let report = harness::read_report(from)?;
    let entry = report
        .entries
        .get(index)
        .ok_or_else(|| Error::Replay(format!("index {index} out of range ({} entries)", report.entries.len())))?;
    let again = harness::replay(&entry.worst)?;
    let exact = again.lhs.to_bits() == entry.worst.lhs.to_bits() && again.rhs.to_bits() == entry.worst.rhs.to_bits();
    println!("{}", serde_json::to_string_pretty(&again)?);
    eprintln!("{}", if exact { "replay matches stored values" } else { "replay DIFFERS from stored values" });
    Ok(if exact { 0 } else { 1 })
}

fn check_matrix(file: &Path, norms: &str) -> Result<u8, Error> {
    let m: CMatrix = serde_json::from_str(&std::fs::read_to_string(file)?)?;
    let kinds = if norms == "all" {
        audit_grid(m.rows().min(m.cols()))
    } else {
        split_norms(norms).iter().map(|s| NormKind::parse(s)).collect::<Result<Vec<_>, _>>()?
    };
    let summary = harness::matrix_summary(&m, &kinds)?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(0)
}

/// Splits on commas outside parentheses.
fn split_norms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out.retain(|s| !s.is_empty());
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Replay { from, index } => replay(&from, index),
        Command::CheckMatrix { file, norms } => check_matrix(&file, &norms),
        Command::Suites => {
            for s in harness::SUITES {
                let mode = match s.mode {
                    harness::Mode::Theorem => "theorem",
                    harness::Mode::Recording => "recording",
                };
                println!("{:<24} {:<10} {}", s.id, mode, s.summary);
            }
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) => 3,
                _ => 2,
            })
        }
    }
}
