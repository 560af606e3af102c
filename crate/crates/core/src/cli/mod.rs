//! Command-line surface: `prolong`, `check`, `catalog` and `report`.
//!
//! Exit codes: 0 on success, 1 when a check fails or a tolerance is exceeded,
//! 2 on malformed input (including unknown suites and representations).

mod output;
mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Serialize;

pub use output::{render, ProlongationOutput, RunReport};
pub use suite::{run_suite, Suite, SuiteParams, Target, DIRECT_SUM_TOL, SWEEP_RESOLUTION};

use crate::catalog::{catalog_by_kind, catalog_entry, catalog_list, load_representation_file};
use crate::error::{Error, Result};
use crate::lie_core::{mat_exp, AlgebraElement, KindTag, TangentGroupElement};
use crate::matrix::max_abs;
use crate::prolongation::{apply_prolonged, differential_rep, prolong, tangent_action_oracle};
use crate::rep_algebra::{CheckReport, Sample, Witness, ORACLE_TOL};
use crate::tv_space::{canonical_basis, pair_tangents};

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "TANGENT_PROLONG_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "tangent-prolong", version, about = "Prolong matrix Lie group representations to tangent bundles")]
pub struct Cli {
    /// Number of random samples per check.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the prolonged matrix of a tangent group element.
    Prolong {
        /// Catalog name or path to a descriptor file.
        #[arg(long)]
        rep: String,
        /// Exponential coordinates of the base element (the angle on the circle).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        a_coords: Vec<f64>,
        /// Algebra coordinates of the fiber element B.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        fiber: Vec<f64>,
    },
    /// Run a verification suite on one representation.
    Check {
        #[arg(long)]
        rep: String,
        /// homomorphism, oracle, equivalence, invariance, directsum, faithfulness or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// List the built-in representations.
    Catalog {
        /// Restrict to one group kind, e.g. `circle` or `general_linear`.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Run every suite on every catalog entry.
    Report,
}

/// The effective configuration of a run, echoed in every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep_source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub format: Format,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        if cli.samples == 0 {
            return Err(Error::Descriptor("--samples must be at least 1".into()));
        }
        if !(cli.tol > 0.0 && cli.tol.is_finite()) {
            return Err(Error::Descriptor("--tol must be positive and finite".into()));
        }
        let (command, rep_source, suite) = match &cli.command {
            Command::Prolong { rep, .. } => ("prolong", Some(rep.clone()), None),
            Command::Check { rep, suite } => ("check", Some(rep.clone()), Some(suite.clone())),
            Command::Catalog { .. } => ("catalog", None, None),
            Command::Report => ("report", None, None),
        };
        Ok(Self {
            command: command.into(),
            rep_source,
            suite,
            samples: cli.samples,
            seed: cli.seed,
            tol: cli.tol,
            format: cli.format,
            output: cli.output.clone(),
        })
    }

    fn params(&self) -> SuiteParams {
        SuiteParams {
            samples: self.samples,
            seed: self.seed,
            tol: self.tol,
        }
    }
}

/// Resolves a catalog name, falling back to a descriptor file path.
pub fn resolve_target(source: &str) -> Result<Target<'static>> {
    match catalog_entry(source) {
        Ok(entry) => Ok(Target::from_entry(entry)),
        Err(Error::UnknownRepresentation(_)) if std::path::Path::new(source).is_file() => {
            Ok(Target::from_rep(load_representation_file(source)?))
        }
        Err(e) => Err(e),
    }
}

/// Computes `prolong(Phi, [exp(a), B])` and its discrepancy against the
/// finite-difference oracle over the canonical basis of `TV`.
pub fn cmd_prolong(config: &RunConfig, a_coords: &[f64], fiber: &[f64]) -> Result<RunReport> {
    let target = resolve_target(config.rep_source.as_deref().unwrap_or_default())?;
    let rep = &target.rep;
    let group = rep.group();
    let a = mat_exp(&AlgebraElement::from_coords(group.clone(), a_coords)?, 1.0)?;
    let b = AlgebraElement::from_coords(group.clone(), fiber)?;
    let k = differential_rep(rep, &b)?;
    let x = TangentGroupElement::new(a, b)?;
    let m = prolong(rep, &x)?;

    let mut discrepancy = 0.0_f64;
    for y in canonical_basis(rep.target_dim())?.vectors() {
        let lhs = apply_prolonged(&m, y)?.coordinates();
        let rhs = tangent_action_oracle(rep, &pair_tangents(&x, y))?.coordinates();
        discrepancy = discrepancy.max((&lhs - &rhs).amax() / rhs.amax().max(1.0));
    }
    let check = if discrepancy < ORACLE_TOL {
        CheckReport::pass("oracle_discrepancy", discrepancy)
    } else {
        CheckReport::fail(
            "oracle_discrepancy",
            discrepancy,
            Witness::Input {
                sample: Sample::Tangent(x.clone()),
            },
        )
    };
    let rows = |d: &DMatrix<f64>| d.row_iter().map(|r| r.iter().copied().collect()).collect();
    let prolongation = ProlongationOutput {
        rep: rep.name().to_string(),
        element: x.clone(),
        r: rows(m.top_left()),
        k: rows(k.as_matrix()),
        kr: rows(m.bottom_left()),
        matrix: rows(&m.dense()),
        identity: max_abs(&(m.dense() - DMatrix::identity(2 * m.n(), 2 * m.n()))) == 0.0,
    };
    Ok(RunReport::new(config, vec![check]).with_prolongation(prolongation))
}

pub fn cmd_check(config: &RunConfig) -> Result<RunReport> {
    let suite: Suite = config.suite.as_deref().unwrap_or("all").parse()?;
    let target = resolve_target(config.rep_source.as_deref().unwrap_or_default())?;
    let checks = run_suite(&target, suite, config.params())?;
    Ok(RunReport::new(config, checks))
}

pub fn cmd_catalog(config: &RunConfig, kind: Option<&str>) -> Result<RunReport> {
    let entries = match kind {
        Some(k) => catalog_by_kind(k.parse::<KindTag>()?),
        None => catalog_list().iter().collect(),
    };
    Ok(RunReport::new(config, vec![]).with_catalog(entries))
}

/// Every suite on every catalog entry; check names are prefixed with the entry.
///
/// Failures on entries whose catalog metadata predicts them (faithfulness of
/// non-faithful entries) are kept in the report but do not count towards the
/// exit code.
pub fn cmd_report(config: &RunConfig) -> Result<RunReport> {
    let mut checks = vec![];
    for entry in catalog_list() {
        for r in run_suite(&Target::from_entry(entry), Suite::All, config.params())? {
            let name = format!("{}/{}", entry.name, r.name);
            checks.push(r.renamed(name));
        }
    }
    Ok(RunReport::new(config, checks))
}

/// Whether a failed check in a `report` run is predicted by the catalog.
pub fn expected_failure(check: &CheckReport) -> bool {
    let Some((entry, name)) = check.name.split_once('/') else {
        return false;
    };
    name == "faithfulness" && catalog_entry(entry).is_ok_and(|e| !e.known_faithful)
}

fn exit_code(report: &RunReport) -> i32 {
    let unexpected = report
        .checks
        .iter()
        .filter(|c| c.failed())
        .any(|c| report.command != "report" || !expected_failure(c));
    i32::from(unexpected)
}

/// Runs a parsed command line, writing the rendered report to `out` unless an
/// output path is configured. Returns the process exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let report = match &cli.command {
            Command::Prolong { a_coords, fiber, .. } => cmd_prolong(&config, a_coords, fiber)?,
            Command::Check { .. } => cmd_check(&config)?,
            Command::Catalog { kind } => cmd_catalog(&config, kind.as_deref())?,
            Command::Report => cmd_report(&config)?,
        };
        let text = render(&report, config.format)?;
        match &config.output {
            Some(path) => std::fs::write(path, text)?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(report)
    });
    match result {
        Ok(report) => exit_code(&report),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Parses `args` (including the program name) and runs them against the
/// process's standard streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    execute(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
