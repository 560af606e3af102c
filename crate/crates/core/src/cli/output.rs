use std::fmt::Write as _;

use serde::Serialize;

use super::{Format, RunConfig};
use crate::catalog::{CatalogEntry, EntrySummary};
use crate::error::Result;
use crate::lie_core::TangentGroupElement;
use crate::rep_algebra::CheckReport;

#[derive(Clone, Debug, Serialize)]
pub struct ProlongationOutput {
    pub rep: String,
    pub element: TangentGroupElement,
    /// `R = Phi(a)`.
    pub r: Vec<Vec<f64>>,
    /// `K = dPhi(B)`.
    pub k: Vec<Vec<f64>>,
    pub kr: Vec<Vec<f64>>,
    pub matrix: Vec<Vec<f64>>,
    pub identity: bool,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prolongation: Option<ProlongationOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<Vec<EntrySummary<'static>>>,
    pub version: String,
}

impl RunReport {
    pub fn new(config: &RunConfig, checks: Vec<CheckReport>) -> Self {
        Self {
            command: config.command.clone(),
            config: config.clone(),
            checks,
            prolongation: None,
            catalog: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_prolongation(mut self, p: ProlongationOutput) -> Self {
        self.prolongation = Some(p);
        self
    }

    pub fn with_catalog(mut self, entries: Vec<&'static CatalogEntry>) -> Self {
        self.catalog = Some(entries.into_iter().map(CatalogEntry::summary).collect());
        self
    }
}

fn fmt_rows(rows: &[Vec<f64>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| format!("{}", x + 0.0)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", inner.join(", "))
}

fn to_json<T: Serialize>(value: &Option<T>) -> Result<String> {
    Ok(match value {
        Some(v) => serde_json::to_string(v)?,
        None => String::new(),
    })
}

/// Renders a report. JSON is the stable format; CSV flattens one row per
/// check (or per catalog entry); text is for people.
pub fn render(report: &RunReport, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            if let Some(entries) = &report.catalog {
                w.write_record(["name", "group", "target_dim", "known_faithful", "kernel_witness", "invariant_subspaces", "notes"])?;
                for e in entries {
                    w.write_record([
                        e.name.to_string(),
                        e.group_label.clone(),
                        e.target_dim.to_string(),
                        e.known_faithful.to_string(),
                        to_json(&e.kernel_witness)?,
                        e.known_invariant_subspaces.len().to_string(),
                        e.notes.to_string(),
                    ])?;
                }
            } else {
                w.write_record([
                    "command", "rep", "suite", "seed", "samples", "tol", "name", "verdict", "max_residual", "witness", "note",
                ])?;
                let c = &report.config;
                for check in &report.checks {
                    w.write_record([
                        report.command.clone(),
                        c.rep_source.clone().unwrap_or_default(),
                        c.suite.clone().unwrap_or_default(),
                        c.seed.to_string(),
                        c.samples.to_string(),
                        c.tol.to_string(),
                        check.name.clone(),
                        format!("{:?}", check.verdict),
                        check.max_residual.to_string(),
                        to_json(&check.witness)?,
                        check.note.clone().unwrap_or_default(),
                    ])?;
                }
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} (seed {}, {} samples, tol {:e})", report.command, report.config.seed, report.config.samples, report.config.tol);
            if let Some(p) = &report.prolongation {
                let _ = writeln!(s, "rep {}", p.rep);
                let _ = writeln!(s, "R  = {}", fmt_rows(&p.r));
                let _ = writeln!(s, "K  = {}", fmt_rows(&p.k));
                let _ = writeln!(s, "KR = {}", fmt_rows(&p.kr));
                let _ = writeln!(s, "prolonged = {}", fmt_rows(&p.matrix));
            }
            if let Some(entries) = &report.catalog {
                for e in entries {
                    let _ = writeln!(
                        s,
                        "{:<34} {:<8} dim {}  faithful {:<5}  {}",
                        e.name, e.group_label, e.target_dim, e.known_faithful, e.notes
                    );
                }
            }
            for c in &report.checks {
                let _ = write!(s, "{:<12} {:<48} {:.3e}", format!("{:?}", c.verdict), c.name, c.max_residual);
                if let Some(note) = &c.note {
                    let _ = write!(s, "  ({note})");
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}
