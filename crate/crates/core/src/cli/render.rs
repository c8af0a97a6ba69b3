use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::{LevelRecord, SeriesSolution, SolutionRecord};
use crate::oracle::ComparisonReport;

use super::commands::VerifyReport;
use super::config::Format;

/// One CSV row per stored coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRow {
    pub method: String,
    /// `S<k>`, `chi<k>` or `E<k>`.
    pub quantity: String,
    pub ep: u32,
    pub gp: i32,
    pub i: u32,
    pub j: u32,
    pub coefficient: String,
}

/// Solutions with the comparison between them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub solutions: Vec<SeriesSolution>,
    pub comparison: ComparisonReport,
}

pub fn term_rows(sol: &SeriesSolution) -> Vec<TermRow> {
    let record = SolutionRecord::from(sol);
    let mut rows = Vec::new();
    let mut push = |prefix: &str, levels: &[LevelRecord]| {
        for level in levels {
            for t in &level.terms {
                rows.push(TermRow {
                    method: record.method.clone(),
                    quantity: format!("{prefix}{}", level.index),
                    ep: t.ep,
                    gp: t.gp,
                    i: t.i,
                    j: t.j,
                    coefficient: t.coefficient.clone(),
                });
            }
        }
    };
    push("S", &record.actions);
    if let Some(chis) = &record.chis {
        push("chi", chis);
    }
    push("E", &record.energies);
    rows
}

fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::Config(format!("json: {e}")))
}

const TERM_HEADER: [&str; 7] = ["method", "quantity", "ep", "gp", "i", "j", "coefficient"];

pub fn render_solution(sol: &SeriesSolution, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(sol),
        Format::Text => Ok(sol.to_string()),
        Format::Csv => to_csv(&term_rows(sol), &TERM_HEADER),
    }
}

pub fn render_comparison(report: &ComparisonReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Text => Ok(report.to_string()),
        Format::Csv => to_csv(
            &report.mismatches,
            &[
                "method",
                "quantity",
                "ep",
                "gp",
                "i",
                "j",
                "reference",
                "found",
            ],
        ),
    }
}

pub fn render_verify(report: &VerifyReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                method: String,
                g: f64,
                b: String,
                mu: f64,
                series_energy: f64,
                fd_energy: f64,
                abs_diff: f64,
                rel_diff: f64,
            }
            let rows: Vec<Row> = report
                .points
                .iter()
                .map(|p| Row {
                    method: report.method.clone(),
                    g: report.g,
                    b: report.b.clone(),
                    mu: p.mu,
                    series_energy: p.series_energy,
                    fd_energy: p.fd_energy,
                    abs_diff: p.abs_diff,
                    rel_diff: p.rel_diff,
                })
                .collect();
            to_csv(
                &rows,
                &[
                    "method",
                    "g",
                    "b",
                    "mu",
                    "series_energy",
                    "fd_energy",
                    "abs_diff",
                    "rel_diff",
                ],
            )
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{} at g={} b={} ({} levels from {}x{}, tolerance {:e})",
                report.method,
                report.g,
                report.b,
                report.levels,
                report.grid.nx,
                report.grid.ny,
                report.tolerance
            );
            for p in &report.points {
                let _ = writeln!(
                    s,
                    "mu={:<8} series={:.12} fd={:.12} |d|={:.3e} rel={:.3e}",
                    p.mu, p.series_energy, p.fd_energy, p.abs_diff, p.rel_diff
                );
            }
            if let Some(p) = report.fitted_order {
                let _ = writeln!(s, "fitted order: {p:.3}");
            }
            let _ = writeln!(s, "{}", if report.pass { "PASS" } else { "FAIL" });
            Ok(s)
        }
    }
}

pub fn render_report(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let rows: Vec<TermRow> = report.solutions.iter().flat_map(term_rows).collect();
            to_csv(&rows, &TERM_HEADER)
        }
        Format::Text => {
            let mut s = String::new();
            for sol in &report.solutions {
                let _ = writeln!(s, "{sol}");
            }
            s.push_str(&report.comparison.to_string());
            Ok(s)
        }
    }
}
