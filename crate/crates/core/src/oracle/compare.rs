//! Exact term-by-term comparison of series solutions.
//!
//! Every solution is regraded to `μ` and rewritten as `-log ψ`, so exponential
//! and polynomial outputs become directly comparable. Only the terms that
//! every solution's window can see take part in the diff.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Flavor, GradedPoly, Monomial, Rational};
use crate::hierarchy::{normalize_grading, SeriesSolution, Window};

use super::fd::SpectralEstimate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// `-log ψ`.
    Exponent,
    Energy,
}

/// One coefficient that differs from the reference, graded under `μ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermMismatch {
    pub method: String,
    pub quantity: Quantity,
    pub ep: u32,
    pub gp: i32,
    pub i: u32,
    pub j: u32,
    pub reference: String,
    pub found: String,
}

impl fmt::Display for TermMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.quantity {
            Quantity::Exponent => "-log ψ",
            Quantity::Energy => "E",
        };
        write!(
            f,
            "{}: {q} slot (ep={}, gp={}, i={}, j={}): expected {}, found {}",
            self.method, self.ep, self.gp, self.i, self.j, self.reference, self.found
        )
    }
}

/// Series energy against the finite-difference estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub method: String,
    pub g: f64,
    pub mu: f64,
    pub series_energy: f64,
    pub numeric_energy: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub reference: String,
    pub methods: Vec<String>,
    /// Number of `(quantity, slot)` pairs inside every window.
    pub compared_terms: usize,
    pub mismatches: Vec<TermMismatch>,
    pub numeric: Vec<NumericCheck>,
}

impl ComparisonReport {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch(&self) -> Option<&TermMismatch> {
        self.mismatches.first()
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reference: {}", self.reference)?;
        writeln!(f, "methods: {}", self.methods.join(", "))?;
        writeln!(f, "compared terms: {}", self.compared_terms)?;
        if self.agree() {
            writeln!(f, "symbolic: agree")?;
        } else {
            writeln!(f, "symbolic: {} mismatches", self.mismatches.len())?;
            for m in &self.mismatches {
                writeln!(f, "  {m}")?;
            }
        }
        for n in &self.numeric {
            writeln!(
                f,
                "numeric {}: g={} mu={} series={:.12} fd={:.12} |d|={:.3e} rel={:.3e}",
                n.method, n.g, n.mu, n.series_energy, n.numeric_energy, n.abs_diff, n.rel_diff
            )?;
        }
        Ok(())
    }
}

fn in_all(windows: &[Window], m: &Monomial) -> bool {
    windows.iter().all(|w| w.contains(Flavor::Mu, m))
}

fn diff(
    method: &str,
    quantity: Quantity,
    reference: &GradedPoly,
    other: &GradedPoly,
    windows: &[Window],
    out: &mut Vec<TermMismatch>,
) -> usize {
    let slots: BTreeSet<Monomial> = reference
        .terms()
        .chain(other.terms())
        .map(|(m, _)| *m)
        .filter(|m| in_all(windows, m))
        .collect();
    for m in &slots {
        let (a, b): (Rational, Rational) = (reference.coeff(m), other.coeff(m));
        if a != b {
            out.push(TermMismatch {
                method: method.to_string(),
                quantity,
                ep: m.ep,
                gp: m.gp,
                i: m.i,
                j: m.j,
                reference: a.to_string(),
                found: b.to_string(),
            });
        }
    }
    slots.len()
}

/// Diffs every solution against the first one, exactly, inside the common
/// window; with an estimate, also compares each series energy at its
/// `(g, μ)`.
pub fn compare_methods(
    solutions: &[SeriesSolution],
    estimate: Option<&SpectralEstimate>,
) -> ComparisonReport {
    let normalized: Vec<SeriesSolution> = solutions
        .iter()
        .map(|s| normalize_grading(s, Flavor::Mu))
        .collect();
    let windows: Vec<Window> = normalized.iter().map(|s| s.window).collect();
    let forms: Vec<(GradedPoly, GradedPoly)> = normalized
        .iter()
        .map(|s| (s.log_form(), s.energy.clone()))
        .collect();
    let mut mismatches = Vec::new();
    let mut compared_terms = 0;
    if let Some(((ref_exp, ref_energy), rest)) = forms.split_first() {
        for (sol, (exp, energy)) in normalized[1..].iter().zip(rest) {
            let n_exp = diff(
                &sol.method,
                Quantity::Exponent,
                ref_exp,
                exp,
                &windows,
                &mut mismatches,
            );
            let n_en = diff(
                &sol.method,
                Quantity::Energy,
                ref_energy,
                energy,
                &windows,
                &mut mismatches,
            );
            compared_terms = compared_terms.max(n_exp + n_en);
        }
    }
    let numeric = estimate
        .map(|est| {
            normalized
                .iter()
                .map(|s| {
                    let series = s.energy_at(est.g, est.mu);
                    let abs_diff = (series - est.energy).abs();
                    NumericCheck {
                        method: s.method.clone(),
                        g: est.g,
                        mu: est.mu,
                        series_energy: series,
                        numeric_energy: est.energy,
                        abs_diff,
                        rel_diff: abs_diff / est.energy.abs(),
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    ComparisonReport {
        reference: normalized
            .first()
            .map(|s| s.method.clone())
            .unwrap_or_default(),
        methods: normalized.iter().map(|s| s.method.clone()).collect(),
        compared_terms,
        mismatches,
        numeric,
    }
}
