use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{to_f64, Flavor};
use crate::error::{Error, Result};
use crate::greens::{default_max_degree, solve_green};
use crate::hierarchy::{normalize_grading, solve_hierarchy, SeriesSolution};
use crate::oracle::{
    compare_methods, extrapolated_ground_state, rs_corrections, ComparisonReport, GridConfig,
    SpectralEstimate,
};
use crate::perturbation::{solve_exponential, solve_polynomial, PerturbationOrders};
use crate::trajectory::PotentialSpec;

use super::config::{Method, NumericParams, RunConfig};

/// Runs the configured pipeline.
pub fn cmd_run(config: &RunConfig) -> Result<SeriesSolution> {
    let b = config.validate()?;
    let spec = PotentialSpec::quartic_coupling(b.clone())?;
    let (order, depth) = (config.order, config.depth);
    let orders = |f| PerturbationOrders::covering_hierarchy(f, order, depth);
    match config.method {
        Method::Hierarchy => solve_hierarchy(&spec, order, depth),
        Method::ExpEps => solve_exponential(&spec, Flavor::Eps, orders(Flavor::Eps)?),
        Method::ExpLambda => solve_exponential(&spec, Flavor::Lambda, orders(Flavor::Lambda)?),
        Method::PolyEps => solve_polynomial(&spec, Flavor::Eps, orders(Flavor::Eps)?),
        Method::PolyLambda => solve_polynomial(&spec, Flavor::Lambda, orders(Flavor::Lambda)?),
        Method::Green => solve_green(&spec, order, default_max_degree(order)).map(|(_, s)| s),
        Method::Rs => rs_corrections(&b, order).map(|r| r.to_solution()),
    }
}

/// Runs every configuration in parallel and diffs them against `golden`
/// (when given) or the first result.
pub fn cmd_compare(
    configs: &[RunConfig],
    golden: Option<SeriesSolution>,
    estimate: Option<&SpectralEstimate>,
) -> Result<ComparisonReport> {
    if configs.len() + usize::from(golden.is_some()) < 2 {
        return Err(Error::Config("compare needs at least two solutions".into()));
    }
    let mut bs = Vec::new();
    for c in configs {
        bs.push(c.validate()?);
    }
    if let Some(g) = &golden {
        bs.push(g.b.clone());
    }
    if bs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Config("all solutions must share the same b".into()));
    }
    let runs: Vec<SeriesSolution> = configs.par_iter().map(cmd_run).collect::<Result<_>>()?;
    let solutions: Vec<SeriesSolution> = golden.into_iter().chain(runs).collect();
    Ok(compare_methods(&solutions, estimate))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyPoint {
    pub mu: f64,
    pub series_energy: f64,
    pub fd_energy: f64,
    /// Eigenvalues on the successive grids before extrapolation.
    pub level_energies: Vec<f64>,
    pub residual: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub method: String,
    pub g: f64,
    pub b: String,
    pub grid: GridConfig,
    pub levels: usize,
    pub tolerance: f64,
    pub points: Vec<VerifyPoint>,
    /// Slope of `log|ΔE|` against `log μ` over the points with `μ > 0`.
    pub fitted_order: Option<f64>,
    pub pass: bool,
}

/// Least-squares exponent `p` in `y ≈ C xᵖ`; needs two usable points.
pub fn fit_order(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Series energy of the configured pipeline against the extrapolated
/// finite-difference eigenvalue at each `μ`.
pub fn cmd_verify(config: &RunConfig) -> Result<VerifyReport> {
    let b = config.validate()?;
    let params: &NumericParams = config
        .numeric
        .as_ref()
        .ok_or_else(|| Error::Config("verify needs numeric parameters (g, mu)".into()))?;
    let series = normalize_grading(&cmd_run(config)?, Flavor::Mu);
    let spec = PotentialSpec::quartic_coupling(b.clone())?;
    let grid = GridConfig {
        nx: params.grid,
        ny: params.grid,
        ..GridConfig::default_for(params.g, to_f64(&b))
    };
    let mut points = Vec::with_capacity(params.mu.len());
    for &mu in &params.mu {
        let ext = extrapolated_ground_state(&spec, params.g, mu, &grid, params.levels)?;
        let series_energy = series.energy_at(params.g, mu);
        let abs_diff = (series_energy - ext.energy).abs();
        points.push(VerifyPoint {
            mu,
            series_energy,
            fd_energy: ext.energy,
            level_energies: ext.estimates.iter().map(|e| e.energy).collect(),
            residual: ext.estimates.iter().map(|e| e.residual).fold(0.0, f64::max),
            abs_diff,
            rel_diff: abs_diff / ext.energy.abs(),
        });
    }
    let fitted_order = fit_order(
        &points
            .iter()
            .map(|p| (p.mu, p.abs_diff))
            .collect::<Vec<_>>(),
    );
    let pass = points.iter().all(|p| p.rel_diff <= params.tolerance);
    Ok(VerifyReport {
        method: series.method.clone(),
        g: params.g,
        b: b.to_string(),
        grid,
        levels: params.levels,
        tolerance: params.tolerance,
        points,
        fitted_order,
        pass,
    })
}
