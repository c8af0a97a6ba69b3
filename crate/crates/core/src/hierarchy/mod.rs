//! The `1/g` hierarchy for `Ψ = exp(-gS₀ - S₁ - g⁻¹S₂ - …)`.
//!
//! Every level has the form `∇S₀·∇F = R - E`, with `R` a known polynomial.
//! Along the classical trajectory the left side is `dF/dt`, so `E` is the
//! constant (time-independent) part of `R` and `F` is the integral of the
//! rest. [`Quadrature`] performs that step; the pipelines here and in
//! [`crate::perturbation`] differ only in what they feed it.

mod solution;

pub use solution::{
    normalize_grading, series_expm1, series_log1p, ExpansionKind, LevelRecord, SeriesSolution,
    SolutionRecord, TermRecord, Window,
};

use std::collections::BTreeMap;

use crate::algebra::{
    evaluate_at_endpoint, grad_dot, rat, restrict_to_trajectory, ExpSum, Flavor, GradedPoly,
};
use crate::error::{Error, Result};
use crate::trajectory::{action_integral, invert_endpoint_constants, solve_classical_trajectory};
use crate::trajectory::{PotentialSpec, Trajectory};

/// Splits `e` into its time-independent part, which is the energy, and the
/// rest.
pub fn extract_energy(e: &ExpSum) -> (GradedPoly, ExpSum) {
    e.split_constant()
}

/// One quadrature along a fixed trajectory, truncated at parameter order
/// `order`.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature<'a> {
    traj: &'a Trajectory,
    order: u32,
}

impl<'a> Quadrature<'a> {
    pub fn new(traj: &'a Trajectory, order: u32) -> Self {
        Quadrature { traj, order }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Solves `∇S₀·∇F = rhs - E`, returning `(E, F)` with `F(0) = 0`.
    pub fn solve(&self, rhs: &GradedPoly) -> Result<(GradedPoly, GradedPoly)> {
        let along = restrict_to_trajectory(rhs, self.traj, self.order);
        let (energy, rest) = extract_energy(&along);
        let f = evaluate_at_endpoint(&rest.integrate_to_t()?, self.traj, self.order)?;
        Ok((
            energy.with_flavor(rhs.flavor()),
            f.with_flavor(rhs.flavor()),
        ))
    }
}

/// Levels of an exponential expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentialLevels {
    pub actions: Vec<GradedPoly>,
    pub energies: Vec<GradedPoly>,
}

/// Runs `∇S₀·∇S_{m+1} = ½∇²S_m - ½Σ∇S_j·∇S_k - E_m + source_m` for
/// `m = 0..=last`, where the sum runs over `j + k = m + 1`, `j, k ≥ 1`.
///
/// Returns `S₀ … S_last` and `E₀ … E_last`.
pub fn exponential_levels(
    quad: &Quadrature<'_>,
    s0: &GradedPoly,
    sources: &BTreeMap<u32, GradedPoly>,
    last: u32,
) -> Result<ExponentialLevels> {
    let n = quad.order();
    let half = rat(1, 2);
    let mut actions = vec![s0.clone()];
    let mut energies = Vec::new();
    for m in 0..=last as usize {
        let mut rhs = actions[m].laplacian().scale(&half);
        for j in 1..=m {
            let cross = grad_dot(&actions[j], &actions[m + 1 - j]).truncate(n);
            rhs = &rhs - &cross.scale(&half);
        }
        if let Some(src) = sources.get(&(m as u32)) {
            rhs = &rhs + src;
        }
        let (e, next) = quad.solve(&rhs.truncate(n))?;
        energies.push(e);
        if m < last as usize {
            actions.push(next);
        }
    }
    Ok(ExponentialLevels { actions, energies })
}

/// Solves the hierarchy for `V = g²[½(x² + b²y²) + μU]` keeping `μ^mu_order`
/// and the levels `S₀ … S_{depth+1}`, `E₀ … E_{depth+1}`.
///
/// The window of validity is `μ^{≤mu_order}` and `g^{≥-depth}`: the energy and
/// exponent are complete through `g⁻ᵈᵉᵖᵗʰ`.
pub fn solve_hierarchy(spec: &PotentialSpec, mu_order: u32, depth: u32) -> Result<SeriesSolution> {
    let traj = invert_endpoint_constants(solve_classical_trajectory(spec, mu_order)?);
    let s0 = action_integral(&traj)?;
    solve_hierarchy_on(&traj, &s0, depth)
}

/// [`solve_hierarchy`] on an already prepared trajectory and action.
pub fn solve_hierarchy_on(
    traj: &Trajectory,
    s0: &GradedPoly,
    depth: u32,
) -> Result<SeriesSolution> {
    if traj.endpoint().is_none() {
        return Err(Error::MissingEndpointConstants);
    }
    let n = traj.order();
    let quad = Quadrature::new(traj, n);
    let levels = exponential_levels(&quad, s0, &BTreeMap::new(), depth + 1)?;
    let window = Window {
        flavor: Flavor::Mu,
        max_order: n,
        min_g_power: Some(-(depth as i32)),
    };
    Ok(SeriesSolution::exponential(
        "hierarchy",
        Flavor::Mu,
        traj.b(),
        &levels.actions,
        &levels.energies,
        window,
    ))
}

/// Exponent and energy ready for numeric evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Wavefunction {
    pub flavor: Flavor,
    /// `-gS₀ - S₁ - …`, so that `Ψ = exp(log_psi) · χ`.
    pub log_psi: GradedPoly,
    pub chi: Option<GradedPoly>,
    pub energy: GradedPoly,
}

impl Wavefunction {
    pub fn energy_at(&self, g: f64, param: f64) -> f64 {
        self.energy.eval_f64(g, param, 0.0, 0.0)
    }

    /// `Ψ(x, y)` with `Ψ(0, 0) = 1`.
    pub fn psi_at(&self, g: f64, param: f64, x: f64, y: f64) -> f64 {
        let chi = self
            .chi
            .as_ref()
            .map_or(1.0, |c| c.eval_f64(g, param, x, y));
        self.log_psi.eval_f64(g, param, x, y).exp() * chi
    }
}

pub fn assemble_wavefunction(sol: &SeriesSolution) -> Wavefunction {
    Wavefunction {
        flavor: sol.flavor,
        log_psi: -&sol.exponent,
        chi: sol.chi.clone(),
        energy: sol.energy.clone(),
    }
}
