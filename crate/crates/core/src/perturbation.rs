//! Perturbation series around the harmonic trajectory `S₀ = ½(x² + by²)`.
//!
//! The coupling is written as `εU` with `ε = g²μ` or as `gλU` with `λ = gμ`.
//! Either way the trajectory stays `x = c_x e^t`, `y = c_y e^{bt}` and only the
//! level at which `U` enters changes: `ε` enters beside `E₁`, `λ` beside `E₀`.
//! Each flavor comes as an exponential expansion `χ = exp(-g⁻¹S₂ - …)` and a
//! polynomial one `χ = 1 + g⁻¹χ₁ + …`.

use std::collections::BTreeMap;

use crate::algebra::{factorial, grad_dot, int, rat, Flavor, GradedPoly, Rational};
use crate::error::{Error, Result};
use crate::hierarchy::{exponential_levels, series_expm1, ExpansionKind, Quadrature};
use crate::hierarchy::{SeriesSolution, Window};
use crate::trajectory::{PotentialSpec, Trajectory};

pub use crate::hierarchy::normalize_grading;

/// Truncation of a perturbative run: parameter order `max_order` and levels
/// down to `g^{min_g_power}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerturbationOrders {
    pub max_order: u32,
    pub min_g_power: i32,
}

impl PerturbationOrders {
    pub fn new(max_order: u32, min_g_power: i32) -> Result<Self> {
        if min_g_power > 0 {
            return Err(Error::InvalidOrders(format!(
                "lowest power of g must be g^0 or below, got g^{min_g_power}"
            )));
        }
        Ok(PerturbationOrders {
            max_order,
            min_g_power,
        })
    }

    /// Orders that cover the hierarchy window `(μ^mu_order, g^-depth)`.
    ///
    /// A term `μ^e g^p` is `ε^e g^{p-2e}` and `λ^e g^{p-e}`, so the deepest level
    /// needed is `g^{-depth - 2·mu_order}` for `ε` and `g^{-depth - mu_order}` for `λ`.
    pub fn covering_hierarchy(flavor: Flavor, mu_order: u32, depth: u32) -> Result<Self> {
        if flavor == Flavor::Mu {
            return Err(Error::InvalidOrders(
                "the μ flavor is solved by the hierarchy".into(),
            ));
        }
        Self::new(
            mu_order,
            -(depth as i32) - flavor.g_weight() * mu_order as i32,
        )
    }

    pub fn window(&self, flavor: Flavor) -> Window {
        Window {
            flavor,
            max_order: self.max_order,
            min_g_power: Some(self.min_g_power),
        }
    }
}

fn check_flavor(flavor: Flavor) -> Result<()> {
    if flavor == Flavor::Mu {
        return Err(Error::InvalidOrders(
            "perturbation series need the ε or λ flavor; use solve_hierarchy for μ".into(),
        ));
    }
    Ok(())
}

fn method_name(kind: ExpansionKind, flavor: Flavor) -> String {
    let k = match kind {
        ExpansionKind::Exponential => "exp",
        ExpansionKind::Polynomial => "poly",
    };
    format!("{k}-{}", flavor.name())
}

/// Level at which `U` enters: `m = 1` for `ε`, `m = 0` for `λ`.
fn source_level(flavor: Flavor) -> u32 {
    match flavor {
        Flavor::Lambda => 0,
        _ => 1,
    }
}

/// Exponential expansion: `S₀ … S_{1-G}` and `E₀ … E_{1-G}` for `G = min_g_power`.
pub fn solve_exponential(
    spec: &PotentialSpec,
    flavor: Flavor,
    orders: PerturbationOrders,
) -> Result<SeriesSolution> {
    check_flavor(flavor)?;
    let b = spec.b();
    let traj = Trajectory::harmonic(b);
    let quad = Quadrature::new(&traj, orders.max_order);
    let s0 = GradedPoly::harmonic_action(b).with_flavor(flavor);
    let sources = BTreeMap::from([(source_level(flavor), spec.coupling(flavor))]);
    let last = (1 - orders.min_g_power) as u32;
    let levels = exponential_levels(&quad, &s0, &sources, last)?;
    Ok(SeriesSolution::exponential(
        &method_name(ExpansionKind::Exponential, flavor),
        flavor,
        b,
        &levels.actions,
        &levels.energies,
        orders.window(flavor),
    ))
}

/// Polynomial expansion: `S₀, S₁`, `χ₁ … χ_{-G}` and `E₀ … E_{1-G}`.
pub fn solve_polynomial(
    spec: &PotentialSpec,
    flavor: Flavor,
    orders: PerturbationOrders,
) -> Result<SeriesSolution> {
    check_flavor(flavor)?;
    let n = orders.max_order;
    let b = spec.b();
    let traj = Trajectory::harmonic(b);
    let quad = Quadrature::new(&traj, n);
    let half = rat(1, 2);
    let s0 = GradedPoly::harmonic_action(b).with_flavor(flavor);
    let coupling = spec.coupling(flavor).truncate(n);

    let mut rhs0 = s0.laplacian().scale(&half);
    if flavor == Flavor::Lambda {
        rhs0 = &rhs0 + &coupling;
    }
    let (e0, s1) = quad.solve(&rhs0)?;

    // everything multiplying χ_k at its own level
    let mut q = &s1.laplacian().scale(&half) - &grad_dot(&s1, &s1).truncate(n).scale(&half);
    if flavor == Flavor::Eps {
        q = &q + &coupling;
    }

    let depth = (-orders.min_g_power) as usize;
    let mut chis = vec![GradedPoly::one().with_flavor(flavor)];
    let mut energies = vec![e0];
    for k in 0..=depth {
        let mut rhs = &chis[k].laplacian().scale(&half) - &grad_dot(&s1, &chis[k]);
        rhs = &rhs - &q.mul_truncated(&chis[k], Some(n));
        for j in 1..=k {
            rhs = &rhs + &energies[j].mul_truncated(&chis[k + 1 - j], Some(n));
        }
        let (c, next) = quad.solve(&rhs.truncate(n))?;
        energies.push(-c);
        if k < depth {
            chis.push(next);
        }
    }
    Ok(SeriesSolution::polynomial(
        &method_name(ExpansionKind::Polynomial, flavor),
        flavor,
        b,
        &[s0, s1],
        &chis[1..],
        &energies,
        orders.window(flavor),
    ))
}

fn compositions(
    total: usize,
    parts: usize,
    min: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let mut first = min;
    while first + min * (parts - 1) <= total {
        prefix.push(first);
        compositions(total - first, parts - 1, min, prefix, out);
        prefix.pop();
        first += 1;
    }
}

/// `χ_N = Σ_k (-1)^k/k! Σ S_{i₁}⋯S_{i_k}` over ordered `i₁ + … + i_k = N + k`, `i ≥ 2`.
pub fn chi_from_actions(actions: &[GradedPoly], n: usize, max_order: u32) -> GradedPoly {
    let flavor = actions[0].flavor();
    let mut chi = GradedPoly::zero(flavor);
    for k in 1..=n {
        let mut comps = Vec::new();
        compositions(n + k, k, 2, &mut Vec::new(), &mut comps);
        let mut block = GradedPoly::zero(flavor);
        for c in comps {
            let mut prod = GradedPoly::one().with_flavor(flavor);
            for &i in &c {
                let s = actions
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| GradedPoly::zero(flavor));
                prod = prod.mul_truncated(&s, Some(max_order));
            }
            block = &block + &prod;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let coef = Rational::new(int(sign).numer().clone(), factorial(k as u32));
        chi = &chi + &block.scale(&coef);
    }
    chi
}

/// Rewrites an exponential solution in polynomial form, `χ = exp(-g⁻¹S₂ - g⁻²S₃ - …)`
/// expanded inside the solution's window.
pub fn exp_to_poly(sol: &SeriesSolution) -> Result<SeriesSolution> {
    if sol.kind != ExpansionKind::Exponential {
        return Err(Error::InvalidOrders(
            "exp_to_poly needs an exponential solution".into(),
        ));
    }
    let depth = sol
        .window
        .min_g_power
        .map(|g| -g as usize)
        .ok_or_else(|| Error::InvalidOrders("window must bound the power of g".into()))?;
    let last = sol.action_levels().into_iter().max().unwrap_or(0).max(1) as usize;
    let actions: Vec<GradedPoly> = (0..=last as i32).map(|k| sol.action(k)).collect();
    let chis: Vec<GradedPoly> = (1..=depth)
        .map(|n| chi_from_actions(&actions, n, sol.window.max_order))
        .collect();
    let energies: Vec<GradedPoly> = (0..=sol.energy_levels().into_iter().max().unwrap_or(0))
        .map(|k| sol.energy_level(k))
        .collect();
    let mut out = SeriesSolution::polynomial(
        &format!("{}->poly", sol.method),
        sol.flavor,
        &sol.b,
        &actions[..2],
        &chis,
        &energies,
        sol.window,
    );
    out.chi = out.chi.map(|c| sol.window.clip(&c));
    Ok(out)
}

/// `χ` of an exponential solution from `exp(-Σ_{k≥2} g^{1-k}S_k)` expanded
/// as a power series; the second route for [`exp_to_poly`].
pub fn chi_by_exponentiation(sol: &SeriesSolution) -> GradedPoly {
    let tail = sol.exponent.retain(|m| m.gp < 0);
    let one = GradedPoly::one().with_flavor(sol.flavor);
    &one + &series_expm1(&-&tail, &sol.window)
}
