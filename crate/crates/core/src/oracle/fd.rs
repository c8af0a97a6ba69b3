//! Finite-difference ground state of `-½∇² + g²[½(x² + b²y²) + μU]`.
//!
//! The five-point Laplacian lives on a uniform grid over `[-L_x, L_x] × [-L_y, L_y]`
//! with Dirichlet walls. The ground state is even in both coordinates whenever
//! `U` is, so the solve runs on the quadrant `x, y ≥ 0` with mirror conditions
//! on the axes; the discrete spectrum restricted to even-even vectors is the
//! same. Inverse iteration with shift 0 uses conjugate gradients in the
//! quadrant's weighted inner product, which makes the folded operator
//! symmetric again.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{to_f64, GradedPoly, Rational};
use crate::error::{Error, Result};
use crate::trajectory::PotentialSpec;

/// Interior points per axis (odd, so the axes are grid lines) and box half-widths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
}

impl GridConfig {
    /// `L = 6/√(g·min(1, b))` on both axes, 161 × 161 interior points.
    pub fn default_for(g: f64, b: f64) -> Self {
        let l = 6.0 / (g * b.min(1.0)).sqrt();
        GridConfig {
            nx: 161,
            ny: 161,
            lx: l,
            ly: l,
        }
    }

    pub fn hx(&self) -> f64 {
        2.0 * self.lx / (self.nx + 1) as f64
    }

    pub fn hy(&self) -> f64 {
        2.0 * self.ly / (self.ny + 1) as f64
    }

    /// Same box, spacing halved: `n → 2n + 1`.
    pub fn refined(&self) -> Self {
        GridConfig {
            nx: 2 * self.nx + 1,
            ny: 2 * self.ny + 1,
            ..*self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.nx < 3 || self.ny < 3 || self.nx.is_multiple_of(2) || self.ny.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "grid needs an odd number (≥ 3) of interior points per axis, got {} × {}",
                self.nx, self.ny
            )));
        }
        if !(self.lx > 0.0 && self.ly > 0.0 && self.lx.is_finite() && self.ly.is_finite()) {
            return Err(Error::Config("box half-widths must be positive".into()));
        }
        Ok(())
    }
}

/// Stopping rule and budget of the eigensolver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Absolute bound on `‖Hψ - Eψ‖` for unit `ψ`.
    pub tolerance: f64,
    pub max_outer: usize,
    pub max_inner: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tolerance: 1e-10,
            max_outer: 400,
            max_inner: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub g: f64,
    pub b: f64,
    pub mu: f64,
    pub energy: f64,
    pub grid: GridConfig,
    /// `‖Hψ - Eψ‖ / ‖ψ‖`.
    pub residual: f64,
    pub iterations: usize,
    /// `ψ` on the full interior grid, row-major in `y`, with `Σψ² h_x h_y = 1`.
    #[serde(skip)]
    pub psi: Vec<f64>,
}

impl SpectralEstimate {
    /// Grid coordinate of interior index `i` along x.
    pub fn x_at(&self, i: usize) -> f64 {
        -self.grid.lx + (i + 1) as f64 * self.grid.hx()
    }

    pub fn y_at(&self, j: usize) -> f64 {
        -self.grid.ly + (j + 1) as f64 * self.grid.hy()
    }

    pub fn psi_at(&self, i: usize, j: usize) -> f64 {
        self.psi[j * self.grid.nx + i]
    }
}

/// The folded operator on the quadrant `i, j ≥ 0` (index 0 is the axis).
struct Quadrant {
    mx: usize,
    my: usize,
    cx: f64,
    cy: f64,
    diag: Vec<f64>,
    weight: Vec<f64>,
}

impl Quadrant {
    fn new(spec: &PotentialSpec, g: f64, mu: f64, grid: &GridConfig) -> Self {
        let (hx, hy) = (grid.hx(), grid.hy());
        let mx = grid.nx.div_ceil(2);
        let my = grid.ny.div_ceil(2);
        let b = to_f64(spec.b());
        let u = spec.u();
        let (cx, cy) = (0.5 / (hx * hx), 0.5 / (hy * hy));
        let mut diag = vec![0.0; mx * my];
        let mut weight = vec![0.0; mx * my];
        for j in 0..my {
            let y = j as f64 * hy;
            for i in 0..mx {
                let x = i as f64 * hx;
                let v = g * g * (0.5 * (x * x + b * b * y * y) + mu * eval_plain(u, x, y));
                diag[j * mx + i] = 2.0 * cx + 2.0 * cy + v;
                let wx = if i == 0 { 0.5 } else { 1.0 };
                let wy = if j == 0 { 0.5 } else { 1.0 };
                weight[j * mx + i] = wx * wy * hx * hy * 4.0;
            }
        }
        Quadrant {
            mx,
            my,
            cx,
            cy,
            diag,
            weight,
        }
    }

    fn len(&self) -> usize {
        self.mx * self.my
    }

    fn apply(&self, v: &[f64], out: &mut [f64]) {
        let (mx, my, cx, cy) = (self.mx, self.my, self.cx, self.cy);
        out.par_chunks_mut(mx).enumerate().for_each(|(j, row)| {
            for (i, o) in row.iter_mut().enumerate() {
                let k = j * mx + i;
                let left = if i == 0 { v[k + 1] } else { v[k - 1] };
                let right = if i + 1 < mx { v[k + 1] } else { 0.0 };
                let down = if j == 0 { v[k + mx] } else { v[k - mx] };
                let up = if j + 1 < my { v[k + mx] } else { 0.0 };
                *o = self.diag[k] * v[k] - cx * (left + right) - cy * (down + up);
            }
        });
    }

    /// Row sums in parallel, combined in a fixed order so results are
    /// reproducible bit for bit.
    fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        let rows: Vec<f64> = a
            .par_chunks(self.mx)
            .zip(b.par_chunks(self.mx))
            .zip(self.weight.par_chunks(self.mx))
            .map(|((x, y), w)| {
                x.iter()
                    .zip(y)
                    .zip(w)
                    .map(|((x, y), w)| x * y * w)
                    .sum::<f64>()
            })
            .collect();
        rows.iter().sum()
    }

    fn norm(&self, a: &[f64]) -> f64 {
        self.dot(a, a).sqrt()
    }

    /// Conjugate gradients for `A x = rhs` from the given start, stopping at
    /// `‖rhs - A x‖ ≤ tol`.
    fn cg(&self, rhs: &[f64], x: &mut [f64], tol: f64, max_iter: usize) -> Result<usize> {
        let n = self.len();
        let mut ax = vec![0.0; n];
        self.apply(x, &mut ax);
        let mut r: Vec<f64> = rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
        let mut p = r.clone();
        let mut rr = self.dot(&r, &r);
        let mut ap = vec![0.0; n];
        for it in 0..max_iter {
            if rr.sqrt() <= tol {
                return Ok(it);
            }
            self.apply(&p, &mut ap);
            let alpha = rr / self.dot(&p, &ap);
            x.par_iter_mut()
                .zip(&p)
                .for_each(|(xi, pi)| *xi += alpha * pi);
            r.par_iter_mut()
                .zip(&ap)
                .for_each(|(ri, api)| *ri -= alpha * api);
            let rr_new = self.dot(&r, &r);
            let beta = rr_new / rr;
            rr = rr_new;
            p.par_iter_mut()
                .zip(&r)
                .for_each(|(pi, ri)| *pi = ri + beta * *pi);
        }
        Err(Error::ConvergenceFailure {
            residual: rr.sqrt(),
            iterations: max_iter,
        })
    }
}

fn eval_plain(u: &GradedPoly, x: f64, y: f64) -> f64 {
    u.eval_f64(1.0, 1.0, x, y)
}

/// Smallest eigenpair on the given grid.
pub fn fd_ground_state(
    spec: &PotentialSpec,
    g: f64,
    mu: f64,
    grid: &GridConfig,
) -> Result<SpectralEstimate> {
    fd_ground_state_with(spec, g, mu, grid, &SolverOptions::default(), None)
}

fn gaussian_start(q: &Quadrant, g: f64, b: f64, grid: &GridConfig) -> Vec<f64> {
    let (hx, hy) = (grid.hx(), grid.hy());
    let mut v = vec![0.0; q.len()];
    for j in 0..q.my {
        for i in 0..q.mx {
            let (x, y) = (i as f64 * hx, j as f64 * hy);
            v[j * q.mx + i] = (-0.5 * g * (x * x + b * y * y)).exp();
        }
    }
    v
}

/// Bilinear prolongation of a quadrant vector onto the grid with half the
/// spacing.
fn prolong(coarse: &[f64], cmx: usize, cmy: usize, fmx: usize, fmy: usize) -> Vec<f64> {
    let at = |i: usize, j: usize| {
        if i < cmx && j < cmy {
            coarse[j * cmx + i]
        } else {
            0.0
        }
    };
    let mut fine = vec![0.0; fmx * fmy];
    for j in 0..fmy {
        for i in 0..fmx {
            let (ci, cj) = (i / 2, j / 2);
            fine[j * fmx + i] = match (i % 2, j % 2) {
                (0, 0) => at(ci, cj),
                (1, 0) => 0.5 * (at(ci, cj) + at(ci + 1, cj)),
                (0, 1) => 0.5 * (at(ci, cj) + at(ci, cj + 1)),
                _ => 0.25 * (at(ci, cj) + at(ci + 1, cj) + at(ci, cj + 1) + at(ci + 1, cj + 1)),
            };
        }
    }
    fine
}

/// [`fd_ground_state`] with explicit solver options and an optional starting
/// vector from the next coarser grid.
pub fn fd_ground_state_with(
    spec: &PotentialSpec,
    g: f64,
    mu: f64,
    grid: &GridConfig,
    opts: &SolverOptions,
    warm: Option<&SpectralEstimate>,
) -> Result<SpectralEstimate> {
    grid.validate()?;
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::Config(format!("g must be positive, got {g}")));
    }
    if mu < 0.0 || !mu.is_finite() {
        return Err(Error::Config(format!("μ must be non-negative, got {mu}")));
    }
    let b = to_f64(spec.b());
    let q = Quadrant::new(spec, g, mu, grid);
    let mut psi = match warm {
        Some(w) if w.grid.refined() == *grid => {
            let cq = (w.grid.nx.div_ceil(2), w.grid.ny.div_ceil(2));
            prolong(&quadrant_of(w), cq.0, cq.1, q.mx, q.my)
        }
        _ => gaussian_start(&q, g, b, grid),
    };
    let norm = q.norm(&psi);
    psi.iter_mut().for_each(|v| *v /= norm);
    let n = q.len();
    let mut hpsi = vec![0.0; n];
    for outer in 0..opts.max_outer {
        q.apply(&psi, &mut hpsi);
        let energy = q.dot(&psi, &hpsi);
        let r: Vec<f64> = hpsi.iter().zip(&psi).map(|(h, p)| h - energy * p).collect();
        let residual = q.norm(&r);
        if residual <= opts.tolerance {
            return Ok(SpectralEstimate {
                g,
                b,
                mu,
                energy,
                grid: *grid,
                residual,
                iterations: outer,
                psi: unfold(&psi, q.mx, q.my, grid),
            });
        }
        // H φ = ψ from φ = ψ/E; the residual only has to shrink in step with
        // the eigen-residual
        let mut phi: Vec<f64> = psi.iter().map(|p| p / energy).collect();
        let tol = (0.05 * residual / energy).max(1e-15);
        q.cg(&psi, &mut phi, tol, opts.max_inner)?;
        let norm = q.norm(&phi);
        psi = phi.into_iter().map(|v| v / norm).collect();
    }
    q.apply(&psi, &mut hpsi);
    let energy = q.dot(&psi, &hpsi);
    let r: Vec<f64> = hpsi.iter().zip(&psi).map(|(h, p)| h - energy * p).collect();
    Err(Error::ConvergenceFailure {
        residual: q.norm(&r),
        iterations: opts.max_outer,
    })
}

fn unfold(quad: &[f64], mx: usize, my: usize, grid: &GridConfig) -> Vec<f64> {
    let (cx, cy) = (grid.nx / 2, grid.ny / 2);
    let mut full = vec![0.0; grid.nx * grid.ny];
    for j in 0..grid.ny {
        let qj = j.abs_diff(cy);
        for i in 0..grid.nx {
            let qi = i.abs_diff(cx);
            debug_assert!(qi < mx && qj < my);
            full[j * grid.nx + i] = quad[qj * mx + qi];
        }
    }
    full
}

fn quadrant_of(est: &SpectralEstimate) -> Vec<f64> {
    let (nx, ny) = (est.grid.nx, est.grid.ny);
    let (mx, my) = (nx.div_ceil(2), ny.div_ceil(2));
    let (cx, cy) = (nx / 2, ny / 2);
    let mut out = vec![0.0; mx * my];
    for j in 0..my {
        for i in 0..mx {
            out[j * mx + i] = est.psi[(cy + j) * nx + cx + i];
        }
    }
    out
}

/// Eigenvalues on `levels` successively halved grids combined by repeated
/// Richardson extrapolation, eliminating `h², h⁴, …` in turn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub estimates: Vec<SpectralEstimate>,
    pub energy: f64,
}

pub fn richardson(energies: &[f64]) -> f64 {
    let mut table: Vec<f64> = energies.to_vec();
    let mut factor = 4.0;
    while table.len() > 1 {
        table = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    table[0]
}

/// Solves on `grid` and `levels - 1` refinements, warm-starting each from
/// the previous one.
pub fn extrapolated_ground_state(
    spec: &PotentialSpec,
    g: f64,
    mu: f64,
    grid: &GridConfig,
    levels: usize,
) -> Result<Extrapolation> {
    if levels == 0 {
        return Err(Error::Config("at least one grid level is needed".into()));
    }
    let opts = SolverOptions::default();
    let mut estimates: Vec<SpectralEstimate> = Vec::with_capacity(levels);
    let mut current = *grid;
    for _ in 0..levels {
        let est = fd_ground_state_with(spec, g, mu, &current, &opts, estimates.last())?;
        estimates.push(est);
        current = current.refined();
    }
    let energy = richardson(&estimates.iter().map(|e| e.energy).collect::<Vec<_>>());
    Ok(Extrapolation { estimates, energy })
}

/// Exact harmonic ground-state energy `g(1 + b)/2`.
pub fn harmonic_energy(g: f64, b: &Rational) -> f64 {
    0.5 * g * (1.0 + to_f64(b))
}
