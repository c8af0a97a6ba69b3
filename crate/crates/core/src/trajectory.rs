//! The classical trajectory behind `S₀`: equations of motion in the inverted
//! potential solved order by order in `μ`, endpoint constants, and the action.

use num_traits::{Signed, Zero};

use crate::algebra::{
    evaluate_at_endpoint, int, one, rat, restrict_to_trajectory, ExpKey, ExpSum, Flavor,
    GradedPoly, Monomial, Rational,
};
use crate::error::{Error, Result};

/// `v(x, y) = ½(x² + b²y²) + param · U(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec {
    b: Rational,
    u: GradedPoly,
}

impl PotentialSpec {
    pub fn new(b: Rational, u: GradedPoly) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::InvalidPotential(format!(
                "b must be positive, got {b}"
            )));
        }
        if u.is_graded() || u.terms().any(|(m, _)| m.gp != 0) {
            return Err(Error::InvalidPotential(
                "U must be a plain polynomial".into(),
            ));
        }
        if !u.constant_part().is_zero() {
            return Err(Error::InvalidPotential(
                "U must not have a constant term".into(),
            ));
        }
        if !u.is_even() {
            return Err(Error::InvalidPotential(
                "U must be even in x and in y".into(),
            ));
        }
        Ok(PotentialSpec { b, u })
    }

    /// The running example `U = x² y²`.
    pub fn quartic_coupling(b: Rational) -> Result<Self> {
        Self::new(b, GradedPoly::monomial(one(), 2, 2))
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn u(&self) -> &GradedPoly {
        &self.u
    }

    /// `U` carrying one power of the parameter of `flavor`.
    pub fn coupling(&self, flavor: Flavor) -> GradedPoly {
        self.u.shift(1, 0).with_flavor(flavor)
    }

    pub fn harmonic_v(&self) -> GradedPoly {
        harmonic_v(&self.b)
    }

    pub fn v(&self, flavor: Flavor) -> GradedPoly {
        &self.harmonic_v() + &self.coupling(flavor)
    }
}

fn harmonic_v(b: &Rational) -> GradedPoly {
    GradedPoly::from_terms(
        Flavor::Mu,
        [
            (Monomial::xy(2, 0), rat(1, 2)),
            (Monomial::xy(0, 2), b * b / int(2)),
        ],
    )
}

/// `X = c_x e^{T}` and `Y = c_y e^{bT}` as polynomials in the endpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct EndpointConstants {
    pub cx: GradedPoly,
    pub cy: GradedPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    b: Rational,
    potential: GradedPoly,
    x: ExpSum,
    y: ExpSum,
    order: u32,
    endpoint: Option<EndpointConstants>,
}

impl Trajectory {
    /// `x = c_x e^t`, `y = c_y e^{bt}` with `c_x = x_T e^{-T}`, `c_y = y_T e^{-bT}`.
    pub fn harmonic(b: &Rational) -> Self {
        let (x, y) = leading_motion(b);
        Trajectory {
            b: b.clone(),
            potential: harmonic_v(b),
            x,
            y,
            order: 0,
            endpoint: Some(EndpointConstants {
                cx: GradedPoly::monomial(one(), 1, 0),
                cy: GradedPoly::monomial(one(), 0, 1),
            }),
        }
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn x(&self) -> &ExpSum {
        &self.x
    }

    pub fn y(&self) -> &ExpSum {
        &self.y
    }

    /// `x_n`, the coefficient of `μ^n` in `x(t)`.
    pub fn x_series(&self, n: u32) -> ExpSum {
        self.x.order(n)
    }

    pub fn y_series(&self, n: u32) -> ExpSum {
        self.y.order(n)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn potential(&self) -> &GradedPoly {
        &self.potential
    }

    pub fn endpoint(&self) -> Option<&EndpointConstants> {
        self.endpoint.as_ref()
    }

    /// `μ^n` coefficient of `c_x e^{T}` in terms of `(x_T, y_T)`.
    pub fn cx_series(&self, n: u32) -> Option<GradedPoly> {
        self.endpoint.as_ref().map(|e| e.cx.order(n))
    }

    pub fn cy_series(&self, n: u32) -> Option<GradedPoly> {
        self.endpoint.as_ref().map(|e| e.cy.order(n))
    }
}

fn leading_motion(b: &Rational) -> (ExpSum, ExpSum) {
    let x = ExpSum::from_terms(b, Flavor::Mu, [(ExpKey::new(0, 0, 1, 0, 1, 0), one())]);
    let y = ExpSum::from_terms(b, Flavor::Mu, [(ExpKey::new(0, 0, 0, 1, 0, 1), one())]);
    (x, y)
}

/// Solves `ẍ = ∂v/∂x`, `ÿ = ∂v/∂y` through `μ^order` with `x, y → 0` as `t → -∞`.
///
/// Each order keeps only the particular solution built from growing
/// exponentials; the homogeneous `e^{±t}`, `e^{±bt}` pieces are excluded by the
/// boundary condition.
pub fn solve_classical_trajectory(spec: &PotentialSpec, order: u32) -> Result<Trajectory> {
    let b = spec.b().clone();
    let (mut x, mut y) = leading_motion(&b);
    let du_dx = spec.u().d_dx();
    let du_dy = spec.u().d_dy();
    let b_sq = &b * &b;
    for n in 1..=order {
        let partial = Trajectory {
            b: b.clone(),
            potential: spec.v(Flavor::Mu),
            x: x.clone(),
            y: y.clone(),
            order: n - 1,
            endpoint: None,
        };
        let drive_x = restrict_to_trajectory(&du_dx, &partial, n - 1).order(n - 1);
        let drive_y = restrict_to_trajectory(&du_dy, &partial, n - 1).order(n - 1);
        for (key, c) in drive_x.terms() {
            let s = drive_x.rate(key);
            let denom = &s * &s - one();
            if denom.is_zero() {
                return Err(Error::ResonantDenominator {
                    key: *key,
                    axis: 'x',
                });
            }
            x.add_term(ExpKey { ep: n, ..*key }, c / denom);
        }
        for (key, c) in drive_y.terms() {
            let s = drive_y.rate(key);
            let denom = &s * &s - &b_sq;
            if denom.is_zero() {
                return Err(Error::ResonantDenominator {
                    key: *key,
                    axis: 'y',
                });
            }
            y.add_term(ExpKey { ep: n, ..*key }, c / denom);
        }
    }
    Ok(Trajectory {
        b,
        potential: spec.v(Flavor::Mu),
        x,
        y,
        order,
        endpoint: None,
    })
}

fn flatten(e: &ExpSum) -> GradedPoly {
    GradedPoly::from_terms(
        e.flavor(),
        e.terms()
            .map(|(k, c)| (Monomial::new(k.ep, k.gp, k.p, k.q), c.clone())),
    )
}

/// Fixes `c_x`, `c_y` from `(x, y) = (x_T, y_T)` at `t = T`, one order in `μ`
/// per fixed-point pass.
pub fn invert_endpoint_constants(mut traj: Trajectory) -> Trajectory {
    let n = traj.order;
    let xt = GradedPoly::monomial(one(), 1, 0);
    let yt = GradedPoly::monomial(one(), 0, 1);
    // x(T) = X + F(X, Y), y(T) = Y + G(X, Y) with F, G = O(μ).
    let f = &flatten(&traj.x) - &xt;
    let g = &flatten(&traj.y) - &yt;
    let mut cx = xt.clone();
    let mut cy = yt.clone();
    for _ in 0..n {
        let next_x = &xt - &f.substitute(&cx, &cy, Some(n));
        let next_y = &yt - &g.substitute(&cx, &cy, Some(n));
        cx = next_x;
        cy = next_y;
    }
    traj.endpoint = Some(EndpointConstants { cx, cy });
    traj
}

/// Substitutes the endpoint constants back into `x(T)`, `y(T)`; an exact
/// inversion returns `(x_T, y_T)`.
pub fn endpoint_round_trip(traj: &Trajectory) -> Result<(GradedPoly, GradedPoly)> {
    let ends = traj.endpoint().ok_or(Error::MissingEndpointConstants)?;
    let n = traj.order;
    Ok((
        flatten(&traj.x).substitute(&ends.cx, &ends.cy, Some(n)),
        flatten(&traj.y).substitute(&ends.cx, &ends.cy, Some(n)),
    ))
}

fn kinetic(traj: &Trajectory, cap: u32) -> ExpSum {
    let xd = traj.x.derivative();
    let yd = traj.y.derivative();
    let sq = &xd.mul_truncated(&xd, Some(cap)) + &yd.mul_truncated(&yd, Some(cap));
    sq.scale(&rat(1, 2))
}

/// `S₀ = ∫_{-∞}^{T} [½(ẋ² + ẏ²) + v] dt` as a polynomial in the endpoint.
pub fn action_integral(traj: &Trajectory) -> Result<GradedPoly> {
    let n = traj.order;
    let integrand = &kinetic(traj, n) + &restrict_to_trajectory(&traj.potential, traj, n);
    let integrated = integrand.integrate_to_t()?;
    evaluate_at_endpoint(&integrated, traj, n)
}

/// `½(ẋ² + ẏ²) - v` along the trajectory, without truncation.
pub fn energy_conservation_residual(traj: &Trajectory) -> ExpSum {
    let cap = u32::MAX;
    &kinetic(traj, cap) - &restrict_to_trajectory(&traj.potential, traj, cap)
}

/// `ẍ - ∂v/∂x` and `ÿ - ∂v/∂y` along the trajectory, untruncated.
pub fn equation_of_motion_residual(traj: &Trajectory) -> (ExpSum, ExpSum) {
    let cap = u32::MAX;
    let ax = traj.x.derivative().derivative();
    let ay = traj.y.derivative().derivative();
    let fx = restrict_to_trajectory(&traj.potential.d_dx(), traj, cap);
    let fy = restrict_to_trajectory(&traj.potential.d_dy(), traj, cap);
    (&ax - &fx, &ay - &fy)
}

/// Lowest `μ` order present, or `None` for an identically vanishing sum.
pub fn lowest_order(e: &ExpSum) -> Option<u32> {
    e.terms().map(|(k, _)| k.ep).min()
}
