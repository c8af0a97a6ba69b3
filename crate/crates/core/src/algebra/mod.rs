//! Exact-arithmetic substrate: graded polynomials in `(x, y)`, exponential
//! sums in trajectory time, and the maps between them.
//!
//! A polynomial is carried onto a trajectory with [`restrict_to_trajectory`],
//! integrated from `t = -∞` with [`ExpSum::integrate_to_t`], and pulled back to
//! a polynomial in the endpoint `(x_T, y_T)` with [`evaluate_at_endpoint`].

mod expsum;
mod poly;
mod rational;

pub use expsum::{ExpKey, ExpSum};
pub use poly::{grad_dot, Flavor, GradedPoly, Monomial};
pub use rational::{
    factorial, int, odd_double_factorial, one, parse_positive, parse_rational, powi, rat, to_f64,
    zero, Rational,
};

use crate::error::{Error, Result};
use crate::trajectory::Trajectory;

/// Substitutes `x(t)`, `y(t)` into `p` and expands, dropping everything above
/// perturbation order `order`.
pub fn restrict_to_trajectory(p: &GradedPoly, traj: &Trajectory, order: u32) -> ExpSum {
    let flavor = if p.is_graded() {
        p.flavor()
    } else {
        traj.x().flavor()
    };
    let b = traj.b();
    let x = traj.x().truncate(order);
    let y = traj.y().truncate(order);
    let unit = ExpSum::from_terms(b, flavor, [(ExpKey::new(0, 0, 0, 0, 0, 0), one())]);
    let mut xp = vec![unit.clone()];
    let mut yp = vec![unit];
    let mut out = ExpSum::zero(b, flavor);
    for (m, c) in p.terms() {
        if m.ep > order {
            continue;
        }
        while xp.len() <= m.i as usize {
            let next = xp.last().unwrap().mul_truncated(&x, Some(order));
            xp.push(next);
        }
        while yp.len() <= m.j as usize {
            let next = yp.last().unwrap().mul_truncated(&y, Some(order));
            yp.push(next);
        }
        let head = ExpSum::from_terms(
            b,
            flavor,
            [(ExpKey::new(m.ep, m.gp, 0, 0, 0, 0), c.clone())],
        );
        let term = head
            .mul_truncated(&xp[m.i as usize], Some(order))
            .mul_truncated(&yp[m.j as usize], Some(order));
        out = &out + &term;
    }
    out
}

/// Sets `t = T` and eliminates `c_x`, `c_y` through the endpoint constants,
/// returning a polynomial in the endpoint coordinates.
///
/// Every `e^{(k + l b) T}` must cancel against `c_x^p c_y^q`; a surviving factor
/// is reported as [`Error::ResidualTimeDependence`].
pub fn evaluate_at_endpoint(e: &ExpSum, traj: &Trajectory, order: u32) -> Result<GradedPoly> {
    let ends = traj.endpoint().ok_or(Error::MissingEndpointConstants)?;
    let mut flat = GradedPoly::zero(e.flavor());
    for (key, c) in e.terms() {
        if !key.is_homogeneous() {
            return Err(Error::ResidualTimeDependence(*key));
        }
        flat.add_term(Monomial::new(key.ep, key.gp, key.p, key.q), c.clone());
    }
    Ok(flat.substitute(&ends.cx, &ends.cy, Some(order)))
}
