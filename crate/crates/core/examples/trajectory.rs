//! Classical trajectory of the inverted potential, its endpoint inversion and
//! the action integral `S₀`.
//!
//! `cargo run --example trajectory -- 2/3`

use trajquad::algebra::parse_positive;
use trajquad::trajectory::{
    action_integral, endpoint_round_trip, energy_conservation_residual, invert_endpoint_constants,
    lowest_order, solve_classical_trajectory, PotentialSpec,
};

fn main() -> trajquad::Result<()> {
    let b = parse_positive(&std::env::args().nth(1).unwrap_or_else(|| "2".into()))?;
    let spec = PotentialSpec::quartic_coupling(b.clone())?;
    let order = 2;
    let traj = solve_classical_trajectory(&spec, order)?;
    for n in 0..=order {
        println!("x_{n}(t) = {}", traj.x_series(n));
        println!("y_{n}(t) = {}", traj.y_series(n));
    }
    let residual = energy_conservation_residual(&traj);
    println!(
        "energy residual starts at mu^{}",
        lowest_order(&residual).unwrap_or(u32::MAX)
    );

    let traj = invert_endpoint_constants(traj);
    let (x_t, y_t) = endpoint_round_trip(&traj)?;
    println!("x(T) = {x_t}, y(T) = {y_t}");
    println!("S0 = {}", action_integral(&traj)?);
    Ok(())
}
