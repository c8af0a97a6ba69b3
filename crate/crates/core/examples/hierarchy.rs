//! The `1/g` hierarchy with the perturbation folded into the potential.
//!
//! `cargo run --example hierarchy -- <b> <mu order> <depth>`

use trajquad::algebra::parse_positive;
use trajquad::hierarchy::{assemble_wavefunction, solve_hierarchy};
use trajquad::trajectory::PotentialSpec;

fn main() -> trajquad::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b = parse_positive(args.first().map_or("1", String::as_str))?;
    let order = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let depth = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let sol = solve_hierarchy(&PotentialSpec::quartic_coupling(b)?, order, depth)?;
    print!("{sol}");

    let psi = assemble_wavefunction(&sol);
    let g = 10.0;
    for mu in [0.0, 0.02, 0.05] {
        println!(
            "g = {g}, mu = {mu}: E = {:.10}, psi(0.2, 0.1) = {:.8}",
            psi.energy_at(g, mu),
            psi.psi_at(g, mu, 0.2, 0.1)
        );
    }
    Ok(())
}
