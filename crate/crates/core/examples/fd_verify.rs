//! Series energy against the Richardson-extrapolated finite-difference
//! eigenvalue over a sweep in `μ`.
//!
//! `cargo run --release --example fd_verify -- <g> <b>`

use trajquad::algebra::{parse_positive, to_f64};
use trajquad::cli::fit_order;
use trajquad::hierarchy::solve_hierarchy;
use trajquad::oracle::{extrapolated_ground_state, GridConfig};
use trajquad::trajectory::PotentialSpec;

fn main() -> trajquad::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g: f64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(10.0);
    let b = parse_positive(args.get(1).map_or("1", String::as_str))?;
    let spec = PotentialSpec::quartic_coupling(b.clone())?;
    let series = solve_hierarchy(&spec, 2, 1)?;
    let grid = GridConfig::default_for(g, to_f64(&b));

    let mut errors = Vec::new();
    for mu in [0.0, 0.02, 0.04, 0.08] {
        let fd = extrapolated_ground_state(&spec, g, mu, &grid, 3)?;
        let e = series.energy_at(g, mu);
        let levels: Vec<String> = fd
            .estimates
            .iter()
            .map(|s| format!("{:.10}", s.energy))
            .collect();
        println!(
            "mu = {mu:<5} series {e:.12}  fd {:.12}  |d| {:.2e}  grids [{}]",
            fd.energy,
            (e - fd.energy).abs(),
            levels.join(", ")
        );
        errors.push((mu, (e - fd.energy).abs()));
    }
    if let Some(p) = fit_order(&errors) {
        println!("error ~ mu^{p:.2}");
    }
    Ok(())
}
