//! The operator route: Neumann series of `C(-TC)ⁿ`, the closed-form `Γ`
//! constants, and the order-by-order ansatz for `χ`.
//!
//! `cargo run --example greens -- <b> <eps order>`

use trajquad::algebra::{int, parse_positive, GradedPoly};
use trajquad::greens::{
    default_max_degree, gamma_coefficient, neumann_terms, solve_green, GammaKind,
};
use trajquad::trajectory::PotentialSpec;

fn main() -> trajquad::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let b = parse_positive(args.first().map_or("2", String::as_str))?;
    let order: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);

    let u = GradedPoly::monomial(int(1), 2, 2);
    for (n, term) in neumann_terms(&u, &b)?.iter().enumerate() {
        println!("C(-TC)^{n} x^2y^2 = {term}");
    }
    for (l, m) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 3)] {
        println!(
            "Gamma({l},{m}) = {}",
            gamma_coefficient(GammaKind::Mixed { l, m }, &b)?
        );
    }

    let spec = PotentialSpec::quartic_coupling(b)?;
    let (ansatz, sol) = solve_green(&spec, order, default_max_degree(order))?;
    for k in 1..=order {
        println!("\norder {k}: Delta = {}", ansatz.delta(k));
        for ((l, m), c) in ansatz.entries(k) {
            println!("  x^{} y^{}: {c}", 2 * l, 2 * m);
        }
    }
    println!("\nE = {}", sol.energy);
    Ok(())
}
