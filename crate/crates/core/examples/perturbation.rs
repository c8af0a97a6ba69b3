//! Exponential and polynomial expansions in `ε = g²μ` and `λ = gμ`, and the
//! conversion between them.
//!
//! `cargo run --example perturbation -- 1/2`

use trajquad::algebra::{parse_positive, Flavor};
use trajquad::perturbation::{
    chi_by_exponentiation, exp_to_poly, normalize_grading, solve_exponential, solve_polynomial,
    PerturbationOrders,
};
use trajquad::trajectory::PotentialSpec;

fn main() -> trajquad::Result<()> {
    let b = parse_positive(&std::env::args().nth(1).unwrap_or_else(|| "1".into()))?;
    let spec = PotentialSpec::quartic_coupling(b)?;

    for flavor in [Flavor::Eps, Flavor::Lambda] {
        // the same window as the μ hierarchy through (μ², g⁻¹)
        let orders = PerturbationOrders::covering_hierarchy(flavor, 2, 1)?;
        let exp = solve_exponential(&spec, flavor, orders)?;
        let poly = solve_polynomial(&spec, flavor, orders)?;
        print!("{exp}\n{poly}\n");

        let converted = exp_to_poly(&exp)?;
        let direct = poly.window.clip(poly.chi.as_ref().unwrap());
        println!(
            "exp -> poly matches direct chi: {}",
            poly.window.clip(converted.chi.as_ref().unwrap()) == direct
        );
        println!(
            "exp(-tail) matches direct chi: {}\n",
            poly.window.clip(&chi_by_exponentiation(&exp)) == direct
        );
    }

    let lam = solve_exponential(
        &spec,
        Flavor::Lambda,
        PerturbationOrders::covering_hierarchy(Flavor::Lambda, 2, 1)?,
    )?;
    println!(
        "lambda series regraded to eps:\n{}",
        normalize_grading(&lam, Flavor::Eps)
    );
    Ok(())
}
