//! Textbook Rayleigh–Schrödinger theory in the oscillator basis, kept exact
//! with surds, and its rewrite as a polynomial `χ`.
//!
//! `cargo run --example rs_oracle -- 3`

use trajquad::algebra::parse_positive;
use trajquad::oracle::{oscillator_matrix_element, rs_corrections};

fn main() -> trajquad::Result<()> {
    let b = parse_positive(&std::env::args().nth(1).unwrap_or_else(|| "1".into()))?;
    for (m, n) in [(0, 0), (0, 2), (2, 2), (2, 4), (0, 4)] {
        println!(
            "F_{m},{n} at omega = b: {}",
            oscillator_matrix_element(m, n, &b)
        );
    }
    let rs = rs_corrections(&b, 2)?;
    for (k, de) in rs.delta_e.iter().enumerate() {
        println!("dE^({}) = {de}", k + 1);
    }
    for (k, amps) in rs.psi.iter().enumerate() {
        println!("psi^({}) amplitudes:", k + 1);
        for (state, a) in amps {
            println!("  {state}: {a}");
        }
    }
    println!("chi = {}", rs.chi);
    Ok(())
}
