//! Closed forms shared by the integration and acceptance tests.
#![allow(dead_code)]

use trajquad::algebra::{
    int, odd_double_factorial, powi, rat, Flavor, GradedPoly, Monomial, Rational,
};

pub fn sampled_b() -> [Rational; 4] {
    [rat(1, 2), int(1), int(2), int(3)]
}

pub fn term(flavor: Flavor, c: Rational, ep: u32, gp: i32, i: u32, j: u32) -> GradedPoly {
    GradedPoly::term(flavor, Monomial::new(ep, gp, i, j), c)
}

pub fn mu(c: Rational, ep: u32, i: u32, j: u32) -> GradedPoly {
    term(Flavor::Mu, c, ep, 0, i, j)
}

pub fn eps(c: Rational, ep: u32, i: u32, j: u32) -> GradedPoly {
    term(Flavor::Eps, c, ep, 0, i, j)
}

pub fn sum(parts: Vec<GradedPoly>) -> GradedPoly {
    parts
        .iter()
        .fold(GradedPoly::zero(parts[0].flavor()), |a, p| &a + p)
}

struct B {
    b: Rational,
    p: Rational,
    p2: Rational,
    tb: Rational,
    bt: Rational,
}

fn consts(b: &Rational) -> B {
    let p = int(1) + b;
    B {
        b: b.clone(),
        p2: &p * &p,
        p,
        tb: int(2) + b,
        bt: int(1) + int(2) * b,
    }
}

/// `S₀` through `μ²`.
pub fn s0(b: &Rational) -> GradedPoly {
    let k = consts(b);
    let c2 = -(int(1) / (int(4) * &k.p2));
    sum(vec![
        GradedPoly::harmonic_action(b),
        mu(int(1) / (int(2) * &k.p), 1, 2, 2),
        mu(&c2 / &k.tb, 2, 4, 2),
        mu(&c2 / &k.bt, 2, 2, 4),
    ])
}

pub fn s1(b: &Rational) -> GradedPoly {
    let k = consts(b);
    let q = -(int(1) / (int(4) * &k.p2));
    sum(vec![
        mu(int(1) / (int(4) * &k.p), 1, 2, 0),
        mu(int(1) / (int(4) * &k.p * b), 1, 0, 2),
        mu(&q / (int(4) * &k.tb), 2, 4, 0),
        mu(&q * (int(1) / b + int(9) / (&k.tb * &k.bt)), 2, 2, 2),
        mu(&q / (int(4) * b * &k.bt), 2, 0, 4),
    ])
}

pub fn s2(b: &Rational) -> GradedPoly {
    let k = consts(b);
    let (b2, b3) = (b * b, b * b * b);
    let e = int(1) / (int(8) * &k.p2);
    let x2 = -(int(1) / (int(16) * &k.p2))
        - int(1) / (int(8) * b * &k.p2)
        - &e * (int(9) / (&k.bt * &k.tb) + rat(3, 2) / &k.tb);
    let y2 = -(int(1) / (int(16) * &k.p2 * &b3))
        - int(1) / (int(8) * &b2 * &k.p2)
        - &e * (int(9) / (b * &k.bt * &k.tb) + rat(3, 2) / (&b2 * &k.bt));
    sum(vec![mu(x2, 2, 2, 0), mu(y2, 2, 0, 2)])
}

/// `E₀, E₁, E₂` as coefficients of `g, g⁰, g⁻¹`.
pub fn energies(b: &Rational) -> [GradedPoly; 3] {
    let k = consts(b);
    [
        mu(&k.p / int(2), 0, 0, 0),
        mu(int(1) / (int(4) * b), 1, 0, 0),
        mu(second_order_shift(&k.b), 2, 0, 0),
    ]
}

/// Coefficient of `ε²g⁻⁵` (equivalently `μ²g⁻¹`) in the energy.
pub fn second_order_shift(b: &Rational) -> Rational {
    -(b * b + int(4) * b + int(1)) / (int(16) * b * b * b * (int(1) + b))
}

/// `S₂ … S₅` of the exponential expansion in `ε` (level `k` is the
/// coefficient of `g^{1-k}`).
pub fn exp_eps_actions(b: &Rational) -> Vec<(i32, GradedPoly)> {
    let k = consts(b);
    let q = -(int(1) / (int(4) * &k.p2));
    vec![
        (2, eps(int(1) / (int(2) * &k.p), 1, 2, 2)),
        (
            3,
            sum(vec![
                eps(int(1) / (int(4) * &k.p), 1, 2, 0),
                eps(int(1) / (int(4) * &k.p * b), 1, 0, 2),
            ]),
        ),
        (
            4,
            sum(vec![eps(&q / &k.tb, 2, 4, 2), eps(&q / &k.bt, 2, 2, 4)]),
        ),
        (
            5,
            sum(vec![
                eps(&q / (int(4) * b * &k.bt), 2, 0, 4),
                eps(&q * (int(9) / (&k.tb * &k.bt) + int(1) / b), 2, 2, 2),
                eps(&q / (int(4) * &k.tb), 2, 4, 0),
            ]),
        ),
    ]
}

/// `χ₁ … χ₄` of the polynomial expansion in `ε` (coefficient of `g^{-k}`).
pub fn poly_eps_chis(b: &Rational) -> Vec<(i32, GradedPoly)> {
    let k = consts(b);
    let c3 = int(1) / (int(8) * &k.p2);
    let c4 = int(1) / (int(16) * &k.p2);
    vec![
        (1, eps(-(int(1) / (int(2) * &k.p)), 1, 2, 2)),
        (
            2,
            sum(vec![
                eps(-(int(1) / (int(4) * &k.p)), 1, 2, 0),
                eps(-(int(1) / (int(4) * &k.p * b)), 1, 0, 2),
                eps(int(1) / (int(8) * &k.p2), 2, 4, 4),
            ]),
        ),
        (
            3,
            sum(vec![
                eps(&c3 * (int(4) + b) / &k.tb, 2, 4, 2),
                eps(&c3 * (int(4) * b + int(1)) / (b * &k.bt), 2, 2, 4),
            ]),
        ),
        (
            4,
            sum(vec![
                eps(&c4 * (int(4) + b) / (int(2) * &k.tb), 2, 4, 0),
                eps(&c4 * (int(36) / (&k.bt * &k.tb) + int(5) / b), 2, 2, 2),
                eps(
                    &c4 * (int(4) * b + int(1)) / (int(2) * b * b * &k.bt),
                    2,
                    0,
                    4,
                ),
            ]),
        ),
    ]
}

/// `Γ` for a mixed monomial `x^{2l} y^{2m}`, coefficient of `g^{-(l+m)}`.
pub fn mixed_gamma(l: u32, m: u32, b: &Rational) -> Option<Rational> {
    let k = consts(b);
    let g21 = (int(6) / b + int(3)) / (int(8) * &k.tb);
    let g12 = (int(3) / (b * b) + int(6) / b) / (int(8) * &k.bt);
    Some(match (l, m) {
        (1, 1) => int(1) / (int(4) * b),
        (2, 1) => g21,
        (1, 2) => g12,
        (2, 2) => {
            (int(6) / &k.bt * (int(3) / (b * b) + int(6) / b)
                + int(6) / &k.tb * (int(6) / b + int(3)))
                / (int(32) * &k.p)
        }
        _ => return None,
    })
}

/// `Γ` for `x^{2l}`, coefficient of `g^{-l}`.
pub fn first_gamma_x(l: u32) -> Rational {
    Rational::from_integer(odd_double_factorial(l)) / powi(&int(2), l as i32)
}

pub fn first_gamma_y(m: u32, b: &Rational) -> Rational {
    Rational::from_integer(odd_double_factorial(m)) / powi(&(int(2) * b), m as i32)
}

/// Reduction of `x^{2l}` by `n` steps, coefficient of `g^{-(n+1)}`.
pub fn reduced_gamma_x(l: u32, n: u32) -> Rational {
    let mut c = int(1) / int(2 * (l - n) as i64);
    for j in (l - n + 1)..=l {
        c = c * int(2 * j as i64 - 1) / int(2);
    }
    c
}

pub fn reduced_gamma_y(m: u32, n: u32, b: &Rational) -> Rational {
    reduced_gamma_x(m, n) / powi(b, n as i32 + 1)
}

/// Green's-function coefficients `(name, order k, exponent of g, value)`.
pub fn green_coefficients(b: &Rational) -> Vec<(&'static str, Rational, i32)> {
    let k = consts(b);
    let b2 = b * b;
    vec![
        ("Delta(1)", int(1) / (int(4) * b), -2),
        ("alpha_1(1)", -(int(1) / (int(4) * &k.p)), -2),
        ("beta_1(1)", -(int(1) / (int(4) * b * &k.p)), -2),
        ("a_11(1)", -(int(1) / (int(2) * &k.p)), -1),
        ("Delta(2)", second_order_shift(b), -5),
        (
            "alpha_1(2)",
            (int(1) / (int(16) * &k.p2))
                * ((b + int(2)) / b + int(18) / (&k.tb * &k.bt) + int(3) / &k.tb),
            -5,
        ),
        (
            "beta_1(2)",
            (int(1) / (int(16) * &k.p2))
                * ((int(2) * b + int(1)) / (&b2 * b)
                    + int(18) / (b * &k.tb * &k.bt)
                    + int(3) / (&b2 * &k.bt)),
            -5,
        ),
        (
            "a_11(2)",
            (int(1) / (int(8) * &k.p2)) * (int(5) / (int(2) * b) + int(18) / (&k.bt * &k.tb)),
            -4,
        ),
        ("alpha_2(2)", (int(4) + b) / (int(32) * &k.p2 * &k.tb), -4),
        (
            "beta_2(2)",
            (int(1) + int(4) * b) / (int(32) * &k.p2 * &k.bt * &b2),
            -4,
        ),
        ("a_21(2)", (int(4) + b) / (int(8) * &k.p2 * &k.tb), -3),
        (
            "a_12(2)",
            (int(1) + int(4) * b) / (int(8) * b * &k.p2 * &k.bt),
            -3,
        ),
        ("a_22(2)", int(1) / (int(8) * &k.p2), -2),
    ]
}
