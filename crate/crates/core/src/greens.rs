//! Operator form of the perturbation series around `S₀ = ½(x² + by²)`.
//!
//! With `C = g⁻¹∫_{-∞}^{t} dt'` along the harmonic trajectory and `T = -½∇²`,
//! `χ` solves `χ = 1 + C(1 + TC)⁻¹ ε(Δ - U)χ`. On monomials
//! `C x^{2l}y^{2m} = x^{2l}y^{2m} / (2g(l + mb))`, and `-TC` lowers the degree
//! by two, so the Neumann series for `(1 + TC)⁻¹` terminates. `C` diverges on
//! constants; the energy shift `Δ` is exactly what cancels them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{int, rat, Flavor, GradedPoly, Monomial, Rational};
use crate::error::{Error, Result};
use crate::hierarchy::{SeriesSolution, Window};
use crate::trajectory::PotentialSpec;

fn half_powers(m: &Monomial) -> Result<(u32, u32)> {
    if !m.i.is_multiple_of(2) || !m.j.is_multiple_of(2) {
        return Err(Error::OddParity(*m));
    }
    Ok((m.i / 2, m.j / 2))
}

/// `C x^{2l}y^{2m} = x^{2l}y^{2m} / (2g(l + mb))`.
pub fn apply_c(p: &GradedPoly, b: &Rational) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero(p.flavor());
    for (m, c) in p.terms() {
        let (l, n) = half_powers(m)?;
        if l == 0 && n == 0 {
            return Err(Error::SingularC);
        }
        let rate = int(2) * (int(l as i64) + b * int(n as i64));
        out.add_term(Monomial { gp: m.gp - 1, ..*m }, c / rate);
    }
    Ok(out)
}

/// `(-TC)p = ½∇²(C p)`.
pub fn apply_minus_tc(p: &GradedPoly, b: &Rational) -> Result<GradedPoly> {
    Ok(apply_c(p, b)?.laplacian().scale(&rat(1, 2)))
}

/// The nonzero summands `(-TC)ⁿ p` of the Neumann series.
///
/// A constant produced at some stage is kept in that summand but not carried
/// into the next one: it can only be cancelled by `Δ`, never integrated.
pub fn neumann_terms(p: &GradedPoly, b: &Rational) -> Result<Vec<GradedPoly>> {
    if !p.constant_part().is_zero() {
        return Err(Error::SingularC);
    }
    let mut out = Vec::new();
    let mut term = p.clone();
    while !term.is_zero() {
        let next = apply_minus_tc(&term.without_constant(), b)?;
        out.push(term);
        term = next;
    }
    Ok(out)
}

/// `(1 + TC)⁻¹ p = Σₙ (-TC)ⁿ p`.
pub fn neumann_apply(p: &GradedPoly, b: &Rational) -> Result<GradedPoly> {
    let terms = neumann_terms(p, b)?;
    Ok(terms
        .iter()
        .fold(GradedPoly::zero(p.flavor()), |acc, t| &acc + t))
}

/// Which `Γ` coefficient to read off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaKind {
    /// `Γ¹_{l,(x)}`: `(-TC)^l x^{2l}` is this constant.
    FirstX { l: u32 },
    /// `Γ¹_{m,(y)}`.
    FirstY { m: u32 },
    /// `Γ^{l-n}_{l,(x)}`: `C(-TC)ⁿ x^{2l} = Γ x^{2(l-n)}` for `n < l`.
    ReducedX { l: u32, n: u32 },
    /// `Γ^{m-n}_{m,(y)}`.
    ReducedY { m: u32, n: u32 },
    /// `Γ^{1,1}_{l,m}`: `(-TC)^{l+m} x^{2l}y^{2m}` is this constant.
    Mixed { l: u32, m: u32 },
}

fn power_chain(p: GradedPoly, steps: u32, b: &Rational) -> Result<GradedPoly> {
    (0..steps).try_fold(p, |acc, _| apply_minus_tc(&acc, b))
}

/// Evaluates a `Γ` by composing `C` and `-TC` and reading the coefficient.
pub fn gamma_coefficient(kind: GammaKind, b: &Rational) -> Result<GradedPoly> {
    let bad = |msg: String| Err(Error::IndexError(msg));
    let x = |l| GradedPoly::monomial(int(1), 2 * l, 0);
    let y = |m| GradedPoly::monomial(int(1), 0, 2 * m);
    match kind {
        GammaKind::FirstX { l } | GammaKind::FirstY { m: l } if l == 0 => {
            bad(format!("{kind:?}: index must be at least 1"))
        }
        GammaKind::FirstX { l } => Ok(power_chain(x(l), l, b)?.constant_part()),
        GammaKind::FirstY { m } => Ok(power_chain(y(m), m, b)?.constant_part()),
        GammaKind::ReducedX { l, n } | GammaKind::ReducedY { m: l, n } if n >= l => {
            bad(format!("{kind:?}: need n < index"))
        }
        GammaKind::ReducedX { l, n } => {
            Ok(apply_c(&power_chain(x(l), n, b)?, b)?.coefficient_of(2 * (l - n), 0))
        }
        GammaKind::ReducedY { m, n } => {
            Ok(apply_c(&power_chain(y(m), n, b)?, b)?.coefficient_of(0, 2 * (m - n)))
        }
        GammaKind::Mixed { l, m } if l == 0 || m == 0 => {
            bad(format!("{kind:?}: indices must be at least 1"))
        }
        GammaKind::Mixed { l, m } => {
            let p = GradedPoly::monomial(int(1), 2 * l, 2 * m);
            Ok(power_chain(p, l + m, b)?.constant_part())
        }
    }
}

/// A polynomial still owing an outer `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTerm {
    pub poly: GradedPoly,
    pub pending_c: bool,
}

impl OperatorTerm {
    pub fn pending(poly: GradedPoly) -> Self {
        OperatorTerm {
            poly,
            pending_c: true,
        }
    }

    pub fn resolved(poly: GradedPoly) -> Self {
        OperatorTerm {
            poly,
            pending_c: false,
        }
    }

    /// The `x⁰y⁰` part that must vanish before `C` may act.
    pub fn obstruction(&self) -> GradedPoly {
        self.poly.constant_part()
    }

    pub fn resolve(self, b: &Rational) -> Result<GradedPoly> {
        if self.pending_c {
            apply_c(&self.poly, b)
        } else {
            Ok(self.poly)
        }
    }
}

/// Coefficients of `χ = 1 + Σα_l x^{2l} + Σβ_m y^{2m} + Σa_{lm} x^{2l}y^{2m}`,
/// each expanded in `ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiAnsatz {
    b: Rational,
    /// `χ^{(k)}` for `k = 1, 2, …`; coefficients are graded in `g` only.
    orders: Vec<GradedPoly>,
    /// `Δ(k)` for `k = 1, 2, …`.
    delta: Vec<GradedPoly>,
    max_degree: u32,
}

impl ChiAnsatz {
    pub fn eps_order(&self) -> u32 {
        self.orders.len() as u32
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// `χ^{(k)}`, the coefficient of `ε^k` in `χ`.
    pub fn order(&self, k: u32) -> GradedPoly {
        k.checked_sub(1)
            .and_then(|i| self.orders.get(i as usize).cloned())
            .unwrap_or_else(|| GradedPoly::zero(Flavor::Eps))
    }

    pub fn alpha(&self, l: u32, k: u32) -> GradedPoly {
        self.order(k).coefficient_of(2 * l, 0)
    }

    pub fn beta(&self, m: u32, k: u32) -> GradedPoly {
        self.order(k).coefficient_of(0, 2 * m)
    }

    pub fn a(&self, l: u32, m: u32, k: u32) -> GradedPoly {
        self.order(k).coefficient_of(2 * l, 2 * m)
    }

    /// `Δ(k)`; `Δ(0)` is zero by convention.
    pub fn delta(&self, k: u32) -> GradedPoly {
        k.checked_sub(1)
            .and_then(|i| self.delta.get(i as usize).cloned())
            .unwrap_or_else(|| GradedPoly::zero(Flavor::Eps))
    }

    /// All nonzero `(l, m) → coefficient` entries of `χ^{(k)}`.
    pub fn entries(&self, k: u32) -> BTreeMap<(u32, u32), GradedPoly> {
        let mut out = BTreeMap::new();
        for (m, _) in self.order(k).terms() {
            let key = (m.i / 2, m.j / 2);
            out.entry(key)
                .or_insert_with(|| self.order(k).coefficient_of(m.i, m.j));
        }
        out
    }

    /// `χ = 1 + Σ εᵏ χ^{(k)}` as an `ε`-graded polynomial.
    pub fn chi(&self) -> GradedPoly {
        let mut chi = GradedPoly::one().with_flavor(Flavor::Eps);
        for (k, p) in self.orders.iter().enumerate() {
            chi = &chi + &p.shift(k as u32 + 1, 0).with_flavor(Flavor::Eps);
        }
        chi
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }
}

/// Solves `χ = 1 + C(1 + TC)⁻¹ ε(Δ - U)χ` through `ε^eps_order`.
///
/// At order `k` the argument of `C` is
/// `Δ(k) + (1 + TC)⁻¹[Σ_{j<k} Δ(j)χ^{(k-j)} - Uχ^{(k-1)}]`; `Δ(k)` is fixed by
/// cancelling its constant part, then `C` acts on the rest.
pub fn solve_green(
    spec: &PotentialSpec,
    eps_order: u32,
    max_degree: u32,
) -> Result<(ChiAnsatz, SeriesSolution)> {
    if eps_order == 0 {
        return Err(Error::InvalidOrders("eps_order must be at least 1".into()));
    }
    let b = spec.b();
    let u = spec.u();
    let mut chis = vec![GradedPoly::one()];
    let mut delta: Vec<GradedPoly> = vec![GradedPoly::zero(Flavor::Mu)];
    for k in 1..=eps_order as usize {
        let mut source = -&(u * &chis[k - 1]);
        for j in 1..k {
            source = &source + &(&delta[j] * &chis[k - j]);
        }
        let inner = neumann_apply(&source, b)?;
        let dk = -inner.constant_part();
        let pending = OperatorTerm::pending(&inner + &dk);
        debug_assert!(pending.obstruction().is_zero());
        let chi_k = pending.resolve(b)?;
        if let Some((m, _)) = chi_k.terms().find(|(m, _)| (m.i + m.j) / 2 > max_degree) {
            return Err(Error::TruncationOverflow {
                i: m.i / 2,
                j: m.j / 2,
                max_degree,
            });
        }
        chis.push(chi_k);
        delta.push(dk);
    }
    let ansatz = ChiAnsatz {
        b: b.clone(),
        orders: chis[1..]
            .iter()
            .map(|p| p.clone().with_flavor(Flavor::Eps))
            .collect(),
        delta: delta[1..]
            .iter()
            .map(|p| p.clone().with_flavor(Flavor::Eps))
            .collect(),
        max_degree,
    };
    let mut energy = GradedPoly::term(
        Flavor::Eps,
        Monomial::new(0, 1, 0, 0),
        (int(1) + b) / int(2),
    );
    for k in 1..=eps_order {
        energy = &energy + &ansatz.delta(k).shift(k, 0);
    }
    let solution = SeriesSolution {
        method: "green".into(),
        kind: crate::hierarchy::ExpansionKind::Polynomial,
        flavor: Flavor::Eps,
        b: b.clone(),
        exponent: GradedPoly::harmonic_action(b)
            .shift(0, 1)
            .with_flavor(Flavor::Eps),
        chi: Some(ansatz.chi()),
        energy: energy.with_flavor(Flavor::Eps),
        window: Window {
            flavor: Flavor::Eps,
            max_order: eps_order,
            min_g_power: None,
        },
    };
    Ok((ansatz, solution))
}

/// Default `max_degree` for `U = x²y²`: each order raises the degree by two
/// in both variables.
pub fn default_max_degree(eps_order: u32) -> u32 {
    2 * eps_order
}

/// Γ^{1,1}_{l,m} from the one-step rule alone, as an independent check of the
/// operator composition: `f(l, m) = [2l(2l-1)f(l-1, m) + 2m(2m-1)f(l, m-1)] / (4g(l + mb))`.
pub fn mixed_gamma_recursive(l: u32, m: u32, b: &Rational) -> Rational {
    fn rec(l: u32, m: u32, b: &Rational, memo: &mut BTreeMap<(u32, u32), Rational>) -> Rational {
        if l == 0 && m == 0 {
            return int(1);
        }
        if let Some(v) = memo.get(&(l, m)) {
            return v.clone();
        }
        let mut acc = Rational::zero();
        if l > 0 {
            acc += int((2 * l * (2 * l - 1)) as i64) * rec(l - 1, m, b, memo);
        }
        if m > 0 {
            acc += int((2 * m * (2 * m - 1)) as i64) * rec(l, m - 1, b, memo);
        }
        let v = acc / (int(4) * (int(l as i64) + b * int(m as i64)));
        memo.insert((l, m), v.clone());
        v
    }
    rec(l, m, b, &mut BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{odd_double_factorial, powi};
    use crate::hierarchy::{normalize_grading, solve_hierarchy};
    use crate::perturbation::{solve_polynomial, PerturbationOrders};

    fn bs() -> [Rational; 4] {
        [rat(1, 2), int(1), int(2), int(3)]
    }

    fn g(c: Rational, gp: i32) -> GradedPoly {
        GradedPoly::term(Flavor::Mu, Monomial::new(0, gp, 0, 0), c)
    }

    fn xy(c: Rational, gp: i32, i: u32, j: u32) -> GradedPoly {
        GradedPoly::term(Flavor::Mu, Monomial::new(0, gp, i, j), c)
    }

    #[test]
    fn c_on_monomials() {
        let b = int(3);
        assert_eq!(
            apply_c(&GradedPoly::monomial(int(1), 2, 0), &b).unwrap(),
            xy(rat(1, 2), -1, 2, 0)
        );
        assert_eq!(
            apply_c(&GradedPoly::monomial(int(1), 2, 2), &b).unwrap(),
            xy(int(1) / int(8), -1, 2, 2)
        );
        assert_eq!(apply_c(&GradedPoly::one(), &b), Err(Error::SingularC));
        assert!(matches!(
            apply_c(&GradedPoly::monomial(int(1), 1, 2), &b),
            Err(Error::OddParity(_))
        ));
    }

    #[test]
    fn minus_tc_on_monomials() {
        for b in bs() {
            let x2 = apply_minus_tc(&GradedPoly::monomial(int(1), 2, 0), &b).unwrap();
            assert_eq!(x2, g(rat(1, 2), -1));
            let y4 = apply_minus_tc(&GradedPoly::monomial(int(1), 0, 4), &b).unwrap();
            assert_eq!(y4, xy(int(3) / (int(2) * &b), -1, 0, 2));
            let x2y2 = apply_minus_tc(&GradedPoly::monomial(int(1), 2, 2), &b).unwrap();
            let c = int(1) / (int(2) * (int(1) + &b));
            assert_eq!(x2y2, &xy(c.clone(), -1, 2, 0) + &xy(c, -1, 0, 2));
            // the one-step rules for pure powers
            for l in 1..5u32 {
                let got = apply_minus_tc(&GradedPoly::monomial(int(1), 2 * l, 0), &b).unwrap();
                assert_eq!(got, xy(rat(2 * l as i64 - 1, 2), -1, 2 * l - 2, 0));
                let got = apply_minus_tc(&GradedPoly::monomial(int(1), 0, 2 * l), &b).unwrap();
                assert_eq!(
                    got,
                    xy(int(2 * l as i64 - 1) / (int(2) * &b), -1, 0, 2 * l - 2)
                );
            }
        }
    }

    #[test]
    fn tc_means_c_first() {
        // T then C would act on ∇²x²y² = 2(x² + y²) instead
        let b = int(2);
        let p = GradedPoly::monomial(int(1), 2, 2);
        let c_first = apply_c(&p, &b).unwrap().laplacian().scale(&rat(1, 2));
        let t_first = apply_c(&p.laplacian().scale(&rat(1, 2)), &b).unwrap();
        assert_eq!(apply_minus_tc(&p, &b).unwrap(), c_first);
        assert_ne!(c_first, t_first);
    }

    #[test]
    fn neumann_on_quartic() {
        for b in bs() {
            let got = neumann_apply(&GradedPoly::monomial(int(1), 2, 2), &b).unwrap();
            let c = int(1) / (int(2) * (int(1) + &b));
            let want = &(&GradedPoly::monomial(int(1), 2, 2) + &xy(c.clone(), -1, 2, 0))
                + &(&xy(c, -1, 0, 2) + &g(int(1) / (int(4) * &b), -2));
            assert_eq!(got, want, "b = {b}");
        }
        assert!(neumann_apply(&GradedPoly::zero(Flavor::Mu), &int(1))
            .unwrap()
            .is_zero());
        assert_eq!(
            neumann_apply(&GradedPoly::one(), &int(1)),
            Err(Error::SingularC)
        );
    }

    #[test]
    fn neumann_summand_count() {
        let b = rat(1, 2);
        for l in 0..4u32 {
            for m in 0..4u32 {
                if l + m == 0 {
                    continue;
                }
                let terms = neumann_terms(&GradedPoly::monomial(int(1), 2 * l, 2 * m), &b).unwrap();
                assert_eq!(terms.len() as u32, l + m + 1);
                assert!(terms.iter().all(|t| !t.is_zero()));
            }
        }
    }

    #[test]
    fn gamma_closed_forms() {
        for b in bs() {
            let gm = |l, m| gamma_coefficient(GammaKind::Mixed { l, m }, &b).unwrap();
            assert_eq!(gm(1, 1), g(int(1) / (int(4) * &b), -2));
            assert_eq!(
                gm(2, 1),
                g((int(6) / &b + int(3)) / (int(8) * (int(2) + &b)), -3)
            );
            assert_eq!(
                gm(1, 2),
                g(
                    (int(3) / (&b * &b) + int(6) / &b) / (int(8) * (int(1) + int(2) * &b)),
                    -3
                )
            );
            let g22 = (int(6) / (int(1) + int(2) * &b) * (int(3) / (&b * &b) + int(6) / &b)
                + int(6) / (int(2) + &b) * (int(6) / &b + int(3)))
                / (int(32) * (int(1) + &b));
            assert_eq!(gm(2, 2), g(g22, -4));
            for l in 1..=4u32 {
                let dfact = Rational::from_integer(odd_double_factorial(l));
                let fx = gamma_coefficient(GammaKind::FirstX { l }, &b).unwrap();
                assert_eq!(fx, g(&dfact / powi(&int(2), l as i32), -(l as i32)));
                let fy = gamma_coefficient(GammaKind::FirstY { m: l }, &b).unwrap();
                assert_eq!(fy, g(&dfact / powi(&(int(2) * &b), l as i32), -(l as i32)));
                for m in 1..=4u32 {
                    let want = mixed_gamma_recursive(l, m, &b);
                    assert_eq!(gm(l, m), g(want, -((l + m) as i32)), "({l}, {m})");
                }
                for n in 0..l {
                    // Π_{j=l-n+1}^{l} (2j-1)/(2g) · 1/(2g(l-n))
                    let mut want = int(1) / int(2 * (l - n) as i64);
                    for j in (l - n + 1)..=l {
                        want = want * int(2 * j as i64 - 1) / int(2);
                    }
                    let rx = gamma_coefficient(GammaKind::ReducedX { l, n }, &b).unwrap();
                    assert_eq!(rx, g(want.clone(), -(n as i32) - 1));
                    let ry = gamma_coefficient(GammaKind::ReducedY { m: l, n }, &b).unwrap();
                    assert_eq!(ry, g(want / powi(&b, n as i32 + 1), -(n as i32) - 1));
                }
            }
        }
    }

    #[test]
    fn gamma_index_errors() {
        let b = int(1);
        for kind in [
            GammaKind::FirstX { l: 0 },
            GammaKind::FirstY { m: 0 },
            GammaKind::ReducedX { l: 2, n: 2 },
            GammaKind::ReducedY { m: 1, n: 3 },
            GammaKind::Mixed { l: 0, m: 1 },
        ] {
            assert!(
                matches!(gamma_coefficient(kind, &b), Err(Error::IndexError(_))),
                "{kind:?}"
            );
        }
    }

    #[test]
    fn operator_term_bookkeeping() {
        let b = int(1);
        let t = OperatorTerm::pending(&GradedPoly::one() + &GradedPoly::monomial(int(1), 2, 0));
        assert_eq!(t.obstruction(), GradedPoly::one());
        assert_eq!(t.clone().resolve(&b), Err(Error::SingularC));
        let r = OperatorTerm::resolved(GradedPoly::one());
        assert_eq!(r.resolve(&b).unwrap(), GradedPoly::one());
    }

    #[test]
    fn first_and_second_order_coefficients() {
        for b in bs() {
            let spec = PotentialSpec::quartic_coupling(b.clone()).unwrap();
            let (ans, _) = solve_green(&spec, 2, 4).unwrap();
            let p = int(1) + &b;
            let p2 = &p * &p;
            let tb = int(2) + &b;
            let bt = int(1) + int(2) * &b;
            let b2 = &b * &b;
            let e = |c: Rational, gp| g(c, gp).with_flavor(Flavor::Eps);
            assert_eq!(ans.delta(1), e(int(1) / (int(4) * &b), -2));
            assert_eq!(ans.alpha(1, 1), e(-(int(1) / (int(4) * &p)), -2));
            assert_eq!(ans.beta(1, 1), e(-(int(1) / (int(4) * &b * &p)), -2));
            assert_eq!(ans.a(1, 1, 1), e(-(int(1) / (int(2) * &p)), -1));
            assert_eq!(ans.entries(1).len(), 3);
            let d2 = -(&b2 + int(4) * &b + int(1)) / (int(16) * &b2 * &b * &p);
            assert_eq!(ans.delta(2), e(d2, -5));
            let a1 = (int(1) / (int(16) * &p2))
                * ((&b + int(2)) / &b + int(18) / (&tb * &bt) + int(3) / &tb);
            assert_eq!(ans.alpha(1, 2), e(a1, -5), "b = {b}");
            let b1 = (int(1) / (int(16) * &p2))
                * ((int(2) * &b + int(1)) / (&b2 * &b)
                    + int(18) / (&b * &tb * &bt)
                    + int(3) / (&b2 * &bt));
            assert_eq!(ans.beta(1, 2), e(b1, -5), "b = {b}");
            let a11 = (int(1) / (int(8) * &p2)) * (int(5) / (int(2) * &b) + int(18) / (&bt * &tb));
            assert_eq!(ans.a(1, 1, 2), e(a11, -4));
            assert_eq!(
                ans.alpha(2, 2),
                e((int(4) + &b) / (int(32) * &p2 * &tb), -4)
            );
            assert_eq!(
                ans.beta(2, 2),
                e((int(1) + int(4) * &b) / (int(32) * &p2 * &bt * &b2), -4)
            );
            assert_eq!(ans.a(2, 1, 2), e((int(4) + &b) / (int(8) * &p2 * &tb), -3));
            assert_eq!(
                ans.a(1, 2, 2),
                e((int(1) + int(4) * &b) / (int(8) * &b * &p2 * &bt), -3)
            );
            assert_eq!(ans.a(2, 2, 2), e(int(1) / (int(8) * &p2), -2));
            assert_eq!(ans.entries(2).len(), 8);
        }
    }

    #[test]
    fn matches_polynomial_expansion_and_hierarchy() {
        for b in bs() {
            let spec = PotentialSpec::quartic_coupling(b.clone()).unwrap();
            let (_, green) = solve_green(&spec, 2, 4).unwrap();
            let orders = PerturbationOrders::new(2, -5).unwrap();
            let poly = solve_polynomial(&spec, Flavor::Eps, orders).unwrap();
            let w = poly.window;
            assert_eq!(
                w.clip(green.chi.as_ref().unwrap()),
                w.clip(poly.chi.as_ref().unwrap())
            );
            assert_eq!(w.clip(&green.energy), w.clip(&poly.energy));
            // every Green coefficient through ε² already sits inside g^{-5}
            assert_eq!(w.clip(&green.energy), green.energy);
            let mu = solve_hierarchy(&spec, 2, 1).unwrap();
            let as_mu = normalize_grading(&green, Flavor::Mu);
            assert_eq!(as_mu.energy, mu.energy, "b = {b}");
        }
    }

    #[test]
    fn truncation_is_enforced() {
        let spec = PotentialSpec::quartic_coupling(int(1)).unwrap();
        assert!(matches!(
            solve_green(&spec, 2, 3),
            Err(Error::TruncationOverflow { i: 2, j: 2, .. })
        ));
        assert!(solve_green(&spec, 0, 4).is_err());
        assert_eq!(default_max_degree(2), 4);
        let (ans, _) = solve_green(&spec, 3, default_max_degree(3)).unwrap();
        assert_eq!(ans.eps_order(), 3);
    }
}
