//! Rayleigh–Schrödinger perturbation theory for `εU = εx²y²` in the product
//! oscillator basis `u_m^{(g)}(x) u_n^{(gb)}(y)`.
//!
//! Matrix elements of `s²` carry `√((n+1)(n+2))`, so intermediate amplitudes
//! live in `Q(√2, √3, …)`; [`Surd`] keeps them exact. The irrational parts
//! cancel once the wave function is rewritten as `e^{-gS₀} χ(x, y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Flavor, GradedPoly, Monomial, Rational};
use crate::error::{Error, Result};
use crate::hierarchy::{ExpansionKind, SeriesSolution, Window};

/// Oscillator quantum numbers along x and y; only even values couple to the
/// ground state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OscBasisIndex {
    pub m: u32,
    pub n: u32,
}

impl OscBasisIndex {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if !m.is_multiple_of(2) || !n.is_multiple_of(2) {
            return Err(Error::IndexError(format!(
                "odd oscillator index ({m}, {n})"
            )));
        }
        Ok(OscBasisIndex { m, n })
    }

    pub fn is_ground(&self) -> bool {
        self.m == 0 && self.n == 0
    }
}

impl fmt::Display for OscBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ψ_{{{},{}}}", self.m, self.n)
    }
}

/// `n = s² r` with `r` squarefree.
fn split_square(n: u64) -> (u64, u64) {
    let (mut s, mut r) = (1u64, n);
    let mut p = 2u64;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, r)
}

/// `Σ c_r √r` over squarefree `r`, with graded-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Surd {
    parts: BTreeMap<u64, GradedPoly>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn rational(c: GradedPoly) -> Self {
        Surd::with_radicand(c, 1)
    }

    /// `c √n`, simplified.
    pub fn with_radicand(c: GradedPoly, n: u64) -> Self {
        assert!(n > 0, "radicand must be positive");
        let (s, r) = split_square(n);
        let c = c.scale(&int(s as i64));
        let mut parts = BTreeMap::new();
        if !c.is_zero() {
            parts.insert(r, c);
        }
        Surd { parts }
    }

    pub fn sqrt(n: u64) -> Self {
        Self::with_radicand(GradedPoly::one(), n)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.keys().copied()
    }

    /// Coefficient of `√r`.
    pub fn part(&self, r: u64) -> GradedPoly {
        self.parts
            .get(&r)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(Flavor::Mu))
    }

    /// The value when no irrational part survives.
    pub fn as_rational(&self) -> Option<GradedPoly> {
        match self.parts.len() {
            0 => Some(GradedPoly::zero(Flavor::Mu)),
            1 => self.parts.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &GradedPoly) -> Surd {
        &Surd::rational(c.clone()) * self
    }

    pub fn to_f64(&self, g: f64) -> f64 {
        self.parts
            .iter()
            .map(|(r, c)| (*r as f64).sqrt() * c.eval_f64(g, 0.0, 0.0, 0.0))
            .sum()
    }

    fn insert(&mut self, r: u64, c: GradedPoly) {
        let slot = self
            .parts
            .entry(r)
            .or_insert_with(|| GradedPoly::zero(c.flavor()));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.parts.remove(&r);
        }
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (r, c) in &rhs.parts {
            out.insert(*r, c.clone());
        }
        out
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &-rhs
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            parts: self.parts.iter().map(|(r, c)| (*r, -c)).collect(),
        }
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (ra, ca) in &self.parts {
            for (rb, cb) in &rhs.parts {
                let prod = Surd::with_radicand(ca * cb, ra * rb);
                out = &out + &prod;
            }
        }
        out
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(r, c)| {
                if *r == 1 {
                    format!("({c})")
                } else {
                    format!("({c})√{r}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `F^{(ω)}_{m,n} = ⟨u_m|s²|u_n⟩`.
pub fn oscillator_matrix_element(m: u32, n: u32, omega: &Rational) -> Surd {
    let inv = GradedPoly::constant(Rational::one() / (int(2) * omega));
    let (lo, hi) = (m.min(n), m.max(n));
    match hi - lo {
        0 => Surd::rational(inv.scale(&int(2 * lo as i64 + 1))),
        2 => Surd::with_radicand(inv, (lo as u64 + 1) * (lo as u64 + 2)),
        _ => Surd::zero(),
    }
}

/// `F^{(gw)} = F^{(w)}/g`.
fn graded_element(m: u32, n: u32, w: &Rational) -> Surd {
    let f = oscillator_matrix_element(m, n, w);
    Surd {
        parts: f
            .parts
            .into_iter()
            .map(|(r, c)| (r, c.shift(0, -1)))
            .collect(),
    }
}

/// Energy corrections, basis amplitudes and the equivalent `χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RsCorrections {
    pub b: Rational,
    pub order: u32,
    /// `ΔE^{(k)}` for `k = 1..=order`, graded in `g`.
    pub delta_e: Vec<GradedPoly>,
    /// Amplitudes of `ψ^{(k)}` on `ψ_{mn}^{(0)}`, `k = 1..=order`.
    pub psi: Vec<BTreeMap<OscBasisIndex, Surd>>,
    /// `χ = ψ/ψ^{(0)}_{00}` normalized to `χ(0, 0) = 1`, `ε`-graded.
    pub chi: GradedPoly,
}

fn hermite(m: u32) -> Vec<BigInt> {
    // H_{k+1} = 2ξH_k - 2kH_{k-1}
    let mut prev = vec![BigInt::one()];
    if m == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(2)];
    for k in 1..m {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * BigInt::from(2 * k);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `u_m^{(ω)}(s)/u_0^{(ω)}(s) = (2^m m!)^{-1/2} H_m(√ω s)` for even `m`, with
/// `ω = g·w` and `s` the x (`axis = 0`) or y coordinate.
fn basis_ratio(m: u32, w: &Rational, axis: u8) -> Surd {
    let norm = Rational::from_integer(BigInt::from(2u32).pow(m) * factorial(m));
    let mut poly = GradedPoly::zero(Flavor::Mu);
    for (k, h) in hermite(m).into_iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let half = k as u32 / 2;
        let c = Rational::from_integer(h) * crate::algebra::powi(w, half as i32) / &norm;
        let (i, j) = if axis == 0 {
            (k as u32, 0)
        } else {
            (0, k as u32)
        };
        poly.add_term(Monomial::new(0, half as i32, i, j), c);
    }
    Surd::with_radicand(
        poly,
        u64::try_from(norm.numer()).expect("basis index too large"),
    )
}

/// Exact first- and second-order Rayleigh–Schrödinger corrections.
///
/// `g` stays symbolic: every quantity is a polynomial in `g^{±1}`.
pub fn rs_corrections(b: &Rational, order: u32) -> Result<RsCorrections> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidOrders(format!(
            "order must be 1 or 2, got {order}"
        )));
    }
    if *b <= Rational::zero() {
        return Err(Error::InvalidPotential(format!(
            "b must be positive, got {b}"
        )));
    }
    let one = int(1);
    let fx = |m, n| graded_element(m, n, &one);
    let fy = |m, n| graded_element(m, n, b);
    let top = 4 * order;
    let states: Vec<OscBasisIndex> = (0..=top)
        .step_by(2)
        .flat_map(|m| (0..=top).step_by(2).map(move |n| OscBasisIndex { m, n }))
        .collect();
    let coupling = |a: &OscBasisIndex, c: &OscBasisIndex| &fx(a.m, c.m) * &fy(a.n, c.n);
    // 1/(E_00 - E_mn) = -1/(g(m + nb))
    let inv_gap = |s: &OscBasisIndex| {
        let gap = int(s.m as i64) + b * int(s.n as i64);
        Surd::rational(GradedPoly::term(
            Flavor::Mu,
            Monomial::new(0, -1, 0, 0),
            -(one.clone() / gap),
        ))
    };
    let ground = OscBasisIndex { m: 0, n: 0 };
    let v00 = coupling(&ground, &ground);
    let excited: Vec<OscBasisIndex> = states.iter().copied().filter(|s| !s.is_ground()).collect();

    let mut psi1 = BTreeMap::new();
    let mut de2 = Surd::zero();
    for s in &excited {
        let v = coupling(&ground, s);
        if v.is_zero() {
            continue;
        }
        psi1.insert(*s, &v * &inv_gap(s));
        de2 = &de2 + &(&(&v * &v) * &inv_gap(s));
    }
    let mut delta_e = vec![v00.as_rational().expect("first-order shift is rational")];
    let mut psi = vec![psi1.clone()];
    if order == 2 {
        delta_e.push(de2.as_rational().expect("second-order shift is rational"));
        let mut psi2 = BTreeMap::new();
        for t in &excited {
            let mut amp = Surd::zero();
            for (s, a1) in &psi1 {
                amp = &amp + &(&(a1 * &coupling(s, t)) * &inv_gap(t));
            }
            let gap2 = &inv_gap(t) * &inv_gap(t);
            amp = &amp - &(&(&v00 * &coupling(&ground, t)) * &gap2);
            if !amp.is_zero() {
                psi2.insert(*t, amp);
            }
        }
        psi.push(psi2);
    }

    // P = 1 + Σ εᵏ Σ ψ^{(k)}_{mn} ψ_{mn}/ψ_{00}
    let mut p = GradedPoly::one().with_flavor(Flavor::Eps);
    for (k, amps) in psi.iter().enumerate() {
        let mut level = Surd::zero();
        for (s, a) in amps {
            level = &level + &(a * &(&basis_ratio(s.m, &one, 0) * &basis_ratio(s.n, b, 1)));
        }
        let level = level
            .as_rational()
            .ok_or_else(|| Error::Config("irrational part survived in χ".into()))?;
        p = &p + &level.shift(k as u32 + 1, 0).with_flavor(Flavor::Eps);
    }
    let c = p.constant_part();
    let x = &c - &GradedPoly::one().with_flavor(Flavor::Eps);
    // 1/c = Σ (-x)ⁿ, truncated at εᵒʳᵈᵉʳ
    let mut inv = GradedPoly::one().with_flavor(Flavor::Eps);
    let mut power = GradedPoly::one().with_flavor(Flavor::Eps);
    for _ in 0..order {
        power = power.mul_truncated(&-&x, Some(order));
        inv = &inv + &power;
    }
    let chi = p.mul_truncated(&inv, Some(order));
    Ok(RsCorrections {
        b: b.clone(),
        order,
        delta_e,
        psi,
        chi,
    })
}

impl RsCorrections {
    pub fn to_solution(&self) -> SeriesSolution {
        let mut energy = GradedPoly::term(
            Flavor::Eps,
            Monomial::new(0, 1, 0, 0),
            (int(1) + &self.b) / int(2),
        );
        for (k, d) in self.delta_e.iter().enumerate() {
            energy = &energy + &d.shift(k as u32 + 1, 0).with_flavor(Flavor::Eps);
        }
        SeriesSolution {
            method: "rs".into(),
            kind: ExpansionKind::Polynomial,
            flavor: Flavor::Eps,
            b: self.b.clone(),
            exponent: GradedPoly::harmonic_action(&self.b)
                .shift(0, 1)
                .with_flavor(Flavor::Eps),
            chi: Some(self.chi.clone()),
            energy,
            window: Window {
                flavor: Flavor::Eps,
                max_order: self.order,
                min_g_power: None,
            },
        }
    }
}
