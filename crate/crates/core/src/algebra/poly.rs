use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{int, powi, to_f64, Rational};

/// Which small parameter the `ep` grading counts.
///
/// The three flavors describe the same perturbation with different bookkeeping:
/// `ε = g²μ` and `λ = gμ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Mu,
    Eps,
    Lambda,
}

impl Flavor {
    /// Power of `g` hidden in one unit of the parameter, relative to `μ`.
    pub fn g_weight(self) -> i32 {
        match self {
            Flavor::Mu => 0,
            Flavor::Eps => 2,
            Flavor::Lambda => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Flavor::Mu => "μ",
            Flavor::Eps => "ε",
            Flavor::Lambda => "λ",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Mu => "mu",
            Flavor::Eps => "eps",
            Flavor::Lambda => "lambda",
        }
    }

    /// g-power of the term `param^ep g^gp` once rewritten in `target`.
    pub fn regrade(self, target: Flavor, ep: u32, gp: i32) -> i32 {
        gp + (self.g_weight() - target.g_weight()) * ep as i32
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent key of a graded monomial `param^ep · g^gp · x^i · y^j`.
///
/// Field order is the canonical term order: lexicographic on `(ep, gp, i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub ep: u32,
    pub gp: i32,
    pub i: u32,
    pub j: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        ep: 0,
        gp: 0,
        i: 0,
        j: 0,
    };

    pub fn xy(i: u32, j: u32) -> Self {
        Monomial { ep: 0, gp: 0, i, j }
    }

    pub fn new(ep: u32, gp: i32, i: u32, j: u32) -> Self {
        Monomial { ep, gp, i, j }
    }

    pub fn is_constant(&self) -> bool {
        self.i == 0 && self.j == 0
    }

    pub fn degree(&self) -> u32 {
        self.i + self.j
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial {
            ep: self.ep + o.ep,
            gp: self.gp + o.gp,
            i: self.i + o.i,
            j: self.j + o.j,
        }
    }
}

/// Exact polynomial in `(x, y)` whose coefficients carry integer powers of
/// `g` and of the perturbation parameter.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality. A polynomial without any `ep > 0` term is
/// flavor-neutral and combines freely with polynomials of any flavor.
#[derive(Clone, Debug)]
pub struct GradedPoly {
    flavor: Flavor,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(flavor: Flavor) -> Self {
        GradedPoly {
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms(Flavor::Mu, [(Monomial::ONE, c)])
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    /// `c · x^i y^j` with trivial grading.
    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        Self::from_terms(Flavor::Mu, [(Monomial::xy(i, j), c)])
    }

    pub fn term(flavor: Flavor, m: Monomial, c: Rational) -> Self {
        Self::from_terms(flavor, [(m, c)])
    }

    pub fn from_terms<I>(flavor: Flavor, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = GradedPoly::zero(flavor);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The harmonic action `½(x² + b y²)`.
    pub fn harmonic_action(b: &Rational) -> Self {
        Self::from_terms(
            Flavor::Mu,
            [
                (Monomial::xy(2, 0), super::rat(1, 2)),
                (Monomial::xy(0, 2), b / int(2)),
            ],
        )
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_graded(&self) -> bool {
        self.terms.keys().any(|m| m.ep > 0)
    }

    pub fn max_ep(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ep).max()
    }

    pub fn min_ep(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.ep).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.i % 2 == 0 && m.j % 2 == 0)
    }

    /// True when every term is free of `x` and `y`.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    fn joined_flavor(&self, other: &GradedPoly) -> Flavor {
        match (self.is_graded(), other.is_graded()) {
            (true, true) => {
                assert_eq!(
                    self.flavor, other.flavor,
                    "combining polynomials graded in different parameters"
                );
                self.flavor
            }
            (false, true) => other.flavor,
            _ => self.flavor,
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(self.flavor);
        }
        GradedPoly {
            flavor: self.flavor,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `param^dep · g^dgp`.
    pub fn shift(&self, dep: u32, dgp: i32) -> GradedPoly {
        GradedPoly {
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    (
                        Monomial {
                            ep: m.ep + dep,
                            gp: m.gp + dgp,
                            ..*m
                        },
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn retain<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> GradedPoly {
        GradedPoly {
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, v)| (*m, v.clone()))
                .collect(),
        }
    }

    /// Drops every term above `param^max_ep`.
    pub fn truncate(&self, max_ep: u32) -> GradedPoly {
        self.retain(|m| m.ep <= max_ep)
    }

    /// Part of exact perturbation order `ep`.
    pub fn order(&self, ep: u32) -> GradedPoly {
        self.retain(|m| m.ep == ep)
    }

    /// Part carrying exactly `g^gp`.
    pub fn g_level(&self, gp: i32) -> GradedPoly {
        self.retain(|m| m.gp == gp)
    }

    pub fn constant_part(&self) -> GradedPoly {
        self.retain(Monomial::is_constant)
    }

    pub fn without_constant(&self) -> GradedPoly {
        self.retain(|m| !m.is_constant())
    }

    /// Coefficient of `x^i y^j` as a scalar graded polynomial.
    pub fn coefficient_of(&self, i: u32, j: u32) -> GradedPoly {
        GradedPoly {
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.i == i && m.j == j)
                .map(|(m, v)| (Monomial { i: 0, j: 0, ..*m }, v.clone()))
                .collect(),
        }
    }

    /// Rewrites every term under `ε = g²μ`, `λ = gμ` into `target`.
    pub fn regrade(&self, target: Flavor) -> GradedPoly {
        if !self.is_graded() {
            return self.clone().with_flavor(target);
        }
        let from = self.flavor;
        GradedPoly {
            flavor: target,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    (
                        Monomial {
                            gp: from.regrade(target, m.ep, m.gp),
                            ..*m
                        },
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn mul_truncated(&self, other: &GradedPoly, max_ep: Option<u32>) -> GradedPoly {
        let mut out = GradedPoly::zero(self.joined_flavor(other));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(*mb);
                if max_ep.is_some_and(|cap| m.ep > cap) {
                    continue;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow_truncated(&self, n: u32, max_ep: Option<u32>) -> GradedPoly {
        let mut acc = GradedPoly::one().with_flavor(self.flavor);
        for _ in 0..n {
            acc = acc.mul_truncated(self, max_ep);
        }
        acc
    }

    pub fn d_dx(&self) -> GradedPoly {
        self.derive(true)
    }

    pub fn d_dy(&self) -> GradedPoly {
        self.derive(false)
    }

    fn derive(&self, wrt_x: bool) -> GradedPoly {
        let mut out = GradedPoly::zero(self.flavor);
        for (m, c) in &self.terms {
            let e = if wrt_x { m.i } else { m.j };
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            if wrt_x {
                dm.i -= 1;
            } else {
                dm.j -= 1;
            }
            out.add_term(dm, c * int(e as i64));
        }
        out
    }

    /// `∂²p/∂x² + ∂²p/∂y²`.
    pub fn laplacian(&self) -> GradedPoly {
        &self.d_dx().d_dx() + &self.d_dy().d_dy()
    }

    /// Substitutes polynomials for `x` and `y`, truncating at `max_ep`.
    pub fn substitute(&self, xs: &GradedPoly, ys: &GradedPoly, max_ep: Option<u32>) -> GradedPoly {
        let flavor = self.joined_flavor(xs);
        let mut xp: Vec<GradedPoly> = vec![GradedPoly::one().with_flavor(flavor)];
        let mut yp: Vec<GradedPoly> = vec![GradedPoly::one().with_flavor(flavor)];
        let mut out = GradedPoly::zero(flavor);
        for (m, c) in &self.terms {
            if max_ep.is_some_and(|cap| m.ep > cap) {
                continue;
            }
            while xp.len() <= m.i as usize {
                let next = xp.last().unwrap().mul_truncated(xs, max_ep);
                xp.push(next);
            }
            while yp.len() <= m.j as usize {
                let next = yp.last().unwrap().mul_truncated(ys, max_ep);
                yp.push(next);
            }
            let head = GradedPoly::term(self.flavor, Monomial { i: 0, j: 0, ..*m }, c.clone());
            let prod = head
                .mul_truncated(&xp[m.i as usize], max_ep)
                .mul_truncated(&yp[m.j as usize], max_ep);
            out = &out + &prod;
        }
        out
    }

    /// Numeric value at `g`, parameter value `param`, and point `(x, y)`.
    pub fn eval_f64(&self, g: f64, param: f64, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                to_f64(c)
                    * param.powi(m.ep as i32)
                    * g.powi(m.gp)
                    * x.powi(m.i as i32)
                    * y.powi(m.j as i32)
            })
            .sum()
    }

    /// Exact value with `g` and the parameter set to rationals (`g != 0`).
    pub fn eval_exact(
        &self,
        g: &Rational,
        param: &Rational,
        x: &Rational,
        y: &Rational,
    ) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                c * powi(param, m.ep as i32)
                    * powi(g, m.gp)
                    * powi(x, m.i as i32)
                    * powi(y, m.j as i32)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// `∂p/∂x·∂q/∂x + ∂p/∂y·∂q/∂y`.
pub fn grad_dot(p: &GradedPoly, q: &GradedPoly) -> GradedPoly {
    &(&p.d_dx() * &q.d_dx()) + &(&p.d_dy() * &q.d_dy())
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.flavor == other.flavor || !self.is_graded())
    }
}

impl Eq for GradedPoly {}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out.flavor = self.joined_flavor(rhs);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out.flavor = self.joined_flavor(rhs);
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $m(self, rhs: &GradedPoly) -> GradedPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}", c.abs())?;
            match m.ep {
                0 => {}
                1 => write!(f, " {}", self.flavor.symbol())?,
                e => write!(f, " {}^{e}", self.flavor.symbol())?,
            }
            match m.gp {
                0 => {}
                1 => f.write_str(" g")?,
                p => write!(f, " g^{p}")?,
            }
            for (v, e) in [("x", m.i), ("y", m.j)] {
                match e {
                    0 => {}
                    1 => write!(f, " {v}")?,
                    e => write!(f, " {v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
