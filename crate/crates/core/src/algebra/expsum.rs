use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;

use super::poly::{Flavor, GradedPoly, Monomial};
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Key of `param^ep · g^gp · c_x^p · c_y^q · e^{(k + l·b) t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpKey {
    pub ep: u32,
    pub gp: i32,
    pub p: u32,
    pub q: u32,
    pub k: u32,
    pub l: u32,
}

impl ExpKey {
    pub fn new(ep: u32, gp: i32, p: u32, q: u32, k: u32, l: u32) -> Self {
        ExpKey { ep, gp, p, q, k, l }
    }

    /// Exponent `k` and `l` mirror the `c_x`, `c_y` powers.
    pub fn is_homogeneous(&self) -> bool {
        self.k == self.p && self.l == self.q
    }

    pub fn is_constant(&self) -> bool {
        self.k == 0 && self.l == 0
    }

    fn mul(self, o: ExpKey) -> ExpKey {
        ExpKey {
            ep: self.ep + o.ep,
            gp: self.gp + o.gp,
            p: self.p + o.p,
            q: self.q + o.q,
            k: self.k + o.k,
            l: self.l + o.l,
        }
    }
}

/// Finite sum of exponentials in trajectory time `t`, with coefficients
/// polynomial in the trajectory constants `c_x`, `c_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSum {
    b: Rational,
    flavor: Flavor,
    terms: BTreeMap<ExpKey, Rational>,
}

impl ExpSum {
    pub fn zero(b: &Rational, flavor: Flavor) -> Self {
        ExpSum {
            b: b.clone(),
            flavor,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(b: &Rational, flavor: Flavor, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExpKey, Rational)>,
    {
        let mut e = ExpSum::zero(b, flavor);
        for (key, c) in terms {
            e.add_term(key, c);
        }
        e
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn add_term(&mut self, key: ExpKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &ExpKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
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

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().all(ExpKey::is_homogeneous)
    }

    /// Growth rate `k + l·b` of a term.
    pub fn rate(&self, key: &ExpKey) -> Rational {
        int(key.k as i64) + &self.b * int(key.l as i64)
    }

    pub fn retain<F: FnMut(&ExpKey) -> bool>(&self, mut keep: F) -> ExpSum {
        ExpSum {
            b: self.b.clone(),
            flavor: self.flavor,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, max_ep: u32) -> ExpSum {
        self.retain(|k| k.ep <= max_ep)
    }

    pub fn order(&self, ep: u32) -> ExpSum {
        self.retain(|k| k.ep == ep)
    }

    pub fn scale(&self, c: &Rational) -> ExpSum {
        let mut out = ExpSum::zero(&self.b, self.flavor);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn mul_truncated(&self, other: &ExpSum, max_ep: Option<u32>) -> ExpSum {
        assert_eq!(self.b, other.b, "exponential sums built for different b");
        let mut out = ExpSum::zero(&self.b, self.flavor);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ka.mul(*kb);
                if max_ep.is_some_and(|cap| key.ep > cap) {
                    continue;
                }
                out.add_term(key, ca * cb);
            }
        }
        out
    }

    /// `d/dt`: every term picks up its rate `k + l·b`.
    pub fn derivative(&self) -> ExpSum {
        let mut out = ExpSum::zero(&self.b, self.flavor);
        for (k, v) in &self.terms {
            out.add_term(*k, v * self.rate(k));
        }
        out
    }

    /// `∫_{-∞}^{T} e dt`, keeping `T` symbolic: each term is divided by its rate.
    pub fn integrate_to_t(&self) -> Result<ExpSum> {
        let mut out = ExpSum::zero(&self.b, self.flavor);
        for (k, v) in &self.terms {
            let rate = self.rate(k);
            if rate.is_zero() {
                return Err(Error::SingularIntegral(*k));
            }
            out.add_term(*k, v / rate);
        }
        Ok(out)
    }

    /// Splits off the `k = l = 0` part.
    ///
    /// Every other term vanishes as `t → -∞`, where the trajectory sits at the
    /// origin, so the constant part is the value of the integrand at `q = 0`.
    pub fn split_constant(&self) -> (GradedPoly, ExpSum) {
        let mut constant = GradedPoly::zero(self.flavor);
        let mut rest = ExpSum::zero(&self.b, self.flavor);
        for (k, v) in &self.terms {
            if k.is_constant() {
                constant.add_term(Monomial::new(k.ep, k.gp, k.p, k.q), v.clone());
            } else {
                rest.add_term(*k, v.clone());
            }
        }
        (constant, rest)
    }
}

impl<'a> Add<&'a ExpSum> for &'a ExpSum {
    type Output = ExpSum;
    fn add(self, rhs: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ExpSum> for &'a ExpSum {
    type Output = ExpSum;
    fn sub(self, rhs: &ExpSum) -> ExpSum {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                format!(
                    "({v}) {}^{} g^{} cx^{} cy^{} e^{{({}+{}b)t}}",
                    self.flavor.symbol(),
                    k.ep,
                    k.gp,
                    k.p,
                    k.q,
                    k.k,
                    k.l
                )
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
