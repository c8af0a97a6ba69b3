use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, parse_rational, Flavor, GradedPoly, Monomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionKind {
    /// `Ψ = exp(-gS₀ - S₁ - g⁻¹S₂ - …)`
    Exponential,
    /// `Ψ = exp(-gS₀ - S₁) · (1 + g⁻¹χ₁ + g⁻²χ₂ + …)`
    Polynomial,
}

/// The set of graded terms a solution determines exactly.
///
/// A term `param^ep g^gp`, rewritten in `flavor`, is inside the window when
/// `ep <= max_order` and `gp >= min_g_power`. `None` means exact in `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub flavor: Flavor,
    pub max_order: u32,
    pub min_g_power: Option<i32>,
}

impl Window {
    pub fn contains(&self, term_flavor: Flavor, m: &Monomial) -> bool {
        let gp = term_flavor.regrade(self.flavor, m.ep, m.gp);
        m.ep <= self.max_order && self.min_g_power.is_none_or(|min| gp >= min)
    }

    pub fn clip(&self, p: &GradedPoly) -> GradedPoly {
        let f = p.flavor();
        p.retain(|m| self.contains(f, m))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.min_g_power {
            Some(g) => write!(f, "({}^{}, g^{})", self.flavor.symbol(), self.max_order, g),
            None => write!(
                f,
                "({}^{}, exact in g)",
                self.flavor.symbol(),
                self.max_order
            ),
        }
    }
}

/// Assembled output of one pipeline.
///
/// The per-level quantities are stored pre-multiplied by their power of `g`:
/// `exponent = gS₀ + S₁ + g⁻¹S₂ + …`, `chi = 1 + g⁻¹χ₁ + …`,
/// `energy = gE₀ + E₁ + g⁻¹E₂ + …`. Level accessors strip the power again.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution {
    pub method: String,
    pub kind: ExpansionKind,
    pub flavor: Flavor,
    pub b: Rational,
    pub exponent: GradedPoly,
    pub chi: Option<GradedPoly>,
    pub energy: GradedPoly,
    pub window: Window,
}

fn place(levels: &[GradedPoly], offset: i32, flavor: Flavor) -> GradedPoly {
    levels
        .iter()
        .enumerate()
        .fold(GradedPoly::zero(flavor), |acc, (k, p)| {
            &acc + &p.shift(0, offset - k as i32).with_flavor(flavor)
        })
}

impl SeriesSolution {
    /// Builds an exponential solution from `S₀, S₁, …` and `E₀, E₁, …`.
    pub fn exponential(
        method: &str,
        flavor: Flavor,
        b: &Rational,
        actions: &[GradedPoly],
        energies: &[GradedPoly],
        window: Window,
    ) -> Self {
        SeriesSolution {
            method: method.to_string(),
            kind: ExpansionKind::Exponential,
            flavor,
            b: b.clone(),
            exponent: place(actions, 1, flavor),
            chi: None,
            energy: place(energies, 1, flavor),
            window,
        }
    }

    /// Builds a polynomial solution from `S₀, S₁`, `χ₁, χ₂, …` and `E₀, E₁, …`.
    pub fn polynomial(
        method: &str,
        flavor: Flavor,
        b: &Rational,
        actions: &[GradedPoly],
        chis: &[GradedPoly],
        energies: &[GradedPoly],
        window: Window,
    ) -> Self {
        let chi = &GradedPoly::one().with_flavor(flavor) + &place(chis, -1, flavor);
        SeriesSolution {
            method: method.to_string(),
            kind: ExpansionKind::Polynomial,
            flavor,
            b: b.clone(),
            exponent: place(actions, 1, flavor),
            chi: Some(chi),
            energy: place(energies, 1, flavor),
            window,
        }
    }

    /// `S_k`: the part of the exponent carrying `g^{1-k}`.
    pub fn action(&self, k: i32) -> GradedPoly {
        self.exponent.g_level(1 - k).shift(0, k - 1)
    }

    /// `χ_k`: the part of `χ` carrying `g^{-k}` (`χ₀ = 1`).
    pub fn chi_level(&self, k: i32) -> GradedPoly {
        match &self.chi {
            Some(c) => c.g_level(-k).shift(0, k),
            None => GradedPoly::zero(self.flavor),
        }
    }

    /// `E_k`: the part of the energy carrying `g^{1-k}`.
    pub fn energy_level(&self, k: i32) -> GradedPoly {
        self.energy.g_level(1 - k).shift(0, k - 1)
    }

    fn level_range(p: &GradedPoly, offset: i32) -> Vec<i32> {
        let mut ks: Vec<i32> = p.terms().map(|(m, _)| offset - m.gp).collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    pub fn action_levels(&self) -> Vec<i32> {
        Self::level_range(&self.exponent, 1)
    }

    pub fn chi_levels(&self) -> Vec<i32> {
        self.chi
            .as_ref()
            .map(|c| Self::level_range(&c.without_constant(), 0))
            .unwrap_or_default()
    }

    pub fn energy_levels(&self) -> Vec<i32> {
        Self::level_range(&self.energy, 1)
    }

    /// Numeric energy at coupling `g` and parameter value `param` (in this
    /// solution's own flavor).
    pub fn energy_at(&self, g: f64, param: f64) -> f64 {
        self.energy.eval_f64(g, param, 0.0, 0.0)
    }

    /// Total exponent `W` with `Ψ ∝ e^{-W}`; polynomial solutions fold in `-ln χ`.
    pub fn log_form(&self) -> GradedPoly {
        match &self.chi {
            None => self.exponent.clone(),
            Some(chi) => {
                let x = chi - &GradedPoly::one().with_flavor(self.flavor);
                &self.exponent - &series_log1p(&x, &self.window)
            }
        }
    }
}

fn checked_power_loop<F: FnMut(u32) -> GradedPoly>(mut term: F) -> GradedPoly {
    let mut acc: Option<GradedPoly> = None;
    for n in 1..=4096 {
        let t = term(n);
        if t.is_zero() {
            return acc.unwrap_or_else(|| GradedPoly::zero(Flavor::Mu));
        }
        acc = Some(match acc {
            None => t,
            Some(a) => &a + &t,
        });
    }
    panic!("power series did not terminate inside its truncation window");
}

/// `exp(a) - 1` restricted to `window`; terminates when every term of `a`
/// lowers the `g` power or raises the parameter order.
pub fn series_expm1(a: &GradedPoly, window: &Window) -> GradedPoly {
    let mut power = GradedPoly::one().with_flavor(a.flavor());
    let mut fact = int(1);
    checked_power_loop(|n| {
        power = window.clip(&power.mul_truncated(a, Some(window.max_order)));
        fact = &fact * int(n as i64);
        power.scale(&(int(1) / &fact))
    })
    .with_flavor(a.flavor())
}

/// `ln(1 + x)` restricted to `window`.
pub fn series_log1p(x: &GradedPoly, window: &Window) -> GradedPoly {
    let mut power = GradedPoly::one().with_flavor(x.flavor());
    checked_power_loop(|n| {
        power = window.clip(&power.mul_truncated(x, Some(window.max_order)));
        let sign = if n % 2 == 1 { 1 } else { -1 };
        power.scale(&(int(sign) / int(n as i64)))
    })
    .with_flavor(x.flavor())
}

/// Rewrites every term and energy under `ε = g²μ`, `λ = gμ` into `target`.
///
/// The window keeps its own flavor, so it still describes which terms are
/// determined.
pub fn normalize_grading(sol: &SeriesSolution, target: Flavor) -> SeriesSolution {
    SeriesSolution {
        method: sol.method.clone(),
        kind: sol.kind,
        flavor: target,
        b: sol.b.clone(),
        exponent: sol.exponent.regrade(target),
        chi: sol.chi.as_ref().map(|c| c.regrade(target)),
        energy: sol.energy.regrade(target),
        window: sol.window,
    }
}

// --- serialization -------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub ep: u32,
    pub gp: i32,
    pub i: u32,
    pub j: u32,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub index: i32,
    pub terms: Vec<TermRecord>,
}

/// JSON shape of a [`SeriesSolution`]: every level listed separately with
/// exact `"p/q"` coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub method: String,
    pub kind: ExpansionKind,
    pub flavor: Flavor,
    pub b: String,
    pub window: Window,
    pub actions: Vec<LevelRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chis: Option<Vec<LevelRecord>>,
    pub energies: Vec<LevelRecord>,
}

fn records(p: &GradedPoly, offset: i32) -> Vec<LevelRecord> {
    SeriesSolution::level_range(p, offset)
        .into_iter()
        .map(|k| LevelRecord {
            index: k,
            terms: p
                .g_level(offset - k)
                .shift(0, k - offset)
                .terms()
                .map(|(m, c)| TermRecord {
                    ep: m.ep,
                    gp: m.gp,
                    i: m.i,
                    j: m.j,
                    coefficient: c.to_string(),
                })
                .collect(),
        })
        .collect()
}

fn from_records(levels: &[LevelRecord], offset: i32, flavor: Flavor) -> Result<GradedPoly> {
    let mut p = GradedPoly::zero(flavor);
    for level in levels {
        for t in &level.terms {
            let m = Monomial::new(t.ep, t.gp + offset - level.index, t.i, t.j);
            p.add_term(m, parse_rational(&t.coefficient)?);
        }
    }
    Ok(p.with_flavor(flavor))
}

impl From<&SeriesSolution> for SolutionRecord {
    fn from(s: &SeriesSolution) -> Self {
        SolutionRecord {
            method: s.method.clone(),
            kind: s.kind,
            flavor: s.flavor,
            b: s.b.to_string(),
            window: s.window,
            actions: records(&s.exponent, 1),
            chis: s.chi.as_ref().map(|c| records(&c.without_constant(), 0)),
            energies: records(&s.energy, 1),
        }
    }
}

impl TryFrom<SolutionRecord> for SeriesSolution {
    type Error = Error;
    fn try_from(r: SolutionRecord) -> Result<Self> {
        let chi = match &r.chis {
            Some(levels) => {
                Some(&GradedPoly::one().with_flavor(r.flavor) + &from_records(levels, 0, r.flavor)?)
            }
            None => None,
        };
        Ok(SeriesSolution {
            method: r.method,
            kind: r.kind,
            flavor: r.flavor,
            b: parse_rational(&r.b)?,
            exponent: from_records(&r.actions, 1, r.flavor)?,
            chi,
            energy: from_records(&r.energies, 1, r.flavor)?,
            window: r.window,
        })
    }
}

impl Serialize for SeriesSolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SolutionRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeriesSolution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SolutionRecord::deserialize(d)?;
        SeriesSolution::try_from(r).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SeriesSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# {} ({:?}, flavor {}, b = {}, window {})",
            self.method, self.kind, self.flavor, self.b, self.window
        )?;
        for k in self.action_levels() {
            writeln!(f, "S_{k} = {}", self.action(k))?;
        }
        for k in self.chi_levels() {
            writeln!(f, "chi_{k} = {}", self.chi_level(k))?;
        }
        for k in self.energy_levels() {
            writeln!(f, "E_{k} = {}", self.energy_level(k))?;
        }
        Ok(())
    }
}
