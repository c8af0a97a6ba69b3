use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_positive, Rational};
use crate::error::{Error, Result};

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Hierarchy,
    ExpEps,
    ExpLambda,
    PolyEps,
    PolyLambda,
    Green,
    Rs,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Hierarchy,
        Method::ExpEps,
        Method::ExpLambda,
        Method::PolyEps,
        Method::PolyLambda,
        Method::Green,
        Method::Rs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hierarchy => "hierarchy",
            Method::ExpEps => "exp-eps",
            Method::ExpLambda => "exp-lambda",
            Method::PolyEps => "poly-eps",
            Method::PolyLambda => "poly-lambda",
            Method::Green => "green",
            Method::Rs => "rs",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Inputs of the finite-difference check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericParams {
    pub g: f64,
    /// Coupling values; several give a convergence-order fit.
    pub mu: Vec<f64>,
    /// Interior points per axis on the coarsest grid (odd).
    pub grid: usize,
    /// Grid levels combined by Richardson extrapolation.
    pub levels: usize,
    /// Largest accepted relative deviation.
    pub tolerance: f64,
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams {
            g: 10.0,
            mu: vec![0.05],
            grid: 161,
            levels: 3,
            tolerance: 1e-4,
        }
    }
}

/// One pipeline invocation; the `--config` file has this shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub method: Method,
    /// Anisotropy as `"p/q"`.
    pub b: String,
    /// Perturbation order in `μ` (in `ε` for `green` and `rs`).
    pub order: u32,
    /// Number of inverse powers of `g` kept beyond the leading level.
    pub depth: u32,
    pub numeric: Option<NumericParams>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            method: Method::Hierarchy,
            b: "1".into(),
            order: 2,
            depth: 1,
            numeric: None,
            format: Format::Json,
        }
    }
}

pub const MAX_ORDER: u32 = 6;
pub const MAX_DEPTH: u32 = 6;

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad config: {e}")))
    }

    /// Parsed `b` after range checks on every field.
    pub fn validate(&self) -> Result<Rational> {
        let b = parse_positive(&self.b)?;
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(Error::InvalidOrders(format!(
                "order must be in 1..={MAX_ORDER}, got {}",
                self.order
            )));
        }
        if self.method == Method::Rs && self.order > 2 {
            return Err(Error::InvalidOrders("rs supports order 1 or 2".into()));
        }
        if self.depth > MAX_DEPTH {
            return Err(Error::InvalidOrders(format!(
                "depth must be at most {MAX_DEPTH}, got {}",
                self.depth
            )));
        }
        if let Some(n) = &self.numeric {
            if !(n.g > 0.0 && n.g.is_finite()) {
                return Err(Error::Config(format!("g must be positive, got {}", n.g)));
            }
            if n.mu.is_empty() || n.mu.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
                return Err(Error::Config(
                    "mu values must be non-negative and finite".into(),
                ));
            }
            if n.levels == 0 || n.grid < 3 || n.grid % 2 == 0 {
                return Err(Error::Config("grid must be odd and ≥ 3, levels ≥ 1".into()));
            }
            if n.tolerance.is_nan() || n.tolerance <= 0.0 {
                return Err(Error::Config("tolerance must be positive".into()));
            }
        }
        Ok(b)
    }
}
