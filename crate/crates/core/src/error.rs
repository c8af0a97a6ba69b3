use thiserror::Error;

use crate::algebra::{ExpKey, Monomial};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An integrand along the trajectory still carried a constant piece.
    #[error("singular integral: term {0:?} has zero growth rate (missing energy subtraction)")]
    SingularIntegral(ExpKey),

    #[error("residual time dependence: term {0:?} does not cancel at the endpoint")]
    ResidualTimeDependence(ExpKey),

    #[error("trajectory has no endpoint constants; call invert_endpoint_constants first")]
    MissingEndpointConstants,

    #[error("resonant driving term {key:?} in the {axis}-equation")]
    ResonantDenominator { key: ExpKey, axis: char },

    /// C applied to a constant: the energy shift was not enforced first.
    #[error("operator C applied to a constant term")]
    SingularC,

    #[error("odd-parity monomial {0:?} is outside the even ansatz")]
    OddParity(Monomial),

    #[error("invalid Gamma index: {0}")]
    IndexError(String),

    #[error("coefficient x^{i} y^{j} exceeds max_degree {max_degree}")]
    TruncationOverflow { i: u32, j: u32, max_degree: u32 },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid orders: {0}")]
    InvalidOrders(String),

    #[error("finite-difference solver did not converge: residual {residual:e} after {iterations} iterations")]
    ConvergenceFailure { residual: f64, iterations: usize },

    #[error("{0}")]
    Config(String),
}
