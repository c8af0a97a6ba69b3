//! Single-trajectory quadrature for the ground state of
//! `H = -½∇² + g²[½(x² + b²y²) + μU(x, y)]`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod greens;
pub mod hierarchy;
pub mod oracle;
pub mod perturbation;
pub mod trajectory;

pub use error::{Error, Result};
