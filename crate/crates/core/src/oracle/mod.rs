//! Independent checks on the series: textbook Rayleigh–Schrödinger
//! perturbation theory in the oscillator basis, a finite-difference
//! eigensolver, and the cross-method comparison that ties them together.

pub mod compare;
pub mod fd;
pub mod rs;

pub use compare::{compare_methods, ComparisonReport, NumericCheck, Quantity, TermMismatch};
pub use fd::{
    extrapolated_ground_state, fd_ground_state, fd_ground_state_with, harmonic_energy, richardson,
    Extrapolation, GridConfig, SolverOptions, SpectralEstimate,
};
pub use rs::{oscillator_matrix_element, rs_corrections, OscBasisIndex, RsCorrections, Surd};
