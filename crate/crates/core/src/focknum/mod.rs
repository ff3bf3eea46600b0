//! Truncated number-basis numerics.
//!
//! Operators are dense complex matrices on the first `cutoff` Fock levels.
//! Words of degree `d` are only exact away from the top `d` levels, so
//! checks compare the leading `cutoff / 2` block.
//!
//! Phase-space densities use the `dx dp` measure throughout: the Husimi
//! function carries the prefactor `1/(2πħ)` so that it integrates to one,
//! and the Wigner density of a state is its Weyl symbol divided by `2πħ`.

mod bohmian;
mod dump;
mod matrix;
pub mod quadrature;
mod states;
mod toeplitz;
mod wigner;

pub use bohmian::{bohmian_momentum, BohmianField, BohmianOptions};
pub use dump::write_csv;
pub use matrix::{build_ladder, op_to_matrix, FockConfig, FockMatrix, Ladder, PhaseGrid};
pub use states::{
    coherent_projector, coherent_state, fock_wavefunction, husimi, husimi_expectation, husimi_expectations,
    husimi_grid, DensityMatrix,
};
pub use toeplitz::{gaussian_bump, toeplitz_quantize, toeplitz_quantize_fn};
pub use wigner::{position_range_projector, wigner_density, wigner_function, wigner_symbol_grid};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FockError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid phase grid: {0}")]
    InvalidGrid(String),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("grid too coarse: quantized identity deviates by {deviation:e} on the leading block")]
    GridTooCoarse { deviation: f64 },
    #[error("grid does not cover the Husimi function: integral is {mass}")]
    InsufficientCoverage { mass: f64 },
    #[error("quadrature did not converge (two rules differ by {difference:e})")]
    NonConvergence { difference: f64 },
    #[error("Wigner value has imaginary residue {residue:e}")]
    NonReal { residue: f64 },
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("invalid wavefunction: {0}")]
    InvalidWavefunction(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}
