//! Numerical oracles: grid eigensolver, Schrödinger residuals and scattering.

pub mod eigen;
pub mod residual;
pub mod scattering;

pub use eigen::{discrete_levels, discrete_spectrum, DiscreteLevel, LOCALIZATION_THRESHOLD};
pub use residual::{derivative_fourth, residual, residual_second_order};
pub use scattering::{
    jost_solutions, scattering, scattering_sampled, singularity_scan, transmission_peak,
    transmission_scan, JostPair, SampledPotential, ScanPoint, ScatteringResult,
};
