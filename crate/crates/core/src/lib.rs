//! Spectra, wavefunctions, spectral singularities and rationally extended
//! SUSY partners of the PT-symmetric complexified Scarf II potential
//!
//! ```text
//! V(x) = -v1 sech^2 x + i v2 sech x tanh x
//! ```
//!
//! with an independent numerical layer (finite-difference eigensolver,
//! scattering integrator, quadrature) that cross-checks every closed form.
//! Units are hbar^2/2m = 1, so H = -d^2/dx^2 + V(x).

pub mod complex_serde;
pub mod error;
pub mod grid;
pub mod jacobi;
pub mod numeric;
pub mod params;
pub mod quadrature;
pub mod spectrum;
pub mod susy;
pub mod verify;
pub mod wavefunction;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use grid::{GridFunction, GridSpec};
pub use jacobi::JacobiSpec;
pub use numeric::{
    discrete_spectrum, residual, scattering, singularity_scan, ScanPoint, ScatteringResult,
};
pub use params::{CouplingParams, DerivedParams, Regime, Sign, WavefunctionParams};
pub use spectrum::{LevelRecord, SingularityReport};
pub use susy::{BranchKind, PartnerBranch, PartnerLevel, PartnerSpectrumEdit};

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ln cosh x`, stable for large |x|.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Gudermannian `arctan(sinh x)`, range (-pi/2, pi/2).
pub(crate) fn gd(x: f64) -> f64 {
    x.sinh().atan()
}

/// `sech(x)^z` on the principal branch; sech x > 0 on the real line.
pub(crate) fn sech_pow(x: f64, z: Complex64) -> Complex64 {
    (-z * ln_cosh(x)).exp()
}
