//! Closed-form wavefunctions and PT pseudo-norms.
//!
//! All closed forms carry unit normalization constant.

use num_complex::Complex64;

use crate::jacobi::JacobiSpec;
use crate::params::{DerivedParams, Sign};
use crate::quadrature::{integrate, Integral};
use crate::spectrum::{singular_level, LevelRecord, SingularityReport};
use crate::{gd, sech_pow, Result, I};

/// `ψ(x) = sech^λ x · exp[μ arctan(sinh x)] · P_n^{(α,β)}(i sinh x)`.
pub fn bound_state(level: &LevelRecord, x: f64) -> Complex64 {
    let wf = &level.wf;
    let y = I * x.sinh();
    let poly = JacobiSpec::new(level.n, wf.alpha, wf.beta).eval(y);
    sech_pow(x, wf.lambda) * (wf.mu * gd(x)).exp() * poly
}

/// Analytic `dψ/dx` of [`bound_state`].
pub fn bound_state_derivative(level: &LevelRecord, x: f64) -> Complex64 {
    let wf = &level.wf;
    let y = I * x.sinh();
    let jac = JacobiSpec::new(level.n, wf.alpha, wf.beta);
    let envelope = sech_pow(x, wf.lambda) * (wf.mu * gd(x)).exp();
    let sech = 1.0 / x.cosh();
    let log_deriv = -wf.lambda * x.tanh() + wf.mu * sech;
    envelope * (log_deriv * jac.eval(y) + jac.derivative(y) * I * x.cosh())
}

/// The ε branch of the wavefunction at the spectral singularity, a non-decaying
/// solution at the real energy `E* = q^2`.
///
/// The two branches are PT-conjugate: `conj(ψ_+(-x)) = ψ_-(x)`.
pub fn singularity_wavefunction(
    report: &SingularityReport,
    d: &DerivedParams,
    epsilon: Sign,
    x: f64,
) -> Result<Complex64> {
    let level = singular_level(report, d, epsilon)?;
    Ok(bound_state(&level, x))
}

/// `∫ [ψ(-x)]* ψ(x) dx` over `domain` by Simpson doubling from `points`
/// intervals until successive estimates agree to `tol`.
pub fn pseudo_norm<F: Fn(f64) -> Complex64>(
    psi: F,
    domain: (f64, f64),
    points: usize,
    tol: f64,
) -> Result<Integral> {
    integrate(|x| psi(-x).conj() * psi(x), domain.0, domain.1, points, tol)
}
