//! Finite-difference Schrödinger residuals of closed-form wavefunctions.

use num_complex::Complex64;

use crate::grid::GridSpec;

/// Fourth-order central second difference at interior node `i` of `f`.
fn d2_fourth(f: &[Complex64], i: usize, inv_h2: f64) -> Complex64 {
    (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * (inv_h2 / 12.0)
}

fn d2_second(f: &[Complex64], i: usize, inv_h2: f64) -> Complex64 {
    (f[i - 1] - 2.0 * f[i] + f[i + 1]) * inv_h2
}

fn residual_with<P, F>(
    potential: P,
    psi: F,
    energy: Complex64,
    grid: &GridSpec,
    margin: usize,
    d2: fn(&[Complex64], usize, f64) -> Complex64,
) -> f64
where
    P: Fn(f64) -> Complex64,
    F: Fn(f64) -> Complex64,
{
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let values: Vec<Complex64> = grid.xs().map(&psi).collect();
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let n = values.len();
    (margin..n - margin)
        .map(|i| {
            let x = grid.x(i);
            (-d2(&values, i, inv_h2) + (potential(x) - energy) * values[i]).norm()
        })
        .fold(0.0, f64::max)
        / scale
}

/// `max |(−D₂ + V − E)ψ| / max |ψ|` over interior nodes, fourth-order `D₂`.
pub fn residual<P, F>(potential: P, psi: F, energy: Complex64, grid: &GridSpec) -> f64
where
    P: Fn(f64) -> Complex64,
    F: Fn(f64) -> Complex64,
{
    residual_with(potential, psi, energy, grid, 2, d2_fourth)
}

/// Same as [`residual`] with the three-point second difference.
pub fn residual_second_order<P, F>(potential: P, psi: F, energy: Complex64, grid: &GridSpec) -> f64
where
    P: Fn(f64) -> Complex64,
    F: Fn(f64) -> Complex64,
{
    residual_with(potential, psi, energy, grid, 1, d2_second)
}

/// Fourth-order central first derivative of `f` at `x` with step `h`.
pub fn derivative_fourth<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}
