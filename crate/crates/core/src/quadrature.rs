//! Composite Simpson quadrature with interval doubling.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper bound on the number of Simpson intervals.
pub const MAX_INTERVALS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    #[serde(with = "crate::complex_serde")]
    pub value: Complex64,
    /// Richardson estimate `|S_2n - S_n| / 15`.
    pub error_estimate: f64,
    pub intervals: usize,
}

/// Composite Simpson rule with `n` (even) intervals.
pub fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, n: usize) -> Complex64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Doubles the Simpson interval count from `start` until two successive
/// estimates differ by less than `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    start: usize,
    tol: f64,
) -> Result<Integral> {
    if !(b > a) {
        return Err(Error::EmptyRange(format!("integration interval [{a}, {b}]")));
    }
    let mut n = start.max(2);
    n += n % 2;
    let mut prev = simpson(&f, a, b, n);
    while n < MAX_INTERVALS {
        n *= 2;
        let cur = simpson(&f, a, b, n);
        let diff = (cur - prev).norm();
        if diff < tol {
            return Ok(Integral {
                value: cur,
                error_estimate: diff / 15.0,
                intervals: n,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence(format!(
        "Simpson quadrature on [{a}, {b}] did not reach {tol:e} with {MAX_INTERVALS} intervals"
    )))
}
