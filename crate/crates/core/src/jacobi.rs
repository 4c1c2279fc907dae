//! Jacobi polynomials `P_n^{(α,β)}(y)` for complex parameters and argument.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Recurrence divisors below this modulus switch evaluation to the explicit sum.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiSpec {
    pub degree: u32,
    #[serde(with = "crate::complex_serde")]
    pub alpha: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub beta: Complex64,
}

impl JacobiSpec {
    pub fn new(degree: u32, alpha: Complex64, beta: Complex64) -> Self {
        Self {
            degree,
            alpha,
            beta,
        }
    }

    pub fn eval(&self, y: Complex64) -> Complex64 {
        jacobi_eval(self, y)
    }

    /// `d/dy P_n^{(α,β)} = (n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}`.
    pub fn derivative(&self, y: Complex64) -> Complex64 {
        if self.degree == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.degree as f64;
        let lower = JacobiSpec::new(self.degree - 1, self.alpha + 1.0, self.beta + 1.0);
        (n + self.alpha + self.beta + 1.0) * 0.5 * lower.eval(y)
    }
}

/// Evaluates `P_n^{(α,β)}(y)` by the three-term recurrence.
///
/// Falls back to [`jacobi_explicit`] when a recurrence divisor
/// `(k+α+β)(2k+α+β-2)` vanishes, which happens for the negative
/// integer-like parameter combinations the wavefunctions produce.
pub fn jacobi_eval(spec: &JacobiSpec, y: Complex64) -> Complex64 {
    let (a, b) = (spec.alpha, spec.beta);
    let one = Complex64::new(1.0, 0.0);
    if spec.degree == 0 {
        return one;
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (y - 1.0) * 0.5;
    if spec.degree == 1 {
        return p1;
    }

    let ab = a + b;
    for k in 2..=spec.degree {
        let k = k as f64;
        if ((k + ab) * (2.0 * k + ab - 2.0)).norm() < DEGENERACY_TOL {
            return jacobi_explicit(spec, y);
        }
    }

    let (mut prev, mut cur) = (one, p1);
    for k in 2..=spec.degree {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let lhs = 2.0 * k * (k + ab) * (c - 2.0);
        let rhs = (c - 1.0) * (c * (c - 2.0) * y + a * a - b * b) * cur
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * prev;
        prev = cur;
        cur = rhs / lhs;
    }
    cur
}

/// Generalized binomial coefficient `C(z, m)` for complex `z`.
fn binom(z: Complex64, m: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..m {
        acc *= (z - j as f64) / (j as f64 + 1.0);
    }
    acc
}

/// Explicit finite sum
/// `P_n = Σ_k C(n+α, n-k) C(n+β, k) ((y-1)/2)^k ((y+1)/2)^{n-k}`,
/// polynomial in α and β and hence defined for every parameter value.
pub fn jacobi_explicit(spec: &JacobiSpec, y: Complex64) -> Complex64 {
    let n = spec.degree;
    let nf = n as f64;
    let lo = (y - 1.0) * 0.5;
    let hi = (y + 1.0) * 0.5;
    (0..=n)
        .map(|k| {
            binom(spec.alpha + nf, n - k) * binom(spec.beta + nf, k) * lo.powu(k) * hi.powu(n - k)
        })
        .sum()
}
