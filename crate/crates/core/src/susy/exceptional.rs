//! Polynomials appearing in the (+,+) partner wavefunctions.

use num_complex::Complex64;

use crate::jacobi::JacobiSpec;
use crate::params::{DerivedParams, Sign};
use crate::{Error, Result};

const DEGENERACY_TOL: f64 = 1e-12;

/// X₁ exceptional Jacobi polynomial `P̂_m^{(2s-1, -2p+1)}(y)` of degree `m ≥ 1`:
///
/// ```text
/// P̂_m = -(y - b̂)/2 · P_{m-1} + (b̂ P_{m-1} - P_{m-2}) / (α̂ + β̂ + 2m - 2),
/// b̂ = (β̂ + α̂)/(β̂ - α̂)
/// ```
///
/// with classical `P_k = P_k^{(α̂,β̂)}` and `P_{-1} = 0`.
pub fn exceptional_jacobi(degree: u32, s: Complex64, p: f64, y: Complex64) -> Result<Complex64> {
    if degree == 0 {
        return Err(Error::Domain("X1 exceptional polynomials start at degree 1".into()));
    }
    let alpha = 2.0 * s - 1.0;
    let beta = Complex64::new(1.0 - 2.0 * p, 0.0);
    let spread = beta - alpha;
    let denom = alpha + beta + 2.0 * degree as f64 - 2.0;
    if spread.norm() < DEGENERACY_TOL || denom.norm() < DEGENERACY_TOL {
        return Err(Error::Domain(format!(
            "X1 construction degenerate at degree {degree} (β-α = {spread}, α+β+2m-2 = {denom})"
        )));
    }
    let b_hat = (beta + alpha) / spread;
    let p1 = JacobiSpec::new(degree - 1, alpha, beta).eval(y);
    let p2 = if degree >= 2 {
        JacobiSpec::new(degree - 2, alpha, beta).eval(y)
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(-0.5 * (y - b_hat) * p1 + (b_hat * p1 - p2) / denom)
}

/// The polynomial factor `𝒫_{nε}(y)` of the (+,+) partner wavefunctions.
///
/// * ε = -: `P̂_{n+1}^{(2s-1, -2p+1)}(y)`.
/// * ε = +, n = 0 and n = 2: the explicit forms
///   `1` and `(p+s-1)(2p+2s-3) y^2 - 2(p-s)(2p+2s-3) y + 2(p-s)^2 - (p+s-1)`.
/// * ε = +, n ≥ 3: the Wronskian `(Q P_n' - Q' P_n)/(p+s-1)` of the seed
///   `Q(y) = p - s - (p+s-1) y` with `P_n = P_n^{(-2s,-2p)}`, which is what the
///   intertwining operator produces once the common prefactors are stripped.
///
/// n = 1, ε = + is the deleted level and has no polynomial.
pub fn partner_polynomial(d: &DerivedParams, n: u32, epsilon: Sign, y: Complex64) -> Result<Complex64> {
    let p = d.p;
    let s = d.s_complex();
    match (epsilon, n) {
        (Sign::Minus, _) => exceptional_jacobi(n + 1, s, p, y),
        (Sign::Plus, 0) => Ok(Complex64::new(1.0, 0.0)),
        (Sign::Plus, 1) => Err(Error::DegenerateEnergy),
        (Sign::Plus, 2) => {
            let (sum, diff) = (p + s, p - s);
            Ok((sum - 1.0) * (2.0 * sum - 3.0) * y * y - 2.0 * diff * (2.0 * sum - 3.0) * y
                + 2.0 * diff * diff
                - (sum - 1.0))
        }
        (Sign::Plus, _) => {
            let slope = p + s - 1.0;
            if slope.norm() < DEGENERACY_TOL {
                return Err(Error::SingularBranch);
            }
            let q = (p - s) - slope * y;
            let jac = JacobiSpec::new(n, -2.0 * s, Complex64::new(-2.0 * p, 0.0));
            Ok((q * jac.derivative(y) + slope * jac.eval(y)) / slope)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::CouplingParams;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Intertwined ε = - polynomial `(1-y)(QP' - Q'P) - 2sQP` with `P = P_n^{(2s,-2p)}`.
    fn intertwined_minus(p: f64, s: Complex64, n: u32, y: Complex64) -> Complex64 {
        let slope = p + s - 1.0;
        let q = (p - s) - slope * y;
        let jac = JacobiSpec::new(n, 2.0 * s, c(-2.0 * p, 0.0));
        (1.0 - y) * (q * jac.derivative(y) + slope * jac.eval(y)) - 2.0 * s * q * jac.eval(y)
    }

    #[test]
    fn exceptional_matches_intertwined_form_up_to_constant() {
        for (v1, v2) in [(12.0, 6.0), (1.0, 5.0)] {
            let d = CouplingParams::new(v1, v2).unwrap().derive();
            let s = d.s_complex();
            for n in 0..5 {
                let ys = [c(0.3, 0.2), c(-1.1, 0.5), c(0.7, -2.0), c(0.0, 3.0)];
                let ratios: Vec<Complex64> = ys
                    .iter()
                    .map(|&y| intertwined_minus(d.p, s, n, y) / exceptional_jacobi(n + 1, s, d.p, y).unwrap())
                    .collect();
                for r in &ratios[1..] {
                    assert!((r / ratios[0] - 1.0).norm() < 1e-10, "n={n}: {ratios:?}");
                }
            }
        }
    }

    #[test]
    fn explicit_p2_matches_wronskian_form() {
        // The listed degree-2 polynomial and the general Wronskian form differ
        // only by the constant -(p+s-2) / (4(p+s-1)).
        let d = CouplingParams::new(12.0, 6.0).unwrap().derive();
        let s = d.s_complex();
        let slope = d.p + s - 1.0;
        let jac = JacobiSpec::new(2, -2.0 * s, c(-2.0 * d.p, 0.0));
        let scale = -(d.p + s - 2.0) / (4.0 * slope);
        for y in [c(0.3, 0.7), c(-1.0, 2.0), c(2.5, 0.0)] {
            let q = (d.p - s) - slope * y;
            let wr = (q * jac.derivative(y) + slope * jac.eval(y)) / slope;
            let listed = partner_polynomial(&d, 2, Sign::Plus, y).unwrap();
            assert!((wr - scale * listed).norm() < 1e-12);
        }
    }

    #[test]
    fn plus_family_degrees() {
        let d = CouplingParams::new(40.0, 6.0).unwrap().derive();
        assert_eq!(partner_polynomial(&d, 0, Sign::Plus, c(0.4, 1.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(partner_polynomial(&d, 1, Sign::Plus, c(0.4, 1.0)), Err(Error::DegenerateEnergy));
        // Degree n: ratio of values at large |y| scales like |y|^n.
        for n in [3u32, 4] {
            let big = partner_polynomial(&d, n, Sign::Plus, c(0.0, 1e4)).unwrap();
            let bigger = partner_polynomial(&d, n, Sign::Plus, c(0.0, 2e4)).unwrap();
            assert!(((bigger / big).norm() - 2f64.powi(n as i32)).abs() < 1e-3);
        }
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(exceptional_jacobi(0, c(1.0, 0.0), 2.0, c(0.0, 0.0)).is_err());
    }
}
