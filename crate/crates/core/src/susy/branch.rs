use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::{CouplingParams, DerivedParams, Regime, Sign};
use crate::{gd, sech_pow, Error, Result, I};

/// Denominators below this modulus are treated as poles.
const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchKind {
    /// Real (a, b): V_ext is PT-symmetric.
    PTSymmetric,
    /// Complex (a, b): V_ext breaks PT symmetry.
    ComplexNonPT,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartnerBranch {
    pub eps_plus: Sign,
    pub eps_minus: Sign,
    #[serde(with = "crate::complex_serde")]
    pub a: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub b: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub c: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub factorization_energy: Complex64,
    pub kind: BranchKind,
    pub derived: DerivedParams,
}

impl PartnerBranch {
    pub fn coupling(&self) -> CouplingParams {
        self.derived.coupling
    }

    /// `V1' = v1 - 2a`, the sech^2 coefficient of the partner.
    pub fn primed_v1(&self) -> Complex64 {
        self.derived.coupling.v1 - 2.0 * self.a
    }

    /// `V2' = v2 - 2b`.
    pub fn primed_v2(&self) -> Complex64 {
        self.derived.coupling.v2 - 2.0 * self.b
    }

    /// Largest residual of `a(a+1) + b^2 = v1`, `(2a+1) b = v2` and
    /// `(a±b)(a±b+1) = v1 ± v2`.
    pub fn coupled_residual(&self) -> f64 {
        let CouplingParams { v1, v2 } = self.coupling();
        let (a, b) = (self.a, self.b);
        let (sum, diff) = (a + b, a - b);
        [
            a * (a + 1.0) + b * b - v1,
            (2.0 * a + 1.0) * b - v2,
            sum * (sum + 1.0) - (v1 + v2),
            diff * (diff + 1.0) - (v1 - v2),
        ]
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.eps_plus, self.eps_minus)
    }
}

/// Solves the coupled equations for branch (ε₊, ε₋) in closed form:
/// `a = -1/2 + ε₊p + ε₋s`, `b = ε₊p - ε₋s`, with s -> iq in the complex regime.
pub fn solve_branch(d: &DerivedParams, eps_plus: Sign, eps_minus: Sign) -> Result<PartnerBranch> {
    if d.coupling.v2 <= 0.0 {
        return Err(Error::Unsupported(
            "partner construction requires v2 > 0".into(),
        ));
    }
    let kind = match d.regime {
        Regime::RealSpectrum => BranchKind::PTSymmetric,
        Regime::ComplexSpectrum => BranchKind::ComplexNonPT,
        Regime::Boundary => {
            return Err(Error::Regime {
                expected: "RealSpectrum or ComplexSpectrum",
                found: Regime::Boundary.name(),
            })
        }
    };
    let s = d.s_complex();
    let (ep, em) = (eps_plus.value(), eps_minus.value());
    let a = -0.5 + ep * d.p + em * s;
    let b = ep * d.p - em * s;
    let two_a_minus_1 = 2.0 * a - 1.0;
    if two_a_minus_1.norm() < POLE_TOL {
        return Err(Error::SingularBranch);
    }
    let am1 = a - 1.0;
    Ok(PartnerBranch {
        eps_plus,
        eps_minus,
        a,
        b,
        c: -2.0 * b / two_a_minus_1,
        factorization_energy: -am1 * am1,
        kind,
        derived: *d,
    })
}

/// `W(x) = a tanh x + i b sech x - i cosh x / (i sinh x + c)`.
pub fn superpotential(branch: &PartnerBranch, x: f64) -> Result<Complex64> {
    let den = I * x.sinh() + branch.c;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole { x });
    }
    Ok(branch.a * x.tanh() + I * branch.b / x.cosh() - I * x.cosh() / den)
}

/// Analytic `W'(x)`.
pub fn superpotential_derivative(branch: &PartnerBranch, x: f64) -> Result<Complex64> {
    let den = I * x.sinh() + branch.c;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole { x });
    }
    let (sech, tanh) = (1.0 / x.cosh(), x.tanh());
    let rational = (x.sinh() * den - I * x.cosh() * x.cosh()) / (den * den);
    Ok(branch.a * sech * sech - I * branch.b * sech * tanh - I * rational)
}

/// The rationally extended partner
/// `-(v1-2a) sech^2 x + i(v2-2b) sech x tanh x - 4b/D + 2(4b^2 - (2a-1)^2)/D^2`
/// with `D = 2b - i(2a-1) sinh x`.
pub fn extended_potential(branch: &PartnerBranch, x: f64) -> Result<Complex64> {
    let (a, b) = (branch.a, branch.b);
    let den = 2.0 * b - I * (2.0 * a - 1.0) * x.sinh();
    if den.norm() < POLE_TOL {
        return Err(Error::Pole { x });
    }
    let (sech, tanh) = (1.0 / x.cosh(), x.tanh());
    let tam1 = 2.0 * a - 1.0;
    Ok(-branch.primed_v1() * sech * sech + I * branch.primed_v2() * sech * tanh - 4.0 * b / den
        + 2.0 * (4.0 * b * b - tam1 * tam1) / (den * den))
}

/// `φ(x) = sech^a x · exp[-i b arctan(sinh x)] · [b - i(a - 1/2) sinh x]`,
/// the zero mode of `d/dx + W`, solving `(-d²/dx² + V - E) φ = 0`.
pub fn factorizing_function(branch: &PartnerBranch, x: f64) -> Complex64 {
    let bracket = branch.b - I * (branch.a - 0.5) * x.sinh();
    sech_pow(x, branch.a) * (-I * branch.b * gd(x)).exp() * bracket
}
