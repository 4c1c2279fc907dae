//! Coupling constants, derived parameters and regime classification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, I};

/// A ±1 label: quasi-parity ε, the sign ν of v2, or a SUSY branch selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be +1 or -1, got {other}")),
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Couplings of `V(x) = -v1 sech^2 x + i v2 sech x tanh x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingParams {
    pub v1: f64,
    pub v2: f64,
}

impl CouplingParams {
    pub fn new(v1: f64, v2: f64) -> Result<Self> {
        if !v1.is_finite() || !v2.is_finite() {
            return Err(Error::Domain("couplings must be finite".into()));
        }
        if v1 <= 0.0 {
            return Err(Error::Domain("V1 must be positive".into()));
        }
        if v2 == 0.0 {
            return Err(Error::Domain("V2 must be nonzero".into()));
        }
        Ok(Self { v1, v2 })
    }

    /// Evaluates the potential. `V(-x) = conj(V(x))` holds exactly.
    pub fn potential(&self, x: f64) -> Complex64 {
        let sech = 1.0 / x.cosh();
        let tanh = x.tanh();
        Complex64::new(-self.v1 * sech * sech, self.v2 * sech * tanh)
    }

    pub fn derive(&self) -> DerivedParams {
        DerivedParams::from_couplings(*self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// |v2| < v1 + 1/4: both eigenvalue series real.
    RealSpectrum,
    /// |v2| > v1 + 1/4: complex-conjugate pairs.
    ComplexSpectrum,
    /// |v2| = v1 + 1/4 within tolerance; not handled by the spectrum routines.
    Boundary,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::RealSpectrum => "RealSpectrum",
            Regime::ComplexSpectrum => "ComplexSpectrum",
            Regime::Boundary => "Boundary",
        }
    }
}

/// The p, q, s parameterization shared by every closed form.
///
/// `4p^2 = |v2| + v1 + 1/4`, `4s^2 = 1/4 + v1 - |v2|`, `4q^2 = |v2| - v1 - 1/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub coupling: CouplingParams,
    pub p: f64,
    pub q: Option<f64>,
    pub s: Option<f64>,
    pub nu: Sign,
    pub regime: Regime,
}

impl DerivedParams {
    pub fn from_couplings(c: CouplingParams) -> Self {
        let a2 = c.v2.abs();
        let p = 0.5 * (a2 + c.v1 + 0.25).sqrt();
        let gap = a2 - c.v1 - 0.25;
        let boundary_tol = 1e-12 * (1.0 + c.v1 + a2);
        let (regime, q, s) = if gap.abs() < boundary_tol {
            (Regime::Boundary, Some(0.0), Some(0.0))
        } else if gap > 0.0 {
            (Regime::ComplexSpectrum, Some(0.5 * gap.sqrt()), None)
        } else {
            (Regime::RealSpectrum, None, Some(0.5 * (-gap).sqrt()))
        };
        Self {
            coupling: c,
            p,
            q,
            s,
            nu: Sign::of(c.v2),
            regime,
        }
    }

    /// `s` in the real regime, `i q` in the complex regime.
    ///
    /// Every real-regime formula carries over to the complex regime under
    /// the substitution s -> iq.
    pub fn s_complex(&self) -> Complex64 {
        match self.regime {
            Regime::ComplexSpectrum => I * self.q.unwrap_or(0.0),
            _ => Complex64::new(self.s.unwrap_or(0.0), 0.0),
        }
    }
}

/// Exponents of the ansatz `sech^λ x · exp[μ arctan(sinh x)] · P_n^{(α,β)}(i sinh x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionParams {
    #[serde(with = "crate::complex_serde")]
    pub lambda: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub mu: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub alpha: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub beta: Complex64,
}

impl WavefunctionParams {
    /// Builds the parameter set from λ and μ via α = -λ + iμ - 1/2, β = -λ - iμ - 1/2.
    pub fn from_exponents(lambda: Complex64, mu: Complex64) -> Self {
        Self {
            lambda,
            mu,
            alpha: -lambda + I * mu - 0.5,
            beta: -lambda - I * mu - 0.5,
        }
    }

    /// Largest residual among the five matching conditions for degree `n`, energy `e`.
    pub fn matching_residual(&self, c: &CouplingParams, n: u32, e: Complex64) -> f64 {
        let (l, m, a, b) = (self.lambda, self.mu, self.alpha, self.beta);
        let n = n as f64;
        [
            (b - a) - (-2.0 * I * m),
            (a + b + 2.0) - (1.0 - 2.0 * l),
            l * (l + 1.0) - m * m - c.v1,
            (2.0 * l + 1.0) * m + I * c.v2,
            l * l + e + n * (n + a + b + 1.0),
        ]
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max)
    }
}
