//! Closed-form bound-state spectrum in both regimes and spectral-singularity
//! classification.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::{CouplingParams, DerivedParams, Regime, Sign, WavefunctionParams};
use crate::{Error, Result, I};

/// Default tolerance on `|p - 1/2 - round(p - 1/2)|`.
pub const SINGULARITY_TOL: f64 = 1e-9;

/// Slack used in the strict bound-state count `n < Re λ`.
const COUNT_SLACK: f64 = 1e-12;

/// One eigenvalue, its quasi-parity ε and index n, and the wavefunction exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: u32,
    pub epsilon: Sign,
    #[serde(with = "crate::complex_serde")]
    pub energy: Complex64,
    pub wf: WavefunctionParams,
}

impl LevelRecord {
    /// Asymptotic decay rate `Re λ - n`; positive for a bound state.
    pub fn decay_rate(&self) -> f64 {
        self.wf.lambda.re - self.n as f64
    }
}

/// Level `n` of series ε in the real regime.
pub fn real_level(d: &DerivedParams, n: u32, epsilon: Sign) -> LevelRecord {
    let (p, s) = (d.p, d.s.unwrap_or(0.0));
    let (e, nu) = (epsilon.value(), d.nu.value());
    let lambda = -0.5 + p + e * s;
    let mu = -I * nu * (p - e * s);
    let alpha = -(1.0 + nu) * e * s - (1.0 - nu) * p;
    let beta = -(1.0 + nu) * p - (1.0 - nu) * e * s;
    let k = lambda - n as f64;
    LevelRecord {
        n,
        epsilon,
        energy: Complex64::new(-k * k, 0.0),
        wf: WavefunctionParams {
            lambda: lambda.into(),
            mu,
            alpha: alpha.into(),
            beta: beta.into(),
        },
    }
}

/// Level `n` of series ε in the complex regime; `p` may be overridden to sit
/// exactly on a singularity locus.
fn complex_level_with(d: &DerivedParams, p: f64, n: u32, epsilon: Sign) -> LevelRecord {
    let q = d.q.unwrap_or(0.0);
    let (e, nu) = (epsilon.value(), d.nu.value());
    let ieq = I * e * q;
    let lambda = -0.5 + p + ieq;
    let mu = -I * nu * (p - ieq);
    let alpha = -(1.0 + nu) * ieq - (1.0 - nu) * p;
    let beta = -(1.0 + nu) * p - (1.0 - nu) * ieq;
    let k = lambda - n as f64;
    LevelRecord {
        n,
        epsilon,
        energy: -k * k,
        wf: WavefunctionParams {
            lambda,
            mu,
            alpha,
            beta,
        },
    }
}

pub fn complex_level(d: &DerivedParams, n: u32, epsilon: Sign) -> LevelRecord {
    complex_level_with(d, d.p, n, epsilon)
}

fn require(d: &DerivedParams, regime: Regime) -> Result<()> {
    if d.regime != regime {
        return Err(Error::Regime {
            expected: regime.name(),
            found: d.regime.name(),
        });
    }
    Ok(())
}

/// Both ε series for |v2| < v1 + 1/4, sorted by energy.
///
/// A series whose count condition `p + εs > 1/2` fails is simply empty.
pub fn real_spectrum(d: &DerivedParams) -> Result<Vec<LevelRecord>> {
    require(d, Regime::RealSpectrum)?;
    let s = d.s.unwrap_or(0.0);
    let mut levels = Vec::new();
    for eps in Sign::BOTH {
        let lambda = -0.5 + d.p + eps.value() * s;
        let mut n = 0u32;
        while (n as f64) + COUNT_SLACK < lambda {
            levels.push(real_level(d, n, eps));
            n += 1;
        }
    }
    levels.sort_by(|a, b| a.energy.re.total_cmp(&b.energy.re));
    Ok(levels)
}

/// Both ε series for |v2| > v1 + 1/4, ordered by n then ε (+ first).
///
/// Only strict bound states `n < p - 1/2` are listed; a level sitting exactly
/// on the singularity locus is reported by [`detect_singularity`] instead.
pub fn complex_spectrum(d: &DerivedParams) -> Result<Vec<LevelRecord>> {
    require(d, Regime::ComplexSpectrum)?;
    let mut levels = Vec::new();
    let mut n = 0u32;
    while (n as f64) + SINGULARITY_TOL < d.p - 0.5 {
        for eps in Sign::BOTH {
            levels.push(complex_level(d, n, eps));
        }
        n += 1;
    }
    Ok(levels)
}

/// Dispatches on the regime; the boundary regime is rejected.
pub fn spectrum(d: &DerivedParams) -> Result<Vec<LevelRecord>> {
    match d.regime {
        Regime::RealSpectrum => real_spectrum(d),
        Regime::ComplexSpectrum => complex_spectrum(d),
        Regime::Boundary => Err(Error::Regime {
            expected: "RealSpectrum or ComplexSpectrum",
            found: Regime::Boundary.name(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub is_singular: bool,
    pub n_star: Option<u32>,
    /// `E* = q^2`.
    pub e_star: Option<f64>,
    pub tolerance_used: f64,
    /// `|v1 + |v2| - (4n^2 + 4n + 3/4)|` at the detected n.
    pub locus_residual: Option<f64>,
    pub note: Option<String>,
}

impl SingularityReport {
    fn negative(tol: f64, note: impl Into<String>) -> Self {
        Self {
            is_singular: false,
            n_star: None,
            e_star: None,
            tolerance_used: tol,
            locus_residual: None,
            note: Some(note.into()),
        }
    }
}

/// Detects the collapse of `E_{n+}` and `E_{n-}` onto the real value `q^2`,
/// which happens when `p - 1/2` is a nonnegative integer.
pub fn detect_singularity(d: &DerivedParams, tol: f64) -> SingularityReport {
    if d.regime != Regime::ComplexSpectrum {
        return SingularityReport::negative(
            tol,
            format!("{} regime: no spectral singularity", d.regime.name()),
        );
    }
    let shifted = d.p - 0.5;
    let n = shifted.round();
    if n < 0.0 || (shifted - n).abs() >= tol {
        return SingularityReport::negative(tol, format!("p - 1/2 = {shifted} is not an integer"));
    }
    let q = d.q.unwrap_or(0.0);
    let c = d.coupling;
    let locus = 4.0 * n * n + 4.0 * n + 0.75;
    let residual = (c.v1 + c.v2.abs() - locus).abs();
    debug_assert!(residual < 1e-6 * (1.0 + locus), "locus identity violated: {residual}");
    SingularityReport {
        is_singular: true,
        n_star: Some(n as u32),
        e_star: Some(q * q),
        tolerance_used: tol,
        locus_residual: Some(residual),
        note: None,
    }
}

/// Level `(n*, ε)` placed exactly on the locus `p = n* + 1/2`.
pub fn singular_level(report: &SingularityReport, d: &DerivedParams, epsilon: Sign) -> Result<LevelRecord> {
    let n = match (report.is_singular, report.n_star) {
        (true, Some(n)) => n,
        _ => return Err(Error::NotSingular),
    };
    Ok(complex_level_with(d, n as f64 + 0.5, n, epsilon))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub v1: f64,
    pub v2: f64,
    /// True when the point lies in the complex regime and is detected as singular.
    pub valid: bool,
    pub note: Option<String>,
}

/// Samples `v2 = 4n^2 + 4n + 3/4 - v1` at `steps` evenly spaced v1 values and
/// flags points that fall outside the complex regime.
pub fn singularity_locus(n: u32, v1_range: (f64, f64), steps: usize) -> Result<Vec<LocusPoint>> {
    let (lo, hi) = v1_range;
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::EmptyRange(format!(
            "v1 range [{lo}, {hi}] with {steps} steps"
        )));
    }
    let nf = n as f64;
    let total = 4.0 * nf * nf + 4.0 * nf + 0.75;
    let points = (0..steps)
        .map(|i| {
            let v1 = if steps == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            };
            let v2 = total - v1;
            match CouplingParams::new(v1, v2) {
                Ok(c) => {
                    let report = detect_singularity(&c.derive(), SINGULARITY_TOL);
                    let valid = report.is_singular && report.n_star == Some(n);
                    LocusPoint {
                        v1,
                        v2,
                        valid,
                        note: report.note,
                    }
                }
                Err(e) => LocusPoint {
                    v1,
                    v2,
                    valid: false,
                    note: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(points)
}
