use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::branch::{factorizing_function, superpotential, BranchKind, PartnerBranch};
use super::exceptional::partner_polynomial;
use crate::params::{DerivedParams, Sign};
use crate::spectrum::{detect_singularity, spectrum, LevelRecord, SingularityReport, SINGULARITY_TOL};
use crate::wavefunction::{bound_state, bound_state_derivative};
use crate::{gd, sech_pow, Error, Result, I};

/// Relative tolerance under which two energies count as the same level.
pub const SAME_LEVEL_TOL: f64 = 1e-9;

fn same_energy(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < SAME_LEVEL_TOL * (1.0 + a.norm().max(b.norm()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LevelOrigin {
    /// Image of original level (n, ε) under the intertwining operator.
    Mapped { n: u32, epsilon: Sign },
    /// The extra level carried by `1/φ`.
    Added,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartnerLevel {
    #[serde(with = "crate::complex_serde")]
    pub energy: Complex64,
    pub origin: LevelOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelRef {
    pub n: u32,
    pub epsilon: Sign,
    #[serde(with = "crate::complex_serde")]
    pub energy: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AddedLevel {
    #[serde(with = "crate::complex_serde")]
    pub energy: Complex64,
}

/// The added level coincides with original level (n, ε).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyNote {
    pub n: u32,
    pub epsilon: Sign,
    /// `v2 - [v1 - (n + 3/2)(n + 5/2)]`; zero on the degeneracy line.
    pub condition_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartnerSpectrumEdit {
    pub deleted_level: Option<LevelRef>,
    pub added_level: Option<AddedLevel>,
    pub degeneracy_note: Option<DegeneracyNote>,
}

/// Partner spectrum relative to the original one.
///
/// When `φ` is normalizable (Re a > 1, which for real branches means ε₊ = +)
/// the level `E = E_{1ε₋}` is deleted. When `1/φ` is normalizable (Re a < 1,
/// always the case for ε₊ = -) a level at `E = -(a-1)^2` is added.
/// Levels are sorted by real part, then imaginary part.
pub fn partner_spectrum(branch: &PartnerBranch) -> Result<(Vec<PartnerLevel>, PartnerSpectrumEdit)> {
    let d = &branch.derived;
    let original = spectrum(d)?;
    let e = branch.factorization_energy;
    let mut edit = PartnerSpectrumEdit {
        deleted_level: None,
        added_level: None,
        degeneracy_note: None,
    };

    let mut levels: Vec<PartnerLevel> = Vec::with_capacity(original.len() + 1);
    let deletes = branch.a.re > 1.0 + 1e-12;
    let adds = branch.a.re < 1.0 - 1e-12;
    for l in &original {
        if deletes && edit.deleted_level.is_none() && l.n == 1 && l.epsilon == branch.eps_minus && same_energy(l.energy, e) {
            edit.deleted_level = Some(LevelRef {
                n: l.n,
                epsilon: l.epsilon,
                energy: l.energy,
            });
            continue;
        }
        levels.push(PartnerLevel {
            energy: l.energy,
            origin: LevelOrigin::Mapped {
                n: l.n,
                epsilon: l.epsilon,
            },
        });
    }
    if deletes && edit.deleted_level.is_none() {
        return Err(Error::NonConvergence(format!(
            "branch {} factorizes at E = {e} but no matching original level was found",
            branch.label()
        )));
    }

    if adds {
        edit.added_level = Some(AddedLevel { energy: e });
        if let Some(l) = original.iter().find(|l| same_energy(l.energy, e)) {
            let n = l.n as f64;
            let c = d.coupling;
            edit.degeneracy_note = Some(DegeneracyNote {
                n: l.n,
                epsilon: l.epsilon,
                condition_residual: c.v2 - (c.v1 - (n + 1.5) * (n + 2.5)),
            });
        }
        levels.push(PartnerLevel {
            energy: e,
            origin: LevelOrigin::Added,
        });
    }

    levels.sort_by(|x, y| {
        x.energy
            .re
            .total_cmp(&y.energy.re)
            .then(x.energy.im.total_cmp(&y.energy.im))
    });
    Ok((levels, edit))
}

/// Partner eigenfunction `(E_l - E)^{-1/2} [d/dx + W(x)] ψ_l(x)` obtained by
/// intertwining an original bound state.
///
/// When `E_l` equals the factorization energy the prefactor is dropped. The
/// result is then nonzero unless `ψ_l` is the zero mode `φ` itself, which
/// gives [`Error::DegenerateEnergy`].
pub fn partner_wavefunction(branch: &PartnerBranch, level: &LevelRecord, x: f64) -> Result<Complex64> {
    let w = superpotential(branch, x)?;
    let psi = bound_state(level, x);
    let dpsi = bound_state_derivative(level, x);
    if same_energy(level.energy, branch.factorization_energy) {
        if annihilated(branch, level)? {
            return Err(Error::DegenerateEnergy);
        }
        return Ok(dpsi + w * psi);
    }
    let gap = level.energy - branch.factorization_energy;
    Ok((dpsi + w * psi) / gap.sqrt())
}

/// `[d/dx + W] ψ_l ≡ 0`, tested through `(ψ' + Wψ) / |ψ|` at a few points.
fn annihilated(branch: &PartnerBranch, level: &LevelRecord) -> Result<bool> {
    for x in [-0.7, 0.0, 0.9] {
        let psi = bound_state(level, x);
        let dpsi = bound_state_derivative(level, x);
        let scale = psi.norm() * (1.0 + superpotential(branch, x)?.norm()) + dpsi.norm();
        if (dpsi + superpotential(branch, x)? * psi).norm() > 1e-9 * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Wavefunction `1/φ(x)` of the added level (only normalizable when Re a < 1).
pub fn added_state(branch: &PartnerBranch, x: f64) -> Result<Complex64> {
    if branch.a.re >= 1.0 {
        return Err(Error::Domain(format!(
            "branch {} has no added level (Re a = {} >= 1)",
            branch.label(),
            branch.a.re
        )));
    }
    let phi = factorizing_function(branch, x);
    if phi.norm() == 0.0 {
        return Err(Error::Pole { x });
    }
    Ok(1.0 / phi)
}

/// Closed-form (+,+) partner wavefunction with unit constant:
///
/// ```text
/// ψ⁻_{nε}(x) = sech^ξ x · exp[η arctan(sinh x)] · [p - s - i(p+s-1) sinh x]^{-1} · 𝒫_{nε}(i sinh x)
/// ```
///
/// with ξ = -3/2 + p + s, η = -i(p-s) for ε = + and ξ = -1/2 + p - s,
/// η = -i(p+s-1) for ε = -. Proportional to [`partner_wavefunction`].
pub fn partner_closed_form(branch: &PartnerBranch, n: u32, epsilon: Sign, x: f64) -> Result<Complex64> {
    if branch.eps_plus != Sign::Plus || branch.eps_minus != Sign::Plus {
        return Err(Error::Unsupported(format!(
            "closed-form partner states are only available for branch ++, got {}",
            branch.label()
        )));
    }
    let d = &branch.derived;
    let (p, s) = (d.p, d.s_complex());
    let (xi, eta) = match epsilon {
        Sign::Plus => (-1.5 + p + s, -I * (p - s)),
        Sign::Minus => (-0.5 + p - s, -I * (p + s - 1.0)),
    };
    let y = I * x.sinh();
    let seed = (p - s) - (p + s - 1.0) * y;
    if seed.norm() < 1e-12 {
        return Err(Error::Pole { x });
    }
    let poly = partner_polynomial(d, n, epsilon, y)?;
    Ok(sech_pow(x, xi) * (eta * gd(x)).exp() * poly / seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartnerSingularityReport {
    pub report: SingularityReport,
    /// `V1' + V2' = (v1 - 2a) + (v2 - 2b)`.
    #[serde(with = "crate::complex_serde")]
    pub primed_sum: Complex64,
    /// `4n^2 - 1/4` at the detected n.
    pub primed_target: Option<f64>,
    /// At n* = 1 only `E⁻_{1-}` survives (its partner `E⁻_{1+}` is the deleted level).
    pub single_level: bool,
}

/// Spectral singularity of the (+,+) partner in the complex regime; it sits at
/// the same `E* = q^2` as for the original potential.
pub fn partner_singularity(branch: &PartnerBranch, d: &DerivedParams) -> Result<PartnerSingularityReport> {
    if branch.kind != BranchKind::ComplexNonPT {
        return Err(Error::Regime {
            expected: "ComplexSpectrum",
            found: d.regime.name(),
        });
    }
    if branch.eps_plus != Sign::Plus || branch.eps_minus != Sign::Plus {
        return Err(Error::Unsupported(format!(
            "partner singularity is only derived for branch ++, got {}",
            branch.label()
        )));
    }
    let report = detect_singularity(d, SINGULARITY_TOL);
    let primed_target = report.n_star.map(|n| {
        let n = n as f64;
        4.0 * n * n - 0.25
    });
    Ok(PartnerSingularityReport {
        single_level: report.n_star == Some(1),
        primed_sum: branch.primed_v1() + branch.primed_v2(),
        primed_target,
        report,
    })
}
