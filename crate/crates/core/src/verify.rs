//! Analytic-versus-numeric cross-checks for one coupling pair.
//!
//! Every closed form (levels, wavefunctions, superpotentials, partner spectra)
//! is compared against the grid eigensolver, the finite-difference residual
//! or the scattering integrator. Each comparison becomes one named [`Check`].

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grid::GridSpec;
use crate::numeric::{discrete_spectrum, residual, transmission_peak, SampledPotential, LOCALIZATION_THRESHOLD};
use crate::params::{CouplingParams, Regime, Sign};
use crate::spectrum::{detect_singularity, spectrum, SINGULARITY_TOL};
use crate::susy::{
    added_state, extended_potential, partner_spectrum, partner_wavefunction, solve_branch, superpotential,
    superpotential_derivative, LevelOrigin, PartnerBranch,
};
use crate::wavefunction::bound_state;
use crate::{Error, Result};

pub const MATCHING_TOL: f64 = 1e-10;
pub const RESIDUAL_TOL: f64 = 1e-6;
pub const FACTORIZATION_TOL: f64 = 1e-8;
pub const SINGULARITY_K2_TOL: f64 = 1e-3;
pub const WRONSKIAN_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub note: Option<String>,
}

impl Check {
    fn measured(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let status = if value.is_finite() && value < tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name: name.into(),
            status,
            value: Some(value),
            tolerance: Some(tolerance),
            note: None,
        }
    }

    fn skipped(name: impl Into<String>, note: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skipped,
            value: None,
            tolerance: None,
            note: Some(note.into()),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub coupling: CouplingParams,
    pub grid: GridSpec,
    pub checks: Vec<Check>,
    /// No check failed (skipped checks do not count).
    pub passed: bool,
}

/// Smallest observed convergence order accepted when a residual exceeds
/// [`RESIDUAL_TOL`] on the requested grid.
pub const MIN_RESIDUAL_ORDER: f64 = 3.5;

/// Eigenvalue agreement tolerance `10 h² (1 + |E| + max|V|)`.
pub fn spectrum_tolerance(grid: &GridSpec, energy: Complex64, v_max: f64) -> f64 {
    let h = grid.spacing();
    10.0 * h * h * (1.0 + energy.norm() + v_max)
}

/// Fraction of `Σ|ψ|²` in the outer 10% of the grid, for closed-form states.
fn edge_fraction<F: Fn(f64) -> Complex64>(psi: F, grid: &GridSpec) -> f64 {
    let edge = 0.9 * grid.half_width;
    let (mut out, mut total) = (0.0, 0.0);
    for x in grid.xs() {
        let w = psi(x).norm_sqr();
        total += w;
        if x.abs() > edge {
            out += w;
        }
    }
    if total > 0.0 {
        out / total
    } else {
        1.0
    }
}

/// Residual check that falls back to the observed convergence order on a
/// refined grid when the state varies too fast for the requested spacing.
fn residual_check<P, F>(name: String, potential: P, psi: F, energy: Complex64, grid: &GridSpec) -> Check
where
    P: Fn(f64) -> Complex64 + Copy,
    F: Fn(f64) -> Complex64 + Copy,
{
    let r = residual(potential, psi, energy, grid);
    let check = Check::measured(name, r, RESIDUAL_TOL);
    if check.status == CheckStatus::Pass || !r.is_finite() {
        return check;
    }
    let fine = residual(potential, psi, energy, &grid.refined());
    let order = (r / fine).log2();
    if order >= MIN_RESIDUAL_ORDER {
        Check {
            status: CheckStatus::Pass,
            ..check
        }
        .with_note(format!("truncation-limited at this spacing; observed order {order:.2}"))
    } else {
        check.with_note(format!("observed order {order:.2} on refinement"))
    }
}

fn nearest(numeric: &[Complex64], target: Complex64) -> Option<f64> {
    numeric.iter().map(|z| (z - target).norm()).min_by(f64::total_cmp)
}

/// Mean of the two numeric eigenvalues nearest `target`; a Jordan block
/// splits under discretization into a pair centred on the exact value.
fn nearest_pair_mean(numeric: &[Complex64], target: Complex64) -> Option<f64> {
    let mut sorted: Vec<Complex64> = numeric.to_vec();
    sorted.sort_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()));
    match sorted.as_slice() {
        [a, b, ..] => Some(((a + b) / 2.0 - target).norm()),
        _ => None,
    }
}

fn tag(n: u32, eps: Sign) -> String {
    format!("n={n},eps={eps}")
}

fn original_checks(c: &CouplingParams, grid: &GridSpec) -> Result<Vec<Check>> {
    let d = c.derive();
    let mut checks = Vec::new();
    let levels = spectrum(&d)?;
    let numeric = discrete_spectrum(|x| c.potential(x), grid, levels.len() + 4)?;
    let v_max = grid.xs().map(|x| c.potential(x).norm()).fold(0.0, f64::max);
    let mut expected = 0usize;
    for l in &levels {
        let t = tag(l.n, l.epsilon);
        checks.push(Check::measured(
            format!("matching[{t}]"),
            l.wf.matching_residual(c, l.n, l.energy),
            MATCHING_TOL * (1.0 + c.v1 + c.v2.abs()),
        ));
        checks.push(residual_check(
            format!("residual[{t}]"),
            |x| c.potential(x),
            |x| bound_state(l, x),
            l.energy,
            grid,
        ));
        let name = format!("eigenvalue[{t}]");
        if edge_fraction(|x| bound_state(l, x), grid) >= LOCALIZATION_THRESHOLD {
            checks.push(Check::skipped(name, "state too weakly localized for this domain"));
            continue;
        }
        expected += 1;
        let gap = nearest(&numeric, l.energy).unwrap_or(f64::INFINITY);
        checks.push(Check::measured(name, gap, spectrum_tolerance(grid, l.energy, v_max)));
    }
    checks.push(
        Check::measured(
            "eigenvalue.count",
            (numeric.len() as f64 - expected as f64).abs(),
            0.5,
        )
        .with_note(format!("{expected} resolvable analytic, {} localized numeric", numeric.len())),
    );

    let report = detect_singularity(&d, SINGULARITY_TOL);
    if let (true, Some(e_star)) = (report.is_singular, report.e_star) {
        let k_star = e_star.sqrt();
        let k_floor = 2.0 * std::f64::consts::PI / grid.half_width * 1.001;
        let window = ((0.8 * k_star).max(k_floor), 1.2 * k_star);
        if window.1 <= window.0 {
            checks.push(Check::skipped("singularity.peak", "k* below the domain's kL >= 2π floor"));
        } else {
            let sp = SampledPotential::new(|x| c.potential(x), grid);
            let peak = transmission_peak(&sp, window)?;
            checks.push(Check::measured(
                "singularity.peak",
                (peak.k * peak.k - e_star).abs(),
                SINGULARITY_K2_TOL,
            ));
            checks.push(Check::measured(
                "singularity.wronskian",
                peak.wronskian_ratio,
                WRONSKIAN_TOL,
            ));
        }
    }
    Ok(checks)
}

fn branch_checks(branch: &PartnerBranch, grid: &GridSpec) -> Result<Vec<Check>> {
    let label = branch.label();
    let c = branch.coupling();
    let mut checks = Vec::new();
    let mut vext = Vec::with_capacity(grid.n_points);
    for x in grid.xs() {
        match extended_potential(branch, x) {
            Ok(v) => vext.push(v),
            Err(Error::Pole { x }) => {
                return Ok(vec![Check::skipped(
                    format!("branch[{label}]"),
                    format!("partner potential has a pole near x = {x}"),
                )]);
            }
            Err(e) => return Err(e),
        }
    }

    let e = branch.factorization_energy;
    let mut worst: f64 = 0.0;
    for (x, v_ext) in grid.xs().zip(&vext) {
        let w = superpotential(branch, x)?;
        let wp = superpotential_derivative(branch, x)?;
        let lower = (w * w - wp + e - c.potential(x)).norm();
        let upper = (w * w + wp + e - v_ext).norm();
        worst = worst.max(lower).max(upper);
    }
    checks.push(Check::measured(
        format!("branch[{label}].factorization"),
        worst,
        FACTORIZATION_TOL,
    ));

    let (levels, edit) = partner_spectrum(branch)?;
    let v_ext = |x: f64| extended_potential(branch, x).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let numeric = discrete_spectrum(v_ext, grid, levels.len() + 4)?;
    let v_max = vext.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let degenerate = edit.degeneracy_note.is_some();
    let original = spectrum(&branch.derived)?;
    for level in &levels {
        let (t, psi): (String, Box<dyn Fn(f64) -> Result<Complex64> + '_>) = match level.origin {
            LevelOrigin::Mapped { n, epsilon } => {
                let Some(src) = original.iter().find(|l| l.n == n && l.epsilon == epsilon).copied() else {
                    continue;
                };
                (tag(n, epsilon), Box::new(move |x| partner_wavefunction(branch, &src, x)))
            }
            LevelOrigin::Added => ("added".to_string(), Box::new(|x| added_state(branch, x))),
        };
        let name = format!("branch[{label}].eigenvalue[{t}]");
        let resolvable = psi(0.0).is_err()
            || edge_fraction(|x| psi(x).unwrap_or_default(), grid) < LOCALIZATION_THRESHOLD;
        let coincident = degenerate && (level.energy - e).norm() < 1e-9 * (1.0 + e.norm());
        let gap = if coincident {
            nearest_pair_mean(&numeric, level.energy)
        } else {
            nearest(&numeric, level.energy)
        }
        .unwrap_or(f64::INFINITY);
        if resolvable {
            let mut check = Check::measured(name, gap, spectrum_tolerance(grid, level.energy, v_max));
            if coincident {
                check = check.with_note("exceptional point: mean of the split numeric pair");
            }
            checks.push(check);
        } else {
            checks.push(Check::skipped(name, "state too weakly localized for this domain"));
        }

        let name = format!("branch[{label}].residual[{t}]");
        if psi(0.0).is_err() {
            checks.push(Check::skipped(name, "coincides with the factorization energy"));
            continue;
        }
        let psi_grid = |x: f64| psi(x).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        checks.push(residual_check(name, v_ext, psi_grid, level.energy, grid));
    }
    if let Some(del) = edit.deleted_level {
        let gap = nearest(&numeric, del.energy).unwrap_or(f64::INFINITY);
        let check = Check {
            name: format!("branch[{label}].deleted[{}]", tag(del.n, del.epsilon)),
            status: if gap > 0.05 { CheckStatus::Pass } else { CheckStatus::Fail },
            value: Some(gap),
            tolerance: Some(0.05),
            note: Some("distance to nearest numeric level must exceed the tolerance".into()),
        };
        checks.push(check);
    }
    Ok(checks)
}

/// Runs every applicable cross-check for `c` on `grid`. Partner branches are
/// only built for `v2 > 0` away from the regime boundary.
pub fn verify(c: &CouplingParams, grid: &GridSpec) -> Result<VerifyReport> {
    let d = c.derive();
    if d.regime == Regime::Boundary {
        return Err(Error::Regime {
            expected: "RealSpectrum or ComplexSpectrum",
            found: d.regime.name(),
        });
    }
    let mut checks = original_checks(c, grid)?;

    if c.v2 > 0.0 {
        let pairs: Vec<(Sign, Sign)> = Sign::BOTH
            .iter()
            .flat_map(|&ep| Sign::BOTH.iter().map(move |&em| (ep, em)))
            .collect();
        let per_branch: Vec<Result<Vec<Check>>> = pairs
            .par_iter()
            .map(|&(ep, em)| match solve_branch(&d, ep, em) {
                Ok(br) => branch_checks(&br, grid),
                Err(Error::SingularBranch) => Ok(vec![Check::skipped(
                    format!("branch[{ep}{em}]"),
                    "2a - 1 = 0: no rational extension",
                )]),
                Err(e) => Err(e),
            })
            .collect();
        for r in per_branch {
            checks.extend(r?);
        }
    } else {
        checks.push(Check::skipped("branches", "partner construction requires v2 > 0"));
    }

    let passed = checks.iter().all(|ch| ch.status != CheckStatus::Fail);
    Ok(VerifyReport {
        coupling: *c,
        grid: *grid,
        checks,
        passed,
    })
}
