//! Jost solutions, scattering amplitudes and transmission-peak search.
//!
//! `f₊ ~ e^{ikx}` as x → +∞ and `f₋ ~ e^{-ikx}` as x → -∞ are integrated
//! inward with classical RK4 at `SUBSTEPS` substeps per grid cell. Matching
//! each to plane waves at the far edge gives T, R_L and R_R.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grid::GridSpec;
use crate::params::CouplingParams;
use crate::{Error, Result, I};

/// RK4 substeps per grid cell.
pub const SUBSTEPS: usize = 10;

/// Coarse samples per window in [`transmission_peak`] before refinement.
pub const COARSE_SAMPLES: usize = 241;

const GOLDEN_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringResult {
    pub k: f64,
    #[serde(with = "crate::complex_serde")]
    pub transmission: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub reflection_left: Complex64,
    #[serde(with = "crate::complex_serde")]
    pub reflection_right: Complex64,
    /// `|W(f₊, f₋)| / (|f₊||f₊′| + |f₋||f₋′|)` at x = 0.
    pub wronskian_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub params: CouplingParams,
    pub k_peak: f64,
    pub peak_height: f64,
    pub wronskian_ratio: f64,
}

/// Potential tabulated at half-substep resolution, reusable across k.
#[derive(Debug, Clone)]
pub struct SampledPotential {
    grid: GridSpec,
    /// `V(-L + j·dx/2)` for `j = 0..=2·SUBSTEPS·(n_points-1)`.
    values: Vec<Complex64>,
}

impl SampledPotential {
    pub fn new<F: Fn(f64) -> Complex64>(potential: F, grid: &GridSpec) -> Self {
        let steps = SUBSTEPS * (grid.n_points - 1);
        let half = grid.spacing() / (2 * SUBSTEPS) as f64;
        let values = (0..=2 * steps)
            .map(|j| potential(-grid.half_width + j as f64 * half))
            .collect();
        Self { grid: *grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    fn steps(&self) -> usize {
        SUBSTEPS * (self.grid.n_points - 1)
    }
}

/// Values `(f, f')` of both Jost solutions at every grid node.
#[derive(Debug, Clone)]
pub struct JostPair {
    pub k: f64,
    pub plus: Vec<[Complex64; 2]>,
    pub minus: Vec<[Complex64; 2]>,
}

impl JostPair {
    /// `f₊ f₋′ − f₊′ f₋` at node `i`.
    pub fn wronskian(&self, i: usize) -> Complex64 {
        let [fp, dfp] = self.plus[i];
        let [fm, dfm] = self.minus[i];
        fp * dfm - dfp * fm
    }
}

fn rhs(v: Complex64, e: f64, y: [Complex64; 2]) -> [Complex64; 2] {
    [y[1], (v - e) * y[0]]
}

/// Integrates `ψ'' = (V − k²)ψ` across the grid. `forward` runs from -L to
/// +L; otherwise from +L to -L. Returns node values in grid order.
fn integrate(sp: &SampledPotential, k: f64, start: [Complex64; 2], forward: bool) -> Vec<[Complex64; 2]> {
    let e = k * k;
    let steps = sp.steps();
    let dx = sp.grid.spacing() / SUBSTEPS as f64;
    let n = sp.grid.n_points;
    let mut nodes = vec![[Complex64::new(0.0, 0.0); 2]; n];
    let mut y = start;
    let (h, first) = if forward { (dx, 0) } else { (-dx, n - 1) };
    nodes[first] = y;
    for step in 0..steps {
        // Half-step sample indices at the start, middle and end of this substep.
        let (j0, j1, j2) = if forward {
            (2 * step, 2 * step + 1, 2 * step + 2)
        } else {
            let j = 2 * (steps - step);
            (j, j - 1, j - 2)
        };
        let (v0, v1, v2) = (sp.values[j0], sp.values[j1], sp.values[j2]);
        let k1 = rhs(v0, e, y);
        let k2 = rhs(v1, e, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
        let k3 = rhs(v1, e, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
        let k4 = rhs(v2, e, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for c in 0..2 {
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        if (step + 1) % SUBSTEPS == 0 {
            let cell = (step + 1) / SUBSTEPS;
            let idx = if forward { cell } else { n - 1 - cell };
            nodes[idx] = y;
        }
    }
    nodes
}

fn check_k(k: f64, grid: &GridSpec) -> Result<()> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    if k * grid.half_width < 2.0 * std::f64::consts::PI {
        return Err(Error::Domain(format!(
            "k L = {} is below 2π; widen the domain or raise k",
            k * grid.half_width
        )));
    }
    Ok(())
}

/// Both Jost solutions on the grid nodes.
pub fn jost_solutions(sp: &SampledPotential, k: f64) -> Result<JostPair> {
    check_k(k, &sp.grid)?;
    let l = sp.grid.half_width;
    let ik = I * k;
    let at_right = (ik * l).exp();
    let plus = integrate(sp, k, [at_right, ik * at_right], false);
    let at_left = (ik * l).exp();
    let minus = integrate(sp, k, [at_left, -ik * at_left], true);
    let finite = |v: &Vec<[Complex64; 2]>| v.iter().all(|y| y[0].is_finite() && y[1].is_finite());
    if !finite(&plus) || !finite(&minus) {
        return Err(Error::NonConvergence(format!(
            "Jost integration overflowed at k = {k}"
        )));
    }
    Ok(JostPair { k, plus, minus })
}

/// Scattering data from tabulated potential samples.
pub fn scattering_sampled(sp: &SampledPotential, k: f64) -> Result<ScatteringResult> {
    let jost = jost_solutions(sp, k)?;
    let ik = I * k;
    let l = sp.grid.half_width;
    let n = sp.grid.n_points;

    // f₊ = A e^{ikx} + B e^{-ikx} at x = -L.
    let [f, df] = jost.plus[0];
    let x = -l;
    let a = (ik * f + df) * (-ik * x).exp() / (2.0 * ik);
    let b = (ik * f - df) * (ik * x).exp() / (2.0 * ik);
    // f₋ = C e^{-ikx} + D e^{ikx} at x = +L.
    let [g, dg] = jost.minus[n - 1];
    let x = l;
    let c = (ik * g - dg) * (ik * x).exp() / (2.0 * ik);
    let d = (ik * g + dg) * (-ik * x).exp() / (2.0 * ik);

    let mid = (n - 1) / 2;
    let w = jost.wronskian(mid);
    let [fp, dfp] = jost.plus[mid];
    let [fm, dfm] = jost.minus[mid];
    let scale = fp.norm() * dfp.norm() + fm.norm() * dfm.norm();
    let wronskian_ratio = if scale > 0.0 { w.norm() / scale } else { 0.0 };

    Ok(ScatteringResult {
        k,
        transmission: 1.0 / a,
        reflection_left: b / a,
        reflection_right: d / c,
        wronskian_ratio,
    })
}

/// Scattering amplitudes of `potential` at wavenumber `k`.
pub fn scattering<F: Fn(f64) -> Complex64>(potential: F, k: f64, grid: &GridSpec) -> Result<ScatteringResult> {
    check_k(k, grid)?;
    scattering_sampled(&SampledPotential::new(potential, grid), k)
}

/// `scattering` at each k, computed in parallel, returned in input order.
pub fn transmission_scan(sp: &SampledPotential, ks: &[f64]) -> Result<Vec<ScatteringResult>> {
    ks.par_iter().map(|&k| scattering_sampled(sp, k)).collect()
}

/// Location and height of the largest `|T(k)|` in `window`: a uniform scan
/// followed by golden-section refinement around the best sample.
pub fn transmission_peak(sp: &SampledPotential, window: (f64, f64)) -> Result<ScatteringResult> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::EmptyRange(format!("k window [{lo}, {hi}]")));
    }
    let ks: Vec<f64> = (0..COARSE_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / (COARSE_SAMPLES - 1) as f64)
        .collect();
    let coarse = transmission_scan(sp, &ks)?;
    let best = coarse
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.transmission.norm().total_cmp(&b.1.transmission.norm()))
        .map(|(i, _)| i)
        .unwrap_or(0);

    let mut a = ks[best.saturating_sub(1)];
    let mut b = ks[(best + 1).min(ks.len() - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = scattering_sampled(sp, c)?;
    let mut fd = scattering_sampled(sp, d)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if (b - a) <= 1e-13 * b {
            break;
        }
        if fc.transmission.norm() > fd.transmission.norm() {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = scattering_sampled(sp, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = scattering_sampled(sp, d)?;
        }
    }
    let refined = if fc.transmission.norm() > fd.transmission.norm() { fc } else { fd };
    Ok(if refined.transmission.norm() >= coarse[best].transmission.norm() {
        refined
    } else {
        coarse[best]
    })
}

/// Transmission peak for each coupling pair on `curve`, in parallel.
pub fn singularity_scan(curve: &[CouplingParams], window: (f64, f64), grid: &GridSpec) -> Result<Vec<ScanPoint>> {
    if !(window.1 > window.0) {
        return Err(Error::EmptyRange(format!("k window [{}, {}]", window.0, window.1)));
    }
    curve
        .par_iter()
        .map(|params| {
            let sp = SampledPotential::new(|x| params.potential(x), grid);
            let peak = transmission_peak(&sp, window)?;
            Ok(ScanPoint {
                params: *params,
                k_peak: peak.k,
                peak_height: peak.transmission.norm(),
                wronskian_ratio: peak.wronskian_ratio,
            })
        })
        .collect()
}
