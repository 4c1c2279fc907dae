//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Reference values are recomputed here from the closed forms in plain
//! arithmetic, independent of the library's own parameter plumbing.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scarf_core::numeric::{discrete_spectrum, residual, transmission_peak, SampledPotential};
use scarf_core::quadrature::integrate;
use scarf_core::spectrum::{detect_singularity, real_spectrum, spectrum, SINGULARITY_TOL};
use scarf_core::susy::{
    added_state, extended_potential, partner_closed_form, partner_spectrum, partner_wavefunction, solve_branch,
    superpotential, PartnerBranch,
};
use scarf_core::wavefunction::{bound_state, singularity_wavefunction};
use scarf_core::{CouplingParams, GridSpec, JacobiSpec, Sign};

const I: Complex64 = Complex64::new(0.0, 1.0);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn coupling(v1: f64, v2: f64) -> CouplingParams {
    CouplingParams::new(v1, v2).expect("valid couplings")
}

fn branch(v1: f64, v2: f64, ep: Sign, em: Sign) -> PartnerBranch {
    solve_branch(&coupling(v1, v2).derive(), ep, em).expect("regular branch")
}

// Oracle: p, s, q straight from the couplings.
fn p_of(v1: f64, v2: f64) -> f64 {
    0.5 * (v2.abs() + v1 + 0.25).sqrt()
}

fn s_of(v1: f64, v2: f64) -> f64 {
    0.5 * (0.25 + v1 - v2.abs()).sqrt()
}

fn q_of(v1: f64, v2: f64) -> f64 {
    0.5 * (v2.abs() - v1 - 0.25).sqrt()
}

fn min_gap(numeric: &[Complex64], target: Complex64) -> f64 {
    numeric.iter().map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (p, s) = (p_of(12.0, 6.0), s_of(12.0, 6.0));
    let oracle = [
        -(p + s - 0.5).powi(2),
        -(p + s - 1.5).powi(2),
        -(p + s - 2.5).powi(2),
        -(p - s - 0.5).powi(2),
    ];
    let c = coupling(12.0, 6.0);
    let analytic: Vec<f64> = real_spectrum(&c.derive()).unwrap().iter().map(|l| l.energy.re).collect();
    let numeric = discrete_spectrum(|x| c.potential(x), &GridSpec::reference(), 8).unwrap();
    let elapsed = start.elapsed();
    let analytic_ok = analytic.len() == 4 && oracle.iter().all(|e| analytic.iter().any(|a| (a - e).abs() < 1e-12));
    let worst = oracle
        .iter()
        .map(|&e| min_gap(&numeric, Complex64::new(e, 0.0)))
        .fold(0.0, f64::max);
    outcome(
        analytic_ok && numeric.len() == 4 && worst < 1e-3 && elapsed < Duration::from_secs(30),
        format!("max |E_num - E| = {worst:.3e}, {} numeric levels, {elapsed:.1?}", numeric.len()),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (p, q) = (p_of(1.0, 5.0), q_of(1.0, 5.0));
    let oracle: Vec<Complex64> = [1.0, -1.0]
        .iter()
        .map(|&e| {
            let k = Complex64::new(p - 0.5, e * q);
            -k * k
        })
        .collect();
    let c = coupling(1.0, 5.0);
    let numeric = discrete_spectrum(|x| c.potential(x), &GridSpec::reference(), 8).unwrap();
    let elapsed = start.elapsed();
    let worst = oracle
        .iter()
        .map(|&e| {
            let z = numeric
                .iter()
                .min_by(|a, b| (*a - e).norm().total_cmp(&(*b - e).norm()))
                .copied()
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            (z.re - e.re).abs().max((z.im - e.im).abs())
        })
        .fold(0.0, f64::max);
    let expected = (oracle[0] - Complex64::new(0.375, -1.452369)).norm() < 1e-6;
    outcome(
        expected && worst < 1e-3 && elapsed < Duration::from_secs(30),
        format!("max componentwise error = {worst:.3e}, {elapsed:.1?}"),
    )
}

fn scan_window() -> (f64, f64) {
    // Lower edge keeps k L >= 2π on the reference grid.
    (0.35, 3.0)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let grid = GridSpec::reference();
    let e_star = q_of(2.0, 6.75).powi(2);
    let on = coupling(2.0, 6.75);
    let off = coupling(1.0, 5.0);
    let peak_on = transmission_peak(&SampledPotential::new(|x| on.potential(x), &grid), scan_window()).unwrap();
    let peak_off = transmission_peak(&SampledPotential::new(|x| off.potential(x), &grid), scan_window()).unwrap();
    let elapsed = start.elapsed();
    let k2_err = (peak_on.k * peak_on.k - e_star).abs();
    let ratio = peak_on.transmission.norm() / peak_off.transmission.norm();
    outcome(
        k2_err < 1e-3 && ratio >= 1e3 && peak_on.wronskian_ratio < 1e-3 && elapsed < Duration::from_secs(60),
        format!(
            "k_peak^2 = {:.6} (E* = {e_star}), |T| ratio = {ratio:.3e}, wronskian_ratio = {:.3e}, {elapsed:.1?}",
            peak_on.k * peak_on.k,
            peak_on.wronskian_ratio
        ),
    )
}

fn criterion_4() -> Outcome {
    let direct = integrate(|x: f64| 1.0 / x.cosh() - I * x.tanh(), -40.0, 40.0, 64, 1e-10).unwrap();
    // Same integral as the pseudo-norm of the n = 0 singular state on v1 + v2 = 3/4.
    let c = coupling(0.1, 0.65);
    let d = c.derive();
    let report = detect_singularity(&d, SINGULARITY_TOL);
    let psi = |x| singularity_wavefunction(&report, &d, Sign::Plus, x).unwrap();
    let via_state = scarf_core::wavefunction::pseudo_norm(psi, (-40.0, 40.0), 64, 1e-10).unwrap();
    let err = (direct.value - PI).norm().max((via_state.value - PI).norm());
    outcome(err < 1e-6, format!("|integral - π| = {err:.3e}"))
}

/// Five-point first derivative of grid samples at interior node `i`.
fn five_point(f: &[Complex64], i: usize, h: f64) -> Complex64 {
    (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
}

fn criterion_5() -> Outcome {
    let grid = GridSpec::reference();
    let h = grid.spacing();
    let br = branch(12.0, 6.0, Sign::Plus, Sign::Plus);
    let c = br.coupling();
    let e = br.factorization_energy;
    let xs: Vec<f64> = grid.xs().collect();
    let w: Vec<Complex64> = xs.iter().map(|&x| superpotential(&br, x).unwrap()).collect();
    let (mut lower, mut upper) = (0.0f64, 0.0f64);
    for i in 2..xs.len() - 2 {
        let wp = five_point(&w, i, h);
        let w2 = w[i] * w[i];
        lower = lower.max((w2 - wp + e - c.potential(xs[i])).norm());
        upper = upper.max((w2 + wp + e - extended_potential(&br, xs[i]).unwrap()).norm());
    }
    outcome(
        lower < 1e-8 && upper < 1e-8,
        format!("max |W^2 - W' + E - V| = {lower:.3e}, max |W^2 + W' + E - V_ext| = {upper:.3e} (tolerance 1e-8)"),
    )
}

fn criterion_6() -> Outcome {
    let (p, s) = (p_of(12.0, 6.0), s_of(12.0, 6.0));
    let kept = [-(p + s - 0.5).powi(2), -(p + s - 2.5).powi(2), -(p - s - 0.5).powi(2)];
    let deleted = -(p + s - 1.5).powi(2);
    let br = branch(12.0, 6.0, Sign::Plus, Sign::Plus);
    let numeric = discrete_spectrum(|x| extended_potential(&br, x).unwrap(), &GridSpec::reference(), 8).unwrap();
    let worst = kept
        .iter()
        .map(|&e| min_gap(&numeric, Complex64::new(e, 0.0)))
        .fold(0.0, f64::max);
    let near_deleted = min_gap(&numeric, Complex64::new(deleted, 0.0));
    outcome(
        worst < 1e-3 && near_deleted > 0.05,
        format!("max kept-level error = {worst:.3e}, nearest to deleted {deleted:.4} = {near_deleted:.3e}"),
    )
}

fn criterion_7() -> Outcome {
    let (p, s) = (p_of(12.0, 6.0), s_of(12.0, 6.0));
    let extra = -(p - s + 1.5).powi(2);
    let br = branch(12.0, 6.0, Sign::Minus, Sign::Plus);
    let numeric = discrete_spectrum(|x| extended_potential(&br, x).unwrap(), &GridSpec::reference(), 8).unwrap();
    let original = discrete_spectrum(|x| br.coupling().potential(x), &GridSpec::reference(), 8).unwrap();
    let gap = min_gap(&numeric, Complex64::new(extra, 0.0));
    let analytic = (br.factorization_energy - extra).norm();
    outcome(
        gap < 1e-3 && analytic < 1e-12 && numeric.len() == original.len() + 1,
        format!(
            "added level {extra:.6}: numeric gap {gap:.3e}, {} partner vs {} original levels",
            numeric.len(),
            original.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let grid = GridSpec::reference();
    let e_star = q_of(2.0, 6.75).powi(2);
    let br = branch(2.0, 6.75, Sign::Plus, Sign::Plus);
    let sp = SampledPotential::new(|x| extended_potential(&br, x).unwrap(), &grid);
    let peak = transmission_peak(&sp, scan_window()).unwrap();
    let k2_err = (peak.k * peak.k - e_star).abs();
    let n = 1.0;
    let primed = br.primed_v1() + br.primed_v2();
    let primed_err = (primed - (4.0 * n * n - 0.25)).norm();
    outcome(
        k2_err < 1e-3 && primed_err < 1e-9,
        format!(
            "partner k_peak^2 = {:.6}, |V1' + V2' - 3.75| = {primed_err:.3e}",
            peak.k * peak.k
        ),
    )
}

/// Explicit hypergeometric sum
/// `P_n(y) = (α+1)_n / n! · Σ_k (-n)_k (n+α+β+1)_k / ((α+1)_k k!) ((1-y)/2)^k`.
fn jacobi_oracle(n: u32, a: Complex64, b: Complex64, y: Complex64) -> Complex64 {
    let z = (1.0 - y) / 2.0;
    let mut prefactor = Complex64::new(1.0, 0.0);
    for j in 0..n {
        prefactor *= (a + 1.0 + j as f64) / (j as f64 + 1.0);
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (n as f64 + a + b + 1.0 + kf) / ((a + 1.0 + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    prefactor * sum
}

fn matching_closure_worst(rng: &mut ChaCha8Rng, complex_regime: bool) -> (f64, usize) {
    let mut worst = 0.0f64;
    let mut levels = 0;
    for _ in 0..100 {
        let v1 = rng.gen_range(0.5..20.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mag = if complex_regime {
            v1 + 0.25 + rng.gen_range(0.05..15.0)
        } else {
            rng.gen_range(0.05..(v1 + 0.2))
        };
        let c = coupling(v1, sign * mag);
        for l in spectrum(&c.derive()).unwrap() {
            levels += 1;
            let (lam, mu, a, b) = (l.wf.lambda, l.wf.mu, l.wf.alpha, l.wf.beta);
            let n = l.n as f64;
            let e = l.energy;
            for r in [
                (b - a) + 2.0 * I * mu,
                (a + b + 2.0) - (1.0 - 2.0 * lam),
                lam * (lam + 1.0) - mu * mu - v1,
                (2.0 * lam + 1.0) * mu + I * c.v2,
                lam * lam + e + n * (n + a + b + 1.0),
                e + (lam - n) * (lam - n),
            ] {
                worst = worst.max(r.norm());
            }
        }
    }
    (worst, levels)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca2f);
    let (real_worst, real_levels) = matching_closure_worst(&mut rng, false);
    let (cplx_worst, cplx_levels) = matching_closure_worst(&mut rng, true);

    let mut jacobi_worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(0..=8u32);
        let a = Complex64::new(rng.gen_range(-0.9..3.0), rng.gen_range(-2.0..2.0));
        let b = Complex64::new(rng.gen_range(-0.9..3.0), rng.gen_range(-2.0..2.0));
        let y = Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let want = jacobi_oracle(n, a, b, y);
        let got = JacobiSpec::new(n, a, b).eval(y);
        jacobi_worst = jacobi_worst.max((got - want).norm() / (1.0 + want.norm()));
    }

    let c = coupling(2.0, 6.75);
    let d = c.derive();
    let report = detect_singularity(&d, SINGULARITY_TOL);
    let mut pt_worst = 0.0f64;
    for x in GridSpec::reference().xs() {
        let plus = singularity_wavefunction(&report, &d, Sign::Plus, -x).unwrap();
        let minus = singularity_wavefunction(&report, &d, Sign::Minus, x).unwrap();
        pt_worst = pt_worst.max((plus.conj() - minus).norm());
    }

    // Schrödinger residuals of every closed-form state.
    let grid = GridSpec::reference();
    let mut residuals: Vec<(String, f64)> = Vec::new();
    for (v1, v2) in [(12.0, 6.0), (1.0, 5.0), (2.0, 6.75)] {
        let c = coupling(v1, v2);
        for l in spectrum(&c.derive()).unwrap() {
            let r = residual(|x| c.potential(x), |x| bound_state(&l, x), l.energy, &grid);
            residuals.push((format!("({v1},{v2}) n={} eps={}", l.n, l.epsilon), r));
        }
    }
    for eps in Sign::BOTH {
        let level = scarf_core::spectrum::singular_level(&report, &d, eps).unwrap();
        let r = residual(|x| c.potential(x), |x| bound_state(&level, x), level.energy, &grid);
        residuals.push((format!("(2,6.75) singular eps={eps}"), r));
    }
    for (v1, v2) in [(12.0, 6.0), (1.0, 5.0)] {
        let d = coupling(v1, v2).derive();
        for ep in Sign::BOTH {
            for em in Sign::BOTH {
                let br = solve_branch(&d, ep, em).unwrap();
                let v_ext = |x| extended_potential(&br, x).unwrap();
                let (levels, _) = partner_spectrum(&br).unwrap();
                for pl in levels {
                    let (tag, r) = match pl.origin {
                        scarf_core::susy::LevelOrigin::Mapped { n, epsilon } => {
                            let src = spectrum(&d).unwrap().into_iter().find(|l| l.n == n && l.epsilon == epsilon).unwrap();
                            let r = residual(v_ext, |x| partner_wavefunction(&br, &src, x).unwrap(), pl.energy, &grid);
                            (format!("n={n} eps={epsilon}"), r)
                        }
                        scarf_core::susy::LevelOrigin::Added => {
                            let r = residual(v_ext, |x| added_state(&br, x).unwrap(), pl.energy, &grid);
                            ("added".to_string(), r)
                        }
                    };
                    residuals.push((format!("({v1},{v2}) partner {} {tag}", br.label()), r));
                }
            }
        }
        // Exceptional-polynomial closed forms of the ++ partner.
        let br = solve_branch(&d, Sign::Plus, Sign::Plus).unwrap();
        let (levels, _) = partner_spectrum(&br).unwrap();
        for pl in levels {
            if let scarf_core::susy::LevelOrigin::Mapped { n, epsilon } = pl.origin {
                let r = residual(
                    |x| extended_potential(&br, x).unwrap(),
                    |x| partner_closed_form(&br, n, epsilon, x).unwrap(),
                    pl.energy,
                    &grid,
                );
                residuals.push((format!("({v1},{v2}) exceptional n={n} eps={epsilon}"), r));
            }
        }
    }
    let (worst_name, worst_residual) = residuals
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .cloned()
        .unwrap();
    let failing = residuals.iter().filter(|(_, r)| !(*r < 1e-6)).count();
    let original_worst = residuals
        .iter()
        .filter(|(name, _)| !name.contains("partner") && !name.contains("exceptional"))
        .map(|(_, r)| *r)
        .fold(0.0, f64::max);

    let passed = real_worst < 1e-12
        && cplx_worst < 1e-12
        && jacobi_worst < 1e-10
        && pt_worst < 1e-12
        && failing == 0;
    outcome(
        passed,
        format!(
            "matching {real_worst:.1e}/{cplx_worst:.1e} over {real_levels}/{cplx_levels} levels, \
             jacobi {jacobi_worst:.1e}, PT pair {pt_worst:.1e}, \
             residuals: original states worst {original_worst:.2e}, \
             {failing}/{} above 1e-6, worst {worst_residual:.2e} at {worst_name}",
            residuals.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let (v1, v2) = (6.0, 2.25);
    let (p, s) = (p_of(v1, v2), s_of(v1, v2));
    let ground_plus = -(p + s - 0.5).powi(2);
    let br = branch(v1, v2, Sign::Minus, Sign::Plus);
    let (_, edit) = partner_spectrum(&br).unwrap();
    let added = edit.added_level.map(|a| a.energy).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let analytic_gap = (added - ground_plus).norm();
    let note_ok = edit.degeneracy_note.is_some_and(|n| n.n == 0 && n.epsilon == Sign::Plus);

    let numeric = discrete_spectrum(|x| extended_potential(&br, x).unwrap(), &GridSpec::reference(), 8).unwrap();
    let target = Complex64::new(ground_plus, 0.0);
    let near: Vec<Complex64> = numeric.iter().copied().filter(|z| (z - target).norm() < 0.05).collect();
    let mean_gap = if near.len() == 2 {
        ((near[0] + near[1]) / 2.0 - target).norm()
    } else {
        f64::INFINITY
    };
    outcome(
        analytic_gap < 1e-9 && note_ok && near.len() == 2 && mean_gap < 1e-3,
        format!(
            "|E_added - E_0+| = {analytic_gap:.1e}, {} numeric levels within 0.05, pair-mean error {mean_gap:.2e}",
            near.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("real-regime spectrum", criterion_1),
        ("complex-regime spectrum", criterion_2),
        ("spectral singularity", criterion_3),
        ("pseudo-norm identity", criterion_4),
        ("factorization on grid", criterion_5),
        ("level deletion", criterion_6),
        ("level addition", criterion_7),
        ("partner singularity", criterion_8),
        ("property suites", criterion_9),
        ("degeneracy condition", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| outcome(false, "panicked"));
        if !result.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<24} {}  {}",
            i + 1,
            name,
            if result.passed { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
