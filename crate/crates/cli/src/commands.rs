use std::cell::RefCell;

use num_complex::Complex64;
use serde_json::{json, Value};

use scarf_core::numeric::{discrete_spectrum, singularity_scan, transmission_scan, SampledPotential};
use scarf_core::spectrum::{detect_singularity, singular_level, singularity_locus, spectrum, SINGULARITY_TOL};
use scarf_core::susy::{
    added_state, extended_potential, partner_singularity, partner_spectrum, partner_wavefunction, solve_branch,
    BranchKind, PartnerBranch,
};
use scarf_core::verify::verify;
use scarf_core::wavefunction::bound_state;
use scarf_core::{CouplingParams, Error, GridSpec, LevelRecord, Sign};

use crate::args::{
    BranchSpec, Command, Common, Format, PartnerArgs, ScatterArgs, SingularityArgs, SpectrumArgs, VerifyArgs,
    WavefunctionArgs,
};
use crate::output::{csv_table, envelope, field};
use crate::CliError;

pub fn run(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Spectrum(a) => spectrum_cmd(a),
        Command::Wavefunction(a) => wavefunction_cmd(a),
        Command::Singularity(a) => singularity_cmd(a),
        Command::Partner(a) => partner_cmd(a),
        Command::Scatter(a) => scatter_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn coupling(c: &Common) -> Result<CouplingParams, CliError> {
    Ok(CouplingParams::new(c.v1, c.v2)?)
}

fn grid(c: &Common) -> Result<GridSpec, CliError> {
    GridSpec::new(c.domain, c.points).map_err(|e| CliError::Usage(e.to_string()))
}

fn inputs(command: &str, c: &Common, extra: Value) -> Value {
    let mut v = json!({
        "command": command,
        "v1": c.v1,
        "v2": c.v2,
        "domain": c.domain,
        "points": c.points,
    });
    if let (Some(map), Value::Object(more)) = (v.as_object_mut(), extra) {
        map.extend(more);
    }
    v
}

fn branch_label(b: &BranchSpec) -> String {
    format!("{}{}", b.eps_plus, b.eps_minus)
}

fn cx(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn spectrum_cmd(a: &SpectrumArgs) -> Result<String, CliError> {
    let c = coupling(&a.common)?;
    let d = c.derive();
    let levels = spectrum(&d)?;
    let report = detect_singularity(&d, SINGULARITY_TOL);
    let g = grid(&a.common)?;
    let numeric = if a.numeric {
        Some(discrete_spectrum(|x| c.potential(x), &g, levels.len() + 4)?)
    } else {
        None
    };
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut results = json!({
                "regime": d.regime.name(),
                "derived": d,
                "levels": levels,
                "singularity": report,
            });
            if let Some(num) = numeric {
                results["numeric"] = Value::Array(num.into_iter().map(cx).collect());
            }
            Ok(envelope(&inputs("spectrum", &a.common, json!({"numeric": a.numeric})), &results)?)
        }
        Format::Csv => {
            let rows = levels.iter().map(|l| {
                vec![
                    l.n.to_string(),
                    i8::from(l.epsilon).to_string(),
                    field(l.energy.re),
                    field(l.energy.im),
                    field(l.wf.lambda.re),
                    field(l.wf.lambda.im),
                    field(l.wf.mu.re),
                    field(l.wf.mu.im),
                ]
            });
            Ok(csv_table(
                &["n", "epsilon", "energy_re", "energy_im", "lambda_re", "lambda_im", "mu_re", "mu_im"],
                rows,
            )?)
        }
    }
}

/// Level (n, ε), taking the singular level when n sits on the locus.
fn find_level(c: &CouplingParams, n: u32, eps: Sign) -> Result<LevelRecord, CliError> {
    let d = c.derive();
    let report = detect_singularity(&d, SINGULARITY_TOL);
    if report.n_star == Some(n) {
        return Ok(singular_level(&report, &d, eps)?);
    }
    spectrum(&d)?
        .into_iter()
        .find(|l| l.n == n && l.epsilon == eps)
        .ok_or_else(|| CliError::Core(Error::Domain(format!("no bound state with n = {n}, epsilon = {eps}"))))
}

fn wavefunction_cmd(a: &WavefunctionArgs) -> Result<String, CliError> {
    let c = coupling(&a.common)?;
    let g = grid(&a.common)?;
    let d = c.derive();
    let (samples, energy) = match a.branch {
        None => {
            let level = find_level(&c, a.n, a.epsilon)?;
            let s: Vec<(f64, Complex64)> = g.xs().map(|x| (x, bound_state(&level, x))).collect();
            (s, level.energy)
        }
        Some(b) => {
            let br = solve_branch(&d, b.eps_plus, b.eps_minus)?;
            if a.added {
                let s = g.xs().map(|x| Ok((x, added_state(&br, x)?))).collect::<Result<Vec<_>, Error>>()?;
                (s, br.factorization_energy)
            } else {
                let level = find_level(&c, a.n, a.epsilon)?;
                let s = g
                    .xs()
                    .map(|x| Ok((x, partner_wavefunction(&br, &level, x)?)))
                    .collect::<Result<Vec<_>, Error>>()?;
                (s, level.energy)
            }
        }
    };
    match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(csv_table(
            &["x", "re_psi", "im_psi", "abs_psi"],
            samples
                .iter()
                .map(|(x, p)| vec![field(*x), field(p.re), field(p.im), field(p.norm())]),
        )?),
        Format::Json => {
            let extra = json!({
                "n": a.n,
                "epsilon": a.epsilon,
                "branch": a.branch.as_ref().map(branch_label),
                "added": a.added,
            });
            let results = json!({
                "energy": cx(energy),
                "samples": samples.iter().map(|(x, p)| json!({"x": x, "psi": cx(*p)})).collect::<Vec<_>>(),
            });
            Ok(envelope(&inputs("wavefunction", &a.common, extra), &results)?)
        }
    }
}

fn singularity_cmd(a: &SingularityArgs) -> Result<String, CliError> {
    let c = coupling(&a.common)?;
    let g = grid(&a.common)?;
    let d = c.derive();
    let report = detect_singularity(&d, SINGULARITY_TOL);
    let mut scan_rows: Vec<Value> = Vec::new();
    let mut locus = Vec::new();
    if a.scan {
        let n = a.n.or(report.n_star).ok_or_else(|| {
            CliError::Usage("--scan needs --n when the couplings are not on a singularity locus".into())
        })?;
        let k_floor = 2.0 * std::f64::consts::PI / g.half_width * 1.01;
        let window = (a.k_min.unwrap_or(k_floor), a.k_max.unwrap_or(3.0));
        if !(window.1 > window.0) {
            return Err(CliError::Usage(format!("empty k window [{}, {}]", window.0, window.1)));
        }
        locus = singularity_locus(n, (a.v1_min, a.v1_max), a.steps)?;
        let curve: Vec<CouplingParams> = locus
            .iter()
            .filter(|p| p.valid)
            .map(|p| CouplingParams::new(p.v1, p.v2))
            .collect::<Result<_, _>>()?;
        for point in singularity_scan(&curve, window, &g)? {
            let q2 = point.params.derive().q.map(|q| q * q);
            scan_rows.push(json!({
                "v1": point.params.v1,
                "v2": point.params.v2,
                "e_star": q2,
                "k_peak": point.k_peak,
                "k_peak_squared": point.k_peak * point.k_peak,
                "peak_height": point.peak_height,
                "wronskian_ratio": point.wronskian_ratio,
            }));
        }
    }
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let extra = json!({
                "scan": a.scan,
                "n": a.n,
                "v1_min": a.v1_min,
                "v1_max": a.v1_max,
                "steps": a.steps,
            });
            let mut results = json!({ "report": report });
            if a.scan {
                results["locus"] = serde_json::to_value(&locus)?;
                results["peaks"] = Value::Array(scan_rows);
            }
            Ok(envelope(&inputs("singularity", &a.common, extra), &results)?)
        }
        Format::Csv if a.scan => {
            let keys = ["v1", "v2", "e_star", "k_peak", "k_peak_squared", "peak_height", "wronskian_ratio"];
            let rows = scan_rows.iter().map(|r| {
                keys.iter()
                    .map(|k| r[*k].as_f64().map(field).unwrap_or_default())
                    .collect()
            });
            Ok(csv_table(&keys, rows)?)
        }
        Format::Csv => Ok(csv_table(
            &["is_singular", "n_star", "e_star"],
            [vec![
                report.is_singular.to_string(),
                report.n_star.map(|n| n.to_string()).unwrap_or_default(),
                report.e_star.map(field).unwrap_or_default(),
            ]],
        )?),
    }
}

fn selected_branches(a: &PartnerArgs) -> Vec<BranchSpec> {
    match a.branch {
        Some(b) => vec![b],
        None => Sign::BOTH
            .iter()
            .flat_map(|&p| Sign::BOTH.iter().map(move |&m| BranchSpec { eps_plus: p, eps_minus: m }))
            .collect(),
    }
}

fn partner_entry(br: &PartnerBranch, xs: &[f64]) -> Result<(Value, Vec<Option<Complex64>>), CliError> {
    let (levels, edit) = partner_spectrum(br)?;
    let potential: Vec<Option<Complex64>> = xs.iter().map(|&x| extended_potential(br, x).ok()).collect();
    let singularity = if br.kind == BranchKind::ComplexNonPT && br.eps_plus == Sign::Plus && br.eps_minus == Sign::Plus {
        Some(partner_singularity(br, &br.derived)?)
    } else {
        None
    };
    let entry = json!({
        "branch": br.label(),
        "kind": br.kind,
        "a": cx(br.a),
        "b": cx(br.b),
        "c": cx(br.c),
        "factorization_energy": cx(br.factorization_energy),
        "primed_v1": cx(br.primed_v1()),
        "primed_v2": cx(br.primed_v2()),
        "spectrum": levels,
        "edit": edit,
        "singularity": singularity,
        "potential": xs.iter().zip(&potential).map(|(x, v)| json!({"x": x, "v": v.map(cx)})).collect::<Vec<_>>(),
    });
    Ok((entry, potential))
}

fn partner_cmd(a: &PartnerArgs) -> Result<String, CliError> {
    let c = coupling(&a.common)?;
    let g = grid(&a.common)?;
    if a.stride == 0 {
        return Err(CliError::Usage("--stride must be positive".into()));
    }
    let d = c.derive();
    let xs: Vec<f64> = g.xs().step_by(a.stride).collect();
    let mut entries = Vec::new();
    let mut columns: Vec<(String, Vec<Option<Complex64>>)> = Vec::new();
    for b in selected_branches(a) {
        let label = branch_label(&b);
        match solve_branch(&d, b.eps_plus, b.eps_minus) {
            Ok(br) => {
                let (entry, potential) = partner_entry(&br, &xs)?;
                entries.push(entry);
                columns.push((label, potential));
            }
            Err(Error::SingularBranch) => {
                entries.push(json!({"branch": label, "error": Error::SingularBranch.to_string()}));
                columns.push((label, vec![None; xs.len()]));
            }
            Err(e) => return Err(e.into()),
        }
    }
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let extra = json!({
                "branch": a.branch.as_ref().map(branch_label),
                "stride": a.stride,
            });
            Ok(envelope(&inputs("partner", &a.common, extra), &json!({ "branches": entries }))?)
        }
        Format::Csv => {
            let mut header = vec!["x".to_string()];
            for (label, _) in &columns {
                header.push(format!("re_v_{label}"));
                header.push(format!("im_v_{label}"));
            }
            let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows = xs.iter().enumerate().map(|(i, x)| {
                let mut row = vec![field(*x)];
                for (_, col) in &columns {
                    match col[i] {
                        Some(v) => {
                            row.push(field(v.re));
                            row.push(field(v.im));
                        }
                        None => {
                            row.push("NaN".into());
                            row.push("NaN".into());
                        }
                    }
                }
                row
            });
            Ok(csv_table(&header_refs, rows)?)
        }
    }
}

fn scatter_cmd(a: &ScatterArgs) -> Result<String, CliError> {
    let c = coupling(&a.common)?;
    let g = grid(&a.common)?;
    if a.k_steps < 2 || !(a.k_max > a.k_min) {
        return Err(CliError::Usage(format!(
            "need k-min < k-max and at least 2 k-steps, got [{}, {}] with {}",
            a.k_min, a.k_max, a.k_steps
        )));
    }
    let ks: Vec<f64> = (0..a.k_steps)
        .map(|i| a.k_min + (a.k_max - a.k_min) * i as f64 / (a.k_steps - 1) as f64)
        .collect();
    let sp = match a.branch {
        None => SampledPotential::new(|x| c.potential(x), &g),
        Some(b) => {
            let br = solve_branch(&c.derive(), b.eps_plus, b.eps_minus)?;
            let failure = RefCell::new(None);
            let sp = SampledPotential::new(
                |x| {
                    extended_potential(&br, x).unwrap_or_else(|e| {
                        failure.borrow_mut().get_or_insert(e);
                        Complex64::new(f64::NAN, f64::NAN)
                    })
                },
                &g,
            );
            if let Some(e) = failure.into_inner() {
                return Err(e.into());
            }
            sp
        }
    };
    let results = transmission_scan(&sp, &ks)?;
    match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => Ok(csv_table(
            &["k", "re_t", "im_t", "abs_t", "wronskian_ratio"],
            results.iter().map(|r| {
                vec![
                    field(r.k),
                    field(r.transmission.re),
                    field(r.transmission.im),
                    field(r.transmission.norm()),
                    field(r.wronskian_ratio),
                ]
            }),
        )?),
        Format::Json => {
            let peak = results
                .iter()
                .max_by(|x, y| x.transmission.norm().total_cmp(&y.transmission.norm()))
                .map(|r| json!({"k": r.k, "k_squared": r.k * r.k, "abs_t": r.transmission.norm()}));
            let extra = json!({
                "k_min": a.k_min,
                "k_max": a.k_max,
                "k_steps": a.k_steps,
                "branch": a.branch.as_ref().map(branch_label),
            });
            Ok(envelope(
                &inputs("scatter", &a.common, extra),
                &json!({"points": results, "sampled_peak": peak}),
            )?)
        }
    }
}

fn verify_cmd(a: &VerifyArgs) -> Result<String, CliError> {
    let c = coupling(&a.common)?;
    let g = grid(&a.common)?;
    let report = verify(&c, &g)?;
    match a.common.format.unwrap_or(Format::Json) {
        Format::Json => Ok(envelope(&inputs("verify", &a.common, json!({})), &report)?),
        Format::Csv => Ok(csv_table(
            &["name", "status", "value", "tolerance", "note"],
            report.checks.iter().map(|ch| {
                vec![
                    ch.name.clone(),
                    serde_json::to_value(ch.status)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default(),
                    ch.value.map(field).unwrap_or_default(),
                    ch.tolerance.map(field).unwrap_or_default(),
                    ch.note.clone().unwrap_or_default(),
                ]
            }),
        )?),
    }
}
