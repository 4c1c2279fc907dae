use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use scarf_core::numeric::{discrete_spectrum, transmission_scan, SampledPotential};
use scarf_core::susy::{extended_potential, solve_branch};
use scarf_core::{Complex64, CouplingParams, GridSpec, JacobiSpec, Sign};

fn jacobi(c: &mut Criterion) {
    let spec = JacobiSpec::new(8, Complex64::new(-2.5, 1.9), Complex64::new(-2.5, -1.9));
    let ys: Vec<Complex64> = (0..201).map(|i| Complex64::new(-1.0 + 0.01 * i as f64, 0.0)).collect();
    c.bench_function("jacobi_eval_deg8_201pts", |b| {
        b.iter(|| ys.iter().map(|&y| spec.eval(black_box(y))).sum::<Complex64>())
    });
}

fn spectrum(c: &mut Criterion) {
    let params = CouplingParams::new(12.0, 6.0).unwrap();
    let grid = GridSpec::new(10.0, 1001).unwrap();
    c.bench_function("discrete_spectrum_n1001", |b| {
        b.iter(|| discrete_spectrum(|x| params.potential(x), black_box(&grid), 6).unwrap())
    });
}

fn scattering(c: &mut Criterion) {
    let params = CouplingParams::new(2.0, 6.75).unwrap();
    let grid = GridSpec::new(20.0, 4001).unwrap();
    let sp = SampledPotential::new(|x| params.potential(x), &grid);
    let ks: Vec<f64> = (0..16).map(|i| 0.8 + 0.03 * i as f64).collect();
    c.bench_function("transmission_scan_16k", |b| {
        b.iter(|| transmission_scan(black_box(&sp), &ks).unwrap())
    });
}

fn partner_potential(c: &mut Criterion) {
    let params = CouplingParams::new(12.0, 6.0).unwrap();
    let branch = solve_branch(&params.derive(), Sign::Plus, Sign::Plus).unwrap();
    let grid = GridSpec::new(20.0, 4001).unwrap();
    c.bench_function("extended_potential_n4001", |b| {
        b.iter(|| grid.xs().map(|x| extended_potential(&branch, x).unwrap()).sum::<Complex64>())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = jacobi, spectrum, scattering, partner_potential
}
criterion_main!(benches);
