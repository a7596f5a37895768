use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dexcheck::catalog::gaussian_balance;
use dexcheck::cosmo::{fit_powerlaw, sweep, CosmoField};
use dexcheck::dimension::Dimension;
use dexcheck::dsl::{parse_catalog, parse_expression};
use dexcheck::engine::{evaluate, run_catalog};
use dexcheck::quantity::Quantity;
use dexcheck::registry::Registry;
use dexcheck::BUILTIN_REL;

fn bench_parse(c: &mut Criterion) {
    c.bench_function("parse_builtin_catalog", |b| {
        b.iter(|| parse_catalog(black_box(BUILTIN_REL)).unwrap())
    });
}

fn bench_check(c: &mut Criterion) {
    let registry = Registry::load_defaults();
    let catalog = dexcheck::builtin_catalog();
    c.bench_function("run_builtin_catalog", |b| {
        b.iter(|| run_catalog(black_box(&catalog), black_box(&registry)))
    });
}

fn bench_evaluate(c: &mut Criterion) {
    let registry = Registry::load_defaults();
    let expr = parse_expression("G * m_pi^3 * c / hbar^2").unwrap();
    c.bench_function("evaluate_hubble_expression", |b| {
        b.iter(|| evaluate(black_box(&expr), black_box(&registry)).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let registry = Registry::load_defaults();
    c.bench_function("sweep_1000_states_with_fits", |b| {
        b.iter(|| {
            let series = sweep(1e20, 1e120, 1000, black_box(&registry)).unwrap();
            fit_powerlaw(&series, CosmoField::Age, CosmoField::Rho).unwrap()
        })
    });
}

fn bench_gaussian(c: &mut Criterion) {
    let cutoff = Quantity::new(1.0, Dimension::LENGTH);
    c.bench_function("gaussian_balance_quadrature", |b| {
        b.iter(|| gaussian_balance(black_box(cutoff)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_parse,
    bench_check,
    bench_evaluate,
    bench_sweep,
    bench_gaussian
);
criterion_main!(benches);
