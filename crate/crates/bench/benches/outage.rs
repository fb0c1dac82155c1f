use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use junction_core::laplace::{exponent_derivative_with, ExponentMethod};
use junction_core::{
    laplace_with_derivatives, outage_pair, placement_from_cartesian, InterferenceSpec, LinkState, OutageOptions,
    RoadAxis, Scenario, Scheme, Simulator,
};

fn laplace(c: &mut Criterion) {
    let mut group = c.benchmark_group("laplace");
    let receiver = placement_from_cartesian(60.0, 10.0);
    for alpha in [2.0, 4.0] {
        let spec = InterferenceSpec::new(RoadAxis::X, LinkState::Los, receiver, 0.01, 0.8, alpha);
        group.bench_function(format!("order4_alpha{alpha}"), |b| {
            b.iter(|| laplace_with_derivatives(black_box(&spec), black_box(250.0), 4).unwrap())
        });
    }
    let spec = InterferenceSpec::new(RoadAxis::X, LinkState::Los, receiver, 0.01, 0.8, 2.0);
    group.bench_function("quadrature_alpha2", |b| {
        b.iter(|| exponent_derivative_with(black_box(&spec), 250.0, 0, ExponentMethod::Quadrature).unwrap())
    });
    group.finish();
}

fn analytic(c: &mut Criterion) {
    let mut group = c.benchmark_group("analytic");
    let opts = OutageOptions::default();
    let sc = Scenario::default();
    for scheme in [Scheme::Noma, Scheme::Oma] {
        group.bench_function(scheme.name(), |b| {
            b.iter(|| outage_pair(black_box(&sc), scheme, &opts).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("monte_carlo");
    group.sample_size(10);
    let sim = Simulator::new(&Scenario::default()).unwrap();
    group.bench_function("noma_1000_trials", |b| {
        b.iter(|| sim.run(Scheme::Noma, 1000, black_box(5)).unwrap())
    });
    group.bench_function("single_realization", |b| {
        b.iter(|| sim.sample(black_box(5), black_box(17)))
    });
    group.finish();
}

criterion_group!(benches, laplace, analytic, monte_carlo);
criterion_main!(benches);
