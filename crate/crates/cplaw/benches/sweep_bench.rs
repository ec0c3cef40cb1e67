//! Parallel vs sequential sweep drivers on two workloads: the cheap
//! bound evaluations (envelope minimization + variational search) and
//! the expensive shooting eigenvalues. Run with and without the
//! `parallel` feature to compare; with the feature off both benches
//! measure the same sequential path.

use cplaw::domain::QuantumNumbers;
use cplaw::radial::SolverSettings;
use cplaw::sweep::{
    run_sweep, run_sweep_sequential, tasks_for, PointTask, Spacing, SweepSpec, ValueKind,
};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn states() -> Vec<QuantumNumbers> {
    vec![
        QuantumNumbers::new(1, 0).unwrap(),
        QuantumNumbers::new(1, 1).unwrap(),
        QuantumNumbers::new(1, 2).unwrap(),
        QuantumNumbers::new(2, 0).unwrap(),
    ]
}

fn bound_tasks() -> Vec<PointTask> {
    let spec = SweepSpec::new(1.0, 0.01, 100.0, 16, Spacing::Log, states()).unwrap();
    tasks_for(
        &spec,
        &[ValueKind::EL, ValueKind::EU, ValueKind::ELS, ValueKind::EC],
    )
}

fn solver_tasks() -> Vec<PointTask> {
    let spec = SweepSpec::new(1.0, 0.1, 10.0, 6, Spacing::Log, states()).unwrap();
    tasks_for(&spec, &[ValueKind::EX])
}

fn bench_sweeps(c: &mut Criterion) {
    let settings = SolverSettings::default();

    let tasks = bound_tasks();
    let mut group = c.benchmark_group("bounds_sweep");
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(run_sweep(black_box(&tasks), &settings)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(run_sweep_sequential(black_box(&tasks), &settings)))
    });
    group.finish();

    let tasks = solver_tasks();
    let mut group = c.benchmark_group("eigenvalue_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(run_sweep(black_box(&tasks), &settings)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(run_sweep_sequential(black_box(&tasks), &settings)))
    });
    group.finish();
}

criterion_group!(benches, bench_sweeps);
criterion_main!(benches);
