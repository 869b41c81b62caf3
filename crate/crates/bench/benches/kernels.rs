//! Benchmarks for the hot kernels: the butterfly transform, one full
//! register iteration, plane-model trajectories, a stochastic sweep
//! point, and the closed-form matrix power.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use grover_noise::experiments::run_sweep;
use grover_noise::reduced::{closed_form_power, simulate_reduced, AngleSchedule};
use grover_noise::statevector::StateVector;
use grover_noise::{ErrorModel, HadamardGateSpec, PhaseAngles, ReducedParams, SweepConfig};

fn walsh_hadamard(c: &mut Criterion) {
    let n = 14;
    let spec = HadamardGateSpec::ideal(n).unwrap();
    let state = StateVector::basis_state(n, 0).unwrap();
    c.bench_function("walsh_hadamard_n14", |b| {
        b.iter(|| {
            let mut s = state.clone();
            s.apply_walsh_hadamard(black_box(&spec)).unwrap();
            s
        })
    });
}

fn full_iteration(c: &mut Criterion) {
    let n = 12;
    let spec = HadamardGateSpec::ideal(n).unwrap();
    let angles = PhaseAngles::ideal();
    let marked = (1 << n) - 1;
    let mut state = StateVector::basis_state(n, 0).unwrap();
    state.apply_walsh_hadamard(&spec).unwrap();
    c.bench_function("full_iteration_n12", |b| {
        b.iter(|| {
            let mut s = state.clone();
            s.grover_iteration(black_box(marked), &angles, &spec).unwrap();
            s
        })
    });
}

fn reduced_trajectory(c: &mut Criterion) {
    let params = ReducedParams::new(20).unwrap();
    let angles = PhaseAngles::for_mismatch(1e-2).unwrap();
    let j_max = params.default_j_max(angles.delta);
    c.bench_function("reduced_trajectory_n20", |b| {
        b.iter(|| {
            simulate_reduced(
                &AngleSchedule::Constant(black_box(angles)),
                &params,
                j_max,
            )
            .unwrap()
        })
    });
}

fn stochastic_sweep_point(c: &mut Criterion) {
    let mut config = SweepConfig::new(ErrorModel::Em2 { s: 1e-2 }, vec![14]);
    config.samples_per_n = 32;
    c.bench_function("em2_sweep_point_n14_x32", |b| {
        b.iter(|| run_sweep(black_box(&config)).unwrap())
    });
}

fn matrix_power(c: &mut Criterion) {
    c.bench_function("closed_form_power", |b| {
        b.iter(|| closed_form_power(black_box(1e-2), black_box(1e-3), black_box(12_345)))
    });
}

criterion_group!(
    kernels,
    walsh_hadamard,
    full_iteration,
    reduced_trajectory,
    stochastic_sweep_point,
    matrix_power
);
criterion_main!(kernels);
