use std::hint::black_box;

use cohen_core::lcs::pairing_matrix_with;
use cohen_core::tensor::check_lie_equals_gamma_cap_primitives;
use cohen_core::tensor::rigidity::natural_maps;
use cohen_core::verify::{run, Suite};
use cohen_core::{Execution, FreeModule, GroupElement, LinearMapMatrix, RingSpec, Shape};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn theta_matrix(c: &mut Criterion) {
    let shape = Shape::cohen(RingSpec::Z, 4).unwrap();
    let g = GroupElement::parse(shape, "[x1,x2^2] [x3,x4,x1] x2^-3 [x4,x2]").unwrap();
    let module = FreeModule::new(RingSpec::Z, 3).unwrap();
    let mut group = c.benchmark_group("theta_matrix_n4_dim3");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| LinearMapMatrix::of_theta(black_box(g.canon()), module, 4, exec).unwrap())
        });
    }
    group.finish();
}

fn pairing(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairing_n6_t3");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pairing_matrix_with(6, 1, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn lie_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("lie_check_n5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_lie_equals_gamma_cap_primitives(RingSpec::Z, 5, exec).unwrap())
        });
    }
    group.finish();
}

fn rigidity(c: &mut Criterion) {
    let mut group = c.benchmark_group("natural_maps_d3_n3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| natural_maps(RingSpec::Z, 3, 3, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_suites");
    group.sample_size(10);
    for suite in [Suite::Commutator, Suite::Coalg] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(suite.name(), name), &suite, |b, &s| {
                b.iter(|| run(s, 0, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, theta_matrix, pairing, lie_check, rigidity, suites);
criterion_main!(benches);
