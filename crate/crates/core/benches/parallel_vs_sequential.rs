use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fernkit_core::borel::{envelope_witness, verify_envelope_with};
use fernkit_core::localmodel::tangent_sweep;
use fernkit_core::par::{self, Parallelism};
use fernkit_core::phimod::{example4, refinement_table, weak_admissibility_with};
use fernkit_core::sampling::{random_invertible, trial_rng};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn envelope_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("envelope_trials_n4");
    group.sample_size(10);
    let gs: Vec<_> = (0..16).map(|t| random_invertible(&mut trial_rng(1, t), 4, 5)).collect();
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                par::map(mode, &gs, |g| {
                    let w = envelope_witness(g).unwrap();
                    verify_envelope_with(g, &w, Parallelism::Sequential).unwrap().verified
                })
            })
        });
    }
    group.finish();
}

fn tangent(c: &mut Criterion) {
    let mut group = c.benchmark_group("tangent_sweep_n4");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| tangent_sweep(4, mode).unwrap()));
    }
    group.finish();
}

fn phimod_tables(c: &mut Criterion) {
    let d = example4();
    let mut group = c.benchmark_group("example4");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::new("refinement_table", name), |b| {
            b.iter(|| refinement_table(&d, mode).unwrap())
        });
        group.bench_function(BenchmarkId::new("weak_admissibility", name), |b| {
            b.iter(|| weak_admissibility_with(&d, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, envelope_trials, tangent, phimod_tables);
criterion_main!(benches);
