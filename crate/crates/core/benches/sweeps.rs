//! Verdict sweep and height comparability on one worker thread versus the
//! default pool. Build with `--no-default-features` to time the fully
//! sequential code path instead.

use arithdyn::experiments::{run_experiment, ExperimentConfig};
use arithdyn::heights::{height_comparability_constants, TorusPoint};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP: &str = r#"{
  "seed": 5,
  "n_max": 16,
  "maps": [
    {"id": "square", "map": {"kind": "projective", "polys": ["x^2", "y^2", "z^2"]}, "random_points": 6},
    {"id": "fib", "map": {"kind": "monomial", "A": [[2, 1], [1, 1]]}, "random_points": 12},
    {"id": "cube", "map": {"kind": "monomial", "A": [[3, 1, 0], [1, 1, 1], [0, 1, 2]]}, "random_points": 12}
  ]
}"#;

fn torus_samples(count: usize) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..count)
        .map(|_| {
            let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(2..1_000_000)).collect();
            TorusPoint::from_i64s(&coords).expect("nonzero")
        })
        .collect()
}

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().expect("pool");
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    vec![("single".into(), single), (format!("default-{}", default.current_num_threads()), default)]
}

fn sweep(c: &mut Criterion) {
    let cfg = ExperimentConfig::from_json_str(SWEEP).expect("config");
    let mut group = c.benchmark_group("verdict_sweep");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| pool.install(|| run_experiment(&cfg).expect("sweep")))
        });
    }
    group.finish();
}

fn comparability(c: &mut Criterion) {
    let samples = torus_samples(20_000);
    let mut group = c.benchmark_group("height_comparability");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(&name), |b| {
            b.iter(|| pool.install(|| height_comparability_constants(&samples).expect("nonempty")))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, comparability);
criterion_main!(benches);
