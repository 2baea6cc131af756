//! `decide` on generated instances with one worker against the global pool.
//!
//! Built without the `parallel` feature both variants run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vardec_cli::gen::{generate, Family, Params};
use vardec_core::vardec::{decide, Config};

fn instances() -> Vec<(String, vardec_cli::format::Problem)> {
    let cases: [(Family, &[(&str, i64)]); 4] = [
        (Family::Grid2d, &[("n", 4), ("k", 16)]),
        (Family::Grid3d, &[("k", 2)]),
        (Family::Add, &[("n", 3)]),
        (Family::PropDnf, &[("vars", 3), ("terms", 3)]),
    ];
    cases
        .iter()
        .map(|(family, given)| {
            let given: Vec<(String, i64)> = given.iter().map(|(k, v)| (k.to_string(), *v)).collect();
            let params = Params::resolve(*family, &given).unwrap();
            let label = format!("{family}{}", given.iter().map(|(k, v)| format!("_{k}{v}")).collect::<String>());
            (label, generate(*family, &params, 1).unwrap())
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(10);
    for (label, p) in instances() {
        let partition = p.partition.clone().unwrap();
        let n = p.vars.len();
        for (mode, jobs) in [("sequential", 1), ("parallel", 0)] {
            let cfg = Config::default().with_jobs(jobs);
            group.bench_with_input(BenchmarkId::new(mode, &label), &p, |b, p| {
                b.iter(|| decide(n, &p.formula, &partition, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
