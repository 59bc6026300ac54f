use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qwild::exec::Exec;
use qwild::harness::bench::run_grid;
use qwild::harness::{run_lemma_suite, BenchCase, CaseBias, GenSpec, Plant};
use qwild::qsim::SimConfig;

fn grid() -> Vec<BenchCase> {
    (0..32)
        .map(|seed| BenchCase {
            spec: GenSpec {
                plant: Plant::MatchAt(100),
                case_bias: CaseBias::ForceCase2,
                ..GenSpec::new(1 << 12, 3 << 10, 4, 64, seed)
            },
            cfg: SimConfig {
                seed,
                ..SimConfig::default()
            },
        })
        .collect()
}

fn exec_modes(c: &mut Criterion) {
    let grid = grid();
    let mut g = c.benchmark_group("run_grid");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &e| b.iter(|| run_grid(&grid, e, false).unwrap()),
        );
    }
    g.finish();

    let mut g = c.benchmark_group("lemma_suite");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &e| b.iter(|| run_lemma_suite(4, 2000, 7, e).unwrap()),
        );
    }
    g.finish();
}

criterion_group!(benches, exec_modes);
criterion_main!(benches);
