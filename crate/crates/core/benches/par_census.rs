//! Compares the sequential and data-parallel census engines on fixed seeds,
//! plus a batch-evaluation microbench of the quartic form.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fmz_core::random::random_element;
use fmz_core::{run_census, CensusOptions, ExecMode, JordanKind};

fn census_opts(mode: ExecMode, kind: JordanKind, samples: Option<u64>) -> CensusOptions {
    CensusOptions {
        kind,
        height: 1,
        samples,
        seed: 42,
        mode,
        max_elements: u64::MAX,
    }
}

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_diag3_exhaustive_h1");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| run_census(&census_opts(ExecMode::Sequential, JordanKind::Diag3, None)).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| run_census(&census_opts(ExecMode::Parallel, JordanKind::Diag3, None)).unwrap())
    });
    group.finish();

    let mut group = c.benchmark_group("census_h3o_sampled_2k");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            run_census(&census_opts(ExecMode::Sequential, JordanKind::H3O, Some(2_000))).unwrap()
        })
    });
    group.bench_function("parallel", |b| {
        b.iter(|| {
            run_census(&census_opts(ExecMode::Parallel, JordanKind::H3O, Some(2_000))).unwrap()
        })
    });
    group.finish();
}

fn bench_quartic(c: &mut Criterion) {
    let mut group = c.benchmark_group("quartic_form");
    for kind in [JordanKind::Diag3, JordanKind::H3B, JordanKind::H3O] {
        group.bench_function(kind.name(), |b| {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            b.iter_batched(
                || random_element(&mut rng, kind, 8),
                |x| x.quartic_qprime(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, bench_census, bench_quartic);
criterion_main!(benches);
