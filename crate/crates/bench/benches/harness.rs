use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use mceval_bench::data_dir;
use mceval_core::{
    load_instances, load_task_suite, render_cf, render_mcf, score_batch, MockBackend, Mt19937,
    RenderOptions, ScoringBackend, TaskSuite,
};

fn suite() -> TaskSuite {
    load_task_suite(&data_dir().join("config/tasks.json"), true).unwrap()
}

fn bench_sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampler");
    group.bench_function("sample_10042_of_1000_set_branch", |b| {
        b.iter(|| {
            let mut rng = Mt19937::seeded(1234);
            black_box(rng.sample_indices(10042, 1000).unwrap())
        })
    });
    group.bench_function("sample_2376_of_1000_pool_branch", |b| {
        b.iter(|| {
            let mut rng = Mt19937::seeded(1234);
            black_box(rng.sample_indices(2376, 1000).unwrap())
        })
    });
    group.finish();
}

fn bench_render(c: &mut Criterion) {
    let suite = suite();
    let task = suite.get("arc_challenge").unwrap();
    let instances = load_instances(task).unwrap();
    let mut group = c.benchmark_group("render");
    group.bench_function("cf_five_shot", |b| {
        b.iter(|| black_box(render_cf(task, &instances[1], 5).unwrap()))
    });
    group.bench_function("mcf_five_shot", |b| {
        b.iter(|| black_box(render_mcf(task, &instances[1], 5).unwrap()))
    });
    group.finish();
}

fn bench_scoring(c: &mut Criterion) {
    let suite = suite();
    let task = suite.get("arc_challenge").unwrap();
    let instances = load_instances(task).unwrap();
    let backend = MockBackend::new("bench", false);
    let backend_ref: &dyn ScoringBackend = &backend;
    let opts = RenderOptions {
        num_shots: 5,
        include_cf: true,
        include_mcf: true,
        include_unconditional: true,
        counter: None,
    };
    let requests: Vec<_> = instances[..64]
        .iter()
        .flat_map(|inst| {
            let rendered = mceval_core::render_instance(task, inst, &opts).unwrap();
            rendered
                .cf
                .into_iter()
                .chain(rendered.unconditional)
                .chain(rendered.mcf)
                .collect::<Vec<_>>()
        })
        .collect();
    let mut group = c.benchmark_group("scoring");
    group.bench_function("mock_batch_64_instances", |b| {
        b.iter_batched(
            || requests.clone(),
            |reqs| black_box(score_batch(backend_ref, &reqs, 1).unwrap()),
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

fn bench_aggregate(c: &mut Criterion) {
    let mut rng = Mt19937::seeded(9);
    let matrix: Vec<Vec<f64>> = (0..40)
        .map(|_| {
            (0..4)
                .map(|_| rng.randbelow(1000).unwrap() as f64 / 10.0)
                .collect()
        })
        .collect();
    c.bench_function("aggregate/win_percentage_40_models", |b| {
        b.iter(|| black_box(mceval_core::win_percentage(&matrix).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_sampler,
    bench_render,
    bench_scoring,
    bench_aggregate
);
criterion_main!(benches);
