use bilocale_core::atlas::{self, CorpusSpec};
use bilocale_core::{Execution, Frame, RawFrame};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sublocales(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_sublocales");
    for (name, raw) in [("boolean16", RawFrame::powerset(4)), ("chain12", RawFrame::chain(12))] {
        let f = Frame::validate(&raw).unwrap();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &f, |b, f| {
                b.iter(|| f.enumerate_sublocales_with(black_box(exec)).unwrap())
            });
        }
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let spec = CorpusSpec {
        frames: 20,
        bilocales: 40,
        bispaces: 20,
        topobilocales: 20,
        ..CorpusSpec::default()
    };
    let corpus = atlas::random_corpus(1, &spec);
    let mut group = c.benchmark_group("verify_theorems");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| b.iter(|| atlas::verify_theorems(black_box(&corpus), Some(1), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, sublocales, verify);
criterion_main!(benches);
