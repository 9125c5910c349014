use criterion::{black_box, criterion_group, criterion_main, Criterion, Throughput};

use chemlex::graph::{canonical_key, kekulize, parse_smiles, standardize_corpus};
use chemlex::tokenize::{ais_tokens, char_tokens, train_bpe};
use chemlex::validator::{validate, Mode};

fn bench_pipeline(c: &mut Criterion) {
    let corpus = chemlex_bench::corpus(2000);
    let parsed: Vec<_> = corpus.iter().map(|s| parse_smiles(s).unwrap()).collect();

    let mut group = c.benchmark_group("per_molecule");
    group.throughput(Throughput::Elements(corpus.len() as u64));

    group.bench_function("parse", |b| {
        b.iter(|| {
            for s in &corpus {
                black_box(parse_smiles(s).unwrap());
            }
        })
    });
    group.bench_function("validate_full", |b| {
        b.iter(|| {
            for s in &corpus {
                black_box(validate(s, Mode::Full));
            }
        })
    });
    group.bench_function("kekulize", |b| {
        b.iter(|| {
            for g in &parsed {
                black_box(kekulize(g).unwrap());
            }
        })
    });
    group.bench_function("canonical_key", |b| {
        b.iter(|| {
            for g in &parsed {
                black_box(canonical_key(g).unwrap());
            }
        })
    });
    group.bench_function("tokenize_char", |b| {
        b.iter(|| {
            for s in &corpus {
                black_box(char_tokens(s));
            }
        })
    });
    group.bench_function("tokenize_ais", |b| {
        b.iter(|| {
            for s in &corpus {
                black_box(ais_tokens(s).unwrap());
            }
        })
    });
    group.finish();

    let mut corpus_group = c.benchmark_group("per_corpus");
    corpus_group.sample_size(10);
    corpus_group.bench_function("standardize_2k", |b| {
        b.iter(|| black_box(standardize_corpus(&corpus)))
    });
    corpus_group.bench_function("train_bpe_2k_vocab200", |b| {
        b.iter(|| black_box(train_bpe(&corpus, 200).unwrap()))
    });
    corpus_group.finish();
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
