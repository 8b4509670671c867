use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::Rng;
use slpseq::ingest::{generate, GrammarRecipe};
use slpseq::treecolor::{ColorQueryEngine, EngineKind};
use slpseq::{Flavor, LsIndex};
use slpseq_bench::{ancestor_pairs, colored_tree, rng};
use std::hint::black_box;

fn color_queries(c: &mut Criterion) {
    let t = colored_tree(4096, 64, 9);
    let queries = ancestor_pairs(&t, 1024, 10);
    let mut g = c.benchmark_group("lastcolor");
    for kind in EngineKind::ALL {
        let e = ColorQueryEngine::build(&t, kind);
        g.bench_function(BenchmarkId::from_parameter(kind), |b| {
            b.iter(|| {
                queries
                    .iter()
                    .filter_map(|&(u, v, col)| e.lastcolor(u, v, col, true).unwrap())
                    .count()
            })
        });
    }
    g.finish();
}

fn slp_queries(c: &mut Criterion) {
    let slp = generate(&GrammarRecipe::Fibonacci(80)).unwrap();
    let mut r = rng(3);
    let positions: Vec<u64> = (0..256).map(|_| r.random_range(1..slp.len())).collect();
    let mut g = c.benchmark_group("fibonacci80");
    for flavor in [Flavor::LogQuery, Flavor::ConstQuery] {
        let idx = LsIndex::new(slp.clone(), flavor);
        g.bench_function(BenchmarkId::new("ls", flavor), |b| {
            b.iter(|| positions.iter().filter_map(|&i| idx.ls(black_box(i), 1).unwrap()).count())
        });
        g.bench_function(BenchmarkId::new("lp", flavor), |b| {
            b.iter(|| positions.iter().filter_map(|&i| idx.lp(black_box(i), 0).unwrap()).count())
        });
        g.bench_function(BenchmarkId::new("match_first_16", flavor), |b| {
            b.iter(|| slpseq::match_minimal(&idx, "abba").unwrap().take(16).count())
        });
    }
    g.bench_function("access", |b| {
        b.iter(|| positions.iter().map(|&i| slp.symbol_at(black_box(i)).unwrap()).sum::<u32>())
    });
    g.finish();
}

criterion_group!(benches, color_queries, slp_queries);
criterion_main!(benches);
