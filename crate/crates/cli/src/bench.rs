//! `slpseq bench`: per-query latency percentiles as CSV.

use slpseq::ingest::{generate, GrammarRecipe};
use slpseq::slp::SlpHeavyForest;
use slpseq::{Flavor, LsIndex, LsStats, MinimalMatches, Slp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::time::Instant;

pub const HEADER: &str = "recipe,n,N,sigma,flavor,op,p50_ns,p99_ns,engine_queries_per_op";

/// Occurrences enumerated per timed `match` operation.
const MATCH_OCCURRENCES: usize = 8;

struct Row {
    op: &'static str,
    times: Vec<u64>,
    queries: u64,
}

impl Row {
    fn new(op: &'static str, n: usize) -> Row {
        Row {
            op,
            times: Vec::with_capacity(n),
            queries: 0,
        }
    }

    fn time<T>(&mut self, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let r = std::hint::black_box(f());
        self.times.push(t.elapsed().as_nanos() as u64);
        r
    }

    fn percentile(&self, p: f64) -> u64 {
        let mut v = self.times.clone();
        v.sort_unstable();
        let k = ((v.len() as f64 - 1.0) * p).round() as usize;
        v.get(k).copied().unwrap_or(0)
    }
}

pub fn run(recipe: &GrammarRecipe, queries: usize, seed: u64, out: &mut impl Write) -> slpseq::Result<()> {
    let slp = generate(recipe)?;
    let queries = queries.max(1);
    writeln!(out, "{HEADER}")?;
    let access = bench_access(&slp, queries, seed);
    for flavor in [Flavor::LogQuery, Flavor::ConstQuery] {
        let idx = LsIndex::new(slp.clone(), flavor);
        let rows = [
            bench_ls(&idx, queries, seed, false),
            bench_ls(&idx, queries, seed, true),
            bench_match(&idx, queries.div_ceil(10), seed),
        ];
        for r in std::iter::once(&access).chain(&rows) {
            writeln!(
                out,
                "{recipe},{},{},{},{flavor},{},{},{},{:.2}",
                slp.num_rules(),
                slp.len(),
                slp.sigma(),
                r.op,
                r.percentile(0.5),
                r.percentile(0.99),
                r.queries as f64 / r.times.len().max(1) as f64,
            )?;
        }
    }
    Ok(())
}

fn bench_access(slp: &Slp, queries: usize, seed: u64) -> Row {
    let forest = SlpHeavyForest::build(slp);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = Row::new("access", queries);
    for _ in 0..queries {
        let i = rng.random_range(1..=slp.len());
        row.time(|| forest.access(slp, i).expect("in range").symbol);
    }
    row
}

fn bench_ls(idx: &LsIndex, queries: usize, seed: u64, backward: bool) -> Row {
    let slp = idx.slp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut row = Row::new(if backward { "lp" } else { "ls" }, queries);
    for _ in 0..queries {
        let c = rng.random_range(0..slp.sigma());
        let mut st = LsStats::default();
        if backward {
            let i = rng.random_range(1..=slp.len());
            row.time(|| idx.lp_with_stats(i, c, &mut st).expect("in range"));
        } else {
            let i = rng.random_range(0..slp.len());
            row.time(|| idx.ls_with_stats(i, c, &mut st).expect("in range"));
        }
        row.queries += st.engine_queries();
    }
    row
}

fn bench_match(idx: &LsIndex, queries: usize, seed: u64) -> Row {
    let slp = idx.slp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xface);
    let mut row = Row::new("match", queries);
    for _ in 0..queries {
        let m = rng.random_range(1..=5);
        let pattern: Vec<usize> = (0..m).map(|_| rng.random_range(0..slp.sigma())).collect();
        let mut it = MinimalMatches::new(idx, pattern).expect("nonempty pattern");
        row.time(|| it.by_ref().take(MATCH_OCCURRENCES).count());
        row.queries += it.calls();
    }
    row
}
