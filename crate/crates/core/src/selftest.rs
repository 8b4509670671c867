//! Oracle-equivalence checks runnable from the command line.
//!
//! Each case draws a corpus text, writes it to a file, compresses it,
//! round-trips the grammar through its text format and compares matching,
//! `ls` and `lp` on the grammar against plain scans of the original text.

use crate::error::Result;
use crate::ingest::ingest_text;
use crate::lsq::LsIndex;
use crate::matcher::{match_minimal, oracle_match_minimal};
use crate::slp::{parse_slp, write_slp};
use crate::synth;
use crate::treecolor::{naive_firstcolor, naive_lastcolor, ColorQueryEngine, EngineKind, Flavor, PackedColorTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub files: usize,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 50 {
            self.failures.push(what());
        }
    }
}

const MAX_TEXT: usize = 3000;
const PATTERNS_PER_FILE: usize = 12;

/// Runs `cases` corpus files plus a color-engine sweep.
pub fn run(seed: u64, cases: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dir = tempfile::tempdir()?;
    let mut report = Report::default();
    for k in 0..cases {
        let text = synth::corpus_text(&mut rng, k, MAX_TEXT);
        let src = dir.path().join(format!("case{k}.txt"));
        let dst = dir.path().join(format!("case{k}.slp"));
        fs::write(&src, &text)?;
        let read = fs::read_to_string(&src)?;
        let slp = ingest_text(&read)?;
        fs::write(&dst, write_slp(&slp))?;
        let back = parse_slp(&fs::read_to_string(&dst)?)?;
        report.files += 1;
        report.check(back == slp, || format!("case {k}: grammar file does not parse back"));
        let decoded = back.expand_string(u64::MAX)?;
        report.check(decoded == text, || format!("case {k}: decompression differs"));

        let chars: Vec<char> = text.chars().collect();
        let plain: Vec<u32> = chars
            .iter()
            .map(|&ch| back.alphabet().index_of(ch).expect("alphabet covers the text") as u32)
            .collect();
        for flavor in [Flavor::LogQuery, Flavor::ConstQuery] {
            let idx = LsIndex::new(back.clone(), flavor);
            for _ in 0..PATTERNS_PER_FILE {
                let m = [1, 2, 3, 5][rng.random_range(0..4)];
                let pattern: String = (0..m).map(|_| chars[rng.random_range(0..chars.len())]).collect();
                let enc: Vec<u32> = pattern
                    .chars()
                    .map(|ch| back.alphabet().index_of(ch).unwrap() as u32)
                    .collect();
                let want = oracle_match_minimal(&plain, &enc)?;
                let got: Vec<_> = match_minimal(&idx, &pattern)?.collect();
                report.check(got == want, || format!("case {k} ({flavor}): match {pattern:?} differs from the scan"));
            }
            for _ in 0..PATTERNS_PER_FILE {
                let n = plain.len() as u64;
                let c = rng.random_range(0..back.sigma());
                let i = rng.random_range(0..=n);
                let want = (i as usize..plain.len()).find(|&j| plain[j] as usize == c).map(|j| j as u64 + 1);
                report.check(idx.ls(i, c)? == want, || format!("case {k} ({flavor}): ls({i}, {c})"));
                let i = rng.random_range(1..=n + 1);
                let want = (0..i as usize - 1).rev().find(|&j| plain[j] as usize == c).map(|j| j as u64 + 1);
                report.check(idx.lp(i, c)? == want, || format!("case {k} ({flavor}): lp({i}, {c})"));
            }
        }
    }
    color_sweep(&mut rng, cases.div_ceil(10), &mut report);
    Ok(report)
}

fn color_sweep(rng: &mut ChaCha8Rng, trees: usize, report: &mut Report) {
    for k in 0..trees {
        let n = rng.random_range(1..400);
        let sigma = [3, 30, 64, 200][k % 4];
        let tree = synth::random_shape(rng, n);
        let density = rng.random_range(0.0..0.3);
        let colors = synth::random_colors(rng, n, sigma, density);
        let t = PackedColorTree::new(tree, sigma, colors).expect("generated colors fit");
        let engines: Vec<_> = EngineKind::ALL.iter().map(|&e| (e, ColorQueryEngine::build(&t, e))).collect();
        let parents = t.tree().parents().to_vec();
        for _ in 0..300 {
            let v = rng.random_range(0..n);
            let c = rng.random_range(0..sigma);
            let mut u = v;
            for _ in 0..rng.random_range(0..n) {
                match parents[u] {
                    Some(p) => u = p,
                    None => break,
                }
            }
            let incl = rng.random_bool(0.5);
            let first = naive_firstcolor(&t, v, c).expect("valid query");
            let last = naive_lastcolor(&t, u, v, c, incl).expect("valid query");
            for (kind, e) in &engines {
                report.check(e.firstcolor(v, c).ok() == Some(first), || format!("tree {k}: {kind} firstcolor({v}, {c})"));
                report.check(e.lastcolor(u, v, c, incl).ok() == Some(last), || {
                    format!("tree {k}: {kind} lastcolor({u}, {v}, {c}, {incl})")
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = run(11, 14).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.files, 14);
        assert!(r.checks > 14 * 2 * PATTERNS_PER_FILE as u64);
    }
}
