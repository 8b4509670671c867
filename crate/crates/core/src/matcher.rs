//! Minimal subsequence occurrences.
//!
//! A window `[b, e]` of `S` is an occurrence of `P` when `P` is a
//! subsequence of `S[b..=e]`, and it is minimal when no proper subwindow is
//! an occurrence. Minimal windows are found with `ls`/`lp` queries only.

use crate::error::{Error, Result};
use crate::lsq::LsIndex;
use crate::slp::Alphabet;

/// Largest text the plain-scan oracle accepts.
pub const ORACLE_MAX_LEN: usize = 1_000_000;

/// A minimal occurrence, 1-indexed and inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: u64,
    pub end: u64,
}

/// Maps a pattern onto symbol indices. `Ok(None)` means some character of
/// the pattern is not in the alphabet, so the pattern cannot occur.
pub fn encode_pattern(alphabet: &Alphabet, pattern: &str) -> Result<Option<Vec<usize>>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(pattern.chars().map(|ch| alphabet.index_of(ch)).collect())
}

/// Streams the minimal occurrences of a pattern in increasing order.
#[derive(Debug)]
pub struct MinimalMatches<'a> {
    index: &'a LsIndex,
    pattern: Vec<usize>,
    prev: u64,
    done: bool,
    calls: u64,
}

impl<'a> MinimalMatches<'a> {
    pub fn new(index: &'a LsIndex, pattern: Vec<usize>) -> Result<MinimalMatches<'a>> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let sigma = index.slp().sigma();
        let done = pattern.iter().any(|&c| c >= sigma);
        Ok(MinimalMatches {
            index,
            pattern,
            prev: 0,
            done,
            calls: 0,
        })
    }

    /// `ls` and `lp` calls issued so far.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }
}

impl Iterator for MinimalMatches<'_> {
    type Item = Occurrence;

    fn next(&mut self) -> Option<Occurrence> {
        if self.done {
            return None;
        }
        let mut end = self.prev;
        for &c in &self.pattern {
            self.calls += 1;
            match self.index.ls(end, c).expect("position within the string") {
                Some(j) => end = j,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
        let mut start = end;
        for &c in self.pattern.iter().rev().skip(1) {
            self.calls += 1;
            start = self
                .index
                .lp(start, c)
                .expect("position within the string")
                .expect("a forward embedding exists");
        }
        self.prev = start;
        Some(Occurrence { start, end })
    }
}

/// Minimal occurrences of a text pattern.
pub fn match_minimal<'a>(index: &'a LsIndex, pattern: &str) -> Result<MinimalMatches<'a>> {
    match encode_pattern(index.slp().alphabet(), pattern)? {
        Some(p) => MinimalMatches::new(index, p),
        None => {
            let mut m = MinimalMatches::new(index, vec![0])?;
            m.done = true;
            Ok(m)
        }
    }
}

/// Single left-to-right scan over an uncompressed string, keeping for each
/// pattern prefix the latest start of an embedding seen so far.
pub fn oracle_match_minimal(text: &[u32], pattern: &[u32]) -> Result<Vec<Occurrence>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if text.len() > ORACLE_MAX_LEN {
        return Err(Error::ExpansionRefused {
            len: text.len() as u64,
            limit: ORACLE_MAX_LEN as u64,
        });
    }
    let m = pattern.len();
    let mut latest: Vec<Option<u64>> = vec![None; m];
    let mut last_start = 0u64;
    let mut out = Vec::new();
    for (j, &ch) in text.iter().enumerate() {
        let pos = j as u64 + 1;
        for k in (0..m).rev() {
            if pattern[k] == ch {
                let s = if k == 0 { Some(pos) } else { latest[k - 1] };
                if s.is_some() {
                    latest[k] = s;
                }
            }
        }
        if pattern[m - 1] == ch {
            if let Some(s) = latest[m - 1] {
                if s > last_start {
                    out.push(Occurrence { start: s, end: pos });
                    last_start = s;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) fn brute_match_minimal(text: &[u32], pattern: &[u32]) -> Vec<Occurrence> {
    // earliest end of an embedding starting at or after b
    let end_from = |b: usize| -> Option<usize> {
        let mut k = 0;
        for (j, &ch) in text.iter().enumerate().skip(b) {
            if ch == pattern[k] {
                k += 1;
                if k == pattern.len() {
                    return Some(j);
                }
            }
        }
        None
    };
    let mut out = Vec::new();
    for (b, &ch) in text.iter().enumerate() {
        if ch != pattern[0] {
            continue;
        }
        if let Some(e) = end_from(b) {
            if end_from(b + 1).is_none_or(|e2| e2 > e) {
                out.push(Occurrence {
                    start: b as u64 + 1,
                    end: e as u64 + 1,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{generate, ingest_text, GrammarRecipe};
    use crate::synth;
    use crate::treecolor::Flavor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pairs(text: &str, pattern: &str) -> Vec<(u64, u64)> {
        let idx = LsIndex::new(ingest_text(text).unwrap(), Flavor::LogQuery);
        match_minimal(&idx, pattern).unwrap().map(|o| (o.start, o.end)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(pairs("abcabcabc", "ac"), [(1, 3), (4, 6), (7, 9)]);
        assert_eq!(pairs("abcabcabc", "aa"), [(1, 4), (4, 7)]);
        assert_eq!(pairs("abaab", "b"), [(2, 2), (5, 5)]);
        assert_eq!(pairs("abaab", "ab"), [(1, 2), (4, 5)]);
        assert_eq!(pairs("abaab", "ba"), [(2, 3)]);
        assert_eq!(pairs("abaab", "abc"), []);
        assert_eq!(pairs("abaab", "bbb"), []);
        let idx = LsIndex::new(ingest_text("ab").unwrap(), Flavor::LogQuery);
        assert!(matches!(match_minimal(&idx, ""), Err(Error::EmptyPattern)));
    }

    #[test]
    fn fibonacci_golden() {
        let idx = LsIndex::new(generate(&GrammarRecipe::Fibonacci(5)).unwrap(), Flavor::ConstQuery);
        let got: Vec<_> = match_minimal(&idx, "ab").unwrap().map(|o| (o.start, o.end)).collect();
        assert_eq!(got, [(1, 2), (4, 5)]);
    }

    #[test]
    fn oracles_agree_with_index() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for round in 0..40 {
            let sigma = [2, 3, 4, 26][round % 4];
            let len = rng.random_range(1..400);
            let alpha = synth::alphabet(sigma);
            let text = synth::random_text(&mut rng, len, &alpha);
            let slp = ingest_text(&text).unwrap();
            let s = slp.expand(u64::MAX).unwrap();
            let idx = LsIndex::new(slp.clone(), if round % 2 == 0 { Flavor::LogQuery } else { Flavor::ConstQuery });
            for _ in 0..20 {
                let m = rng.random_range(1..6);
                let pat: String = (0..m).map(|_| alpha[rng.random_range(0..sigma)]).collect();
                let Some(enc) = encode_pattern(slp.alphabet(), &pat).unwrap() else { continue };
                let enc32: Vec<u32> = enc.iter().map(|&c| c as u32).collect();
                let want = brute_match_minimal(&s, &enc32);
                assert_eq!(oracle_match_minimal(&s, &enc32).unwrap(), want);
                let mut it = MinimalMatches::new(&idx, enc).unwrap();
                let got: Vec<_> = it.by_ref().collect();
                assert_eq!(got, want, "{text:?} {pat:?}");
                assert!(it.calls() <= 2 * m as u64 * (got.len() as u64 + 1));
            }
        }
    }

    #[test]
    fn oracle_refuses_huge_text() {
        let big = vec![0u32; ORACLE_MAX_LEN + 1];
        assert!(oracle_match_minimal(&big, &[0]).is_err());
    }
}
