//! Building SLPs from text and from parameterized grammar families.

use crate::error::{Error, Result};
use crate::slp::{Alphabet, Rule, Slp, MAX_LEN};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// A pairing round that removes fewer than this fraction of the symbols
/// ends the Re-Pair phase.
const MIN_ROUND_GAIN: f64 = 0.25;

/// Longest expansion a `random` grammar may derive.
pub const RANDOM_LEN_CAP: u64 = 1 << 40;

/// Grammar compresses a UTF-8 string.
pub fn ingest_text(text: &str) -> Result<Slp> {
    ingest_chars(text.chars().collect())
}

/// Grammar compresses raw bytes; byte `b` becomes the character `U+00bb`.
pub fn ingest_bytes(bytes: &[u8]) -> Result<Slp> {
    ingest_chars(bytes.iter().map(|&b| char::from(b)).collect())
}

fn ingest_chars(chars: Vec<char>) -> Result<Slp> {
    if chars.is_empty() {
        return Err(Error::EmptyInput);
    }
    let alphabet = Alphabet::from_text(chars.iter().copied());
    let seq: Vec<u32> = chars
        .iter()
        .map(|&c| alphabet.index_of(c).expect("alphabet covers the text") as u32)
        .collect();
    let mut g = Builder::new(alphabet.len());
    let seq = g.repair(seq);
    let root = g.balance(seq);
    Slp::new(g.rules, root as usize, alphabet)
}

/// Rule store that never creates the same pair twice.
struct Builder {
    rules: Vec<Rule>,
    pairs: HashMap<(u32, u32), u32>,
}

impl Builder {
    fn new(sigma: usize) -> Builder {
        Builder {
            rules: (0..sigma as u32).map(Rule::Terminal).collect(),
            pairs: HashMap::new(),
        }
    }

    fn pair(&mut self, l: u32, r: u32) -> u32 {
        *self.pairs.entry((l, r)).or_insert_with(|| {
            self.rules.push(Rule::Nonterminal(l, r));
            (self.rules.len() - 1) as u32
        })
    }

    /// Batched Re-Pair: every round replaces, in order of decreasing
    /// frequency, all non-overlapping occurrences of each repeated pair.
    fn repair(&mut self, mut seq: Vec<u32>) -> Vec<u32> {
        while seq.len() >= 2 {
            let mut positions: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
            for (i, w) in seq.windows(2).enumerate() {
                positions.entry((w[0], w[1])).or_default().push(i as u32);
            }
            let mut ranked: Vec<_> = positions.into_iter().filter(|(_, p)| p.len() >= 2).collect();
            if ranked.is_empty() {
                break;
            }
            ranked.sort_unstable_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
            let mut claimed = vec![false; seq.len()];
            let mut replace = vec![u32::MAX; seq.len()];
            for ((l, r), pos) in ranked {
                let mut hits = Vec::new();
                for p in pos {
                    let p = p as usize;
                    if !claimed[p] && !claimed[p + 1] {
                        claimed[p] = true;
                        claimed[p + 1] = true;
                        hits.push(p);
                    }
                }
                if hits.len() >= 2 {
                    let id = self.pair(l, r);
                    for p in hits {
                        replace[p] = id;
                    }
                } else {
                    for p in hits {
                        claimed[p] = false;
                        claimed[p + 1] = false;
                    }
                }
            }
            let before = seq.len();
            let mut next = Vec::with_capacity(before);
            let mut i = 0;
            while i < before {
                if replace[i] != u32::MAX {
                    next.push(replace[i]);
                    i += 2;
                } else {
                    next.push(seq[i]);
                    i += 1;
                }
            }
            seq = next;
            if ((before - seq.len()) as f64) < MIN_ROUND_GAIN * before as f64 {
                break;
            }
        }
        seq
    }

    /// Pairs neighbours level by level until one symbol is left.
    fn balance(&mut self, mut seq: Vec<u32>) -> u32 {
        while seq.len() > 1 {
            seq = seq
                .chunks(2)
                .map(|c| if c.len() == 2 { self.pair(c[0], c[1]) } else { c[0] })
                .collect();
        }
        seq[0]
    }
}

/// Parameterized grammar families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrammarRecipe {
    /// `F_1 = b`, `F_2 = a`, `F_k = F_{k-1} F_{k-2}`; `k` rules.
    Fibonacci(u32),
    /// `a^(2^k)` by repeated squaring; `k + 1` rules.
    Power { symbol: char, k: u32 },
    /// Random text of length `len` over `sigma` letters, paired into a
    /// balanced binary grammar.
    Balanced { len: usize, sigma: usize, seed: u64 },
    /// Random text of length `len` over `sigma` letters, compressed by
    /// Re-Pair.
    RePair { len: usize, sigma: usize, seed: u64 },
    /// `sigma` terminals followed by nonterminals over random earlier
    /// rules, `rules` in total; lengths stay below [`RANDOM_LEN_CAP`].
    Random { rules: usize, sigma: usize, seed: u64 },
}

impl GrammarRecipe {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidRecipe(m.into()));
        match *self {
            GrammarRecipe::Fibonacci(k) if !(2..=90).contains(&k) => bad("fibonacci needs 2 <= k <= 90"),
            GrammarRecipe::Power { k, .. } if k > 62 => bad("power needs k <= 62"),
            GrammarRecipe::Balanced { len, sigma, .. } | GrammarRecipe::RePair { len, sigma, .. }
                if len == 0 || sigma == 0 =>
            {
                bad("length and sigma must be at least 1")
            }
            GrammarRecipe::Random { rules, sigma, .. } if sigma == 0 || rules < sigma => {
                bad("random needs sigma >= 1 and rules >= sigma")
            }
            _ => Ok(()),
        }
    }
}

impl std::str::FromStr for GrammarRecipe {
    type Err = Error;

    /// `fibonacci:K`, `power:K` or `power:C:K`, `balanced:LEN:SIGMA[:SEED]`,
    /// `repair:LEN:SIGMA[:SEED]`, `random:RULES:SIGMA[:SEED]`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidRecipe(s.to_string());
        let num = |i: usize| -> Result<u64> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        let seed = || if parts.len() > 3 { num(3) } else { Ok(0) };
        let recipe = match (parts[0], parts.len()) {
            ("fibonacci" | "fib", 2) => GrammarRecipe::Fibonacci(num(1)? as u32),
            ("power", 2) => GrammarRecipe::Power { symbol: 'a', k: num(1)? as u32 },
            ("power", 3) => {
                let mut cs = parts[1].chars();
                let symbol = cs.next().filter(|_| cs.next().is_none()).ok_or_else(bad)?;
                GrammarRecipe::Power { symbol, k: num(2)? as u32 }
            }
            ("balanced", 3 | 4) => GrammarRecipe::Balanced { len: num(1)? as usize, sigma: num(2)? as usize, seed: seed()? },
            ("repair", 3 | 4) => GrammarRecipe::RePair { len: num(1)? as usize, sigma: num(2)? as usize, seed: seed()? },
            ("random", 3 | 4) => GrammarRecipe::Random { rules: num(1)? as usize, sigma: num(2)? as usize, seed: seed()? },
            _ => return Err(bad()),
        };
        recipe.validate()?;
        Ok(recipe)
    }
}

impl std::fmt::Display for GrammarRecipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrammarRecipe::Fibonacci(k) => write!(f, "fibonacci:{k}"),
            GrammarRecipe::Power { symbol, k } => write!(f, "power:{symbol}:{k}"),
            GrammarRecipe::Balanced { len, sigma, seed } => write!(f, "balanced:{len}:{sigma}:{seed}"),
            GrammarRecipe::RePair { len, sigma, seed } => write!(f, "repair:{len}:{sigma}:{seed}"),
            GrammarRecipe::Random { rules, sigma, seed } => write!(f, "random:{rules}:{sigma}:{seed}"),
        }
    }
}

/// Builds the SLP a recipe describes; identical recipes give identical SLPs.
pub fn generate(recipe: &GrammarRecipe) -> Result<Slp> {
    recipe.validate()?;
    match *recipe {
        GrammarRecipe::Fibonacci(k) => {
            let mut rules = vec![Rule::Terminal(1), Rule::Terminal(0)];
            for i in 2..k {
                rules.push(Rule::Nonterminal(i - 1, i - 2));
            }
            Slp::new(rules, k as usize - 1, Alphabet::new(vec!['a', 'b'])?)
        }
        GrammarRecipe::Power { symbol, k } => {
            let mut rules = vec![Rule::Terminal(0)];
            rules.extend((0..k).map(|i| Rule::Nonterminal(i, i)));
            Slp::new(rules, k as usize, Alphabet::new(vec![symbol])?)
        }
        GrammarRecipe::Balanced { len, sigma, seed } => {
            let text = seeded_text(len, sigma, seed);
            let alphabet = Alphabet::from_text(text.iter().copied());
            let mut g = Builder::new(alphabet.len());
            let seq = text
                .iter()
                .map(|&c| alphabet.index_of(c).expect("alphabet covers the text") as u32)
                .collect();
            let root = g.balance(seq);
            Slp::new(g.rules, root as usize, alphabet)
        }
        GrammarRecipe::RePair { len, sigma, seed } => ingest_chars(seeded_text(len, sigma, seed)),
        GrammarRecipe::Random { rules: n, sigma, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rules: Vec<Rule> = (0..sigma as u32).map(Rule::Terminal).collect();
            let mut lens = vec![1u64; sigma];
            while rules.len() < n {
                let m = rules.len();
                // Bias toward recent rules so the grammar is deep.
                let pick = |rng: &mut ChaCha8Rng| {
                    if rng.random_bool(0.7) {
                        rng.random_range(m.saturating_sub(8)..m)
                    } else {
                        rng.random_range(0..m)
                    }
                };
                let (mut l, mut r) = (pick(&mut rng), pick(&mut rng));
                while lens[l] + lens[r] > RANDOM_LEN_CAP.min(MAX_LEN) {
                    l = rng.random_range(0..sigma);
                    r = rng.random_range(0..m);
                }
                lens.push(lens[l] + lens[r]);
                rules.push(Rule::Nonterminal(l as u32, r as u32));
            }
            let alphabet = Alphabet::new(crate::synth::alphabet(sigma))?;
            Slp::new(rules, n - 1, alphabet)
        }
    }
}

fn seeded_text(len: usize, sigma: usize, seed: u64) -> Vec<char> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    crate::synth::random_text(&mut rng, len, &crate::synth::alphabet(sigma))
        .chars()
        .collect()
}
