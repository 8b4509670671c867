//! Straight-line programs: grammars in Chomsky normal form that derive
//! exactly one string.

mod forest;
mod format;

pub use forest::{AccessTrace, Side, SlpHeavyForest, Visit};
pub use format::{parse_slp, write_slp};

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Longest expansion the 64-bit length fields accept.
pub const MAX_LEN: u64 = (1 << 63) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Derives the symbol with this dense alphabet index.
    Terminal(u32),
    /// Derives the concatenation of the two referenced rules.
    Nonterminal(u32, u32),
}

/// Dense symbol numbering `0..σ` for the characters of a string.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, u32>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Alphabet> {
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &ch) in symbols.iter().enumerate() {
            if index.insert(ch, i as u32).is_some() {
                return Err(Error::NotAnSlp(format!("symbol {ch:?} listed twice")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Distinct characters of `text` in order of first occurrence.
    pub fn from_text(text: impl IntoIterator<Item = char>) -> Alphabet {
        let mut a = Alphabet::default();
        for ch in text {
            a.index.entry(ch).or_insert_with(|| {
                a.symbols.push(ch);
                (a.symbols.len() - 1) as u32
            });
        }
        a
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> char {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn index_of(&self, ch: char) -> Option<usize> {
        self.index.get(&ch).map(|&i| i as usize)
    }
}

/// A validated SLP with expansion lengths and heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp {
    rules: Vec<Rule>,
    root: usize,
    alphabet: Alphabet,
    lengths: Vec<u64>,
    heights: Vec<u32>,
    reachable: Vec<bool>,
}

impl Slp {
    /// Validates the rules: ids in range, acyclic, lengths below `2^63`.
    pub fn new(rules: Vec<Rule>, root: usize, alphabet: Alphabet) -> Result<Slp> {
        let n = rules.len();
        if n == 0 {
            return Err(Error::NotAnSlp("no rules".into()));
        }
        if root >= n {
            return Err(Error::NotAnSlp(format!("root {root} out of range")));
        }
        for (v, r) in rules.iter().enumerate() {
            match *r {
                Rule::Terminal(s) if s as usize >= alphabet.len() => {
                    return Err(Error::NotAnSlp(format!("rule {v}: symbol {s} not in alphabet")))
                }
                Rule::Nonterminal(l, r) if l as usize >= n || r as usize >= n => {
                    return Err(Error::NotAnSlp(format!("rule {v}: child out of range")))
                }
                _ => {}
            }
        }
        let order = topological_order(&rules)?;
        let mut lengths = vec![0u64; n];
        let mut heights = vec![0u32; n];
        for &v in &order {
            match rules[v] {
                Rule::Terminal(_) => {
                    lengths[v] = 1;
                    heights[v] = 1;
                }
                Rule::Nonterminal(l, r) => {
                    let (l, r) = (l as usize, r as usize);
                    lengths[v] = lengths[l]
                        .checked_add(lengths[r])
                        .filter(|&s| s <= MAX_LEN)
                        .ok_or(Error::StringTooLong)?;
                    heights[v] = 1 + heights[l].max(heights[r]);
                }
            }
        }
        let mut reachable = vec![false; n];
        reachable[root] = true;
        for &v in order.iter().rev() {
            if let (true, Rule::Nonterminal(l, r)) = (reachable[v], rules[v]) {
                reachable[l as usize] = true;
                reachable[r as usize] = true;
            }
        }
        Ok(Slp {
            rules,
            root,
            alphabet,
            lengths,
            heights,
            reachable,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    #[inline]
    pub fn rule(&self, v: usize) -> Rule {
        self.rules[v]
    }

    /// Number of rules `n`.
    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    /// `|S(v)|`.
    #[inline]
    pub fn len_of(&self, v: usize) -> u64 {
        self.lengths[v]
    }

    /// `N = |S(root)|`.
    pub fn len(&self) -> u64 {
        self.lengths[self.root]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Height of the derivation tree counted in nodes (a terminal has 1).
    pub fn height(&self) -> usize {
        self.heights[self.root] as usize
    }

    pub fn is_reachable(&self, v: usize) -> bool {
        self.reachable[v]
    }

    #[inline]
    pub fn children(&self, v: usize) -> Option<(usize, usize)> {
        match self.rules[v] {
            Rule::Nonterminal(l, r) => Some((l as usize, r as usize)),
            Rule::Terminal(_) => None,
        }
    }

    /// The whole string as symbol indices, refused beyond `max_len`.
    pub fn expand(&self, max_len: u64) -> Result<Vec<u32>> {
        if self.len() > max_len {
            return Err(Error::ExpansionRefused {
                len: self.len(),
                limit: max_len,
            });
        }
        Ok(self.extract(1, self.len()).expect("full range is valid"))
    }

    /// The whole string, refused beyond `max_len`.
    pub fn expand_string(&self, max_len: u64) -> Result<String> {
        Ok(self
            .expand(max_len)?
            .into_iter()
            .map(|s| self.alphabet.symbol(s as usize))
            .collect())
    }

    /// `S[from..=to]` (1-indexed) by a depth-first walk that skips rules
    /// outside the window.
    pub fn extract(&self, from: u64, to: u64) -> Result<Vec<u32>> {
        if from == 0 || from > to || to > self.len() {
            return Err(Error::OutOfRange {
                what: "window end",
                index: if from == 0 { 0 } else { to },
                bound: self.len(),
            });
        }
        let mut out = Vec::with_capacity((to - from + 1).min(1 << 20) as usize);
        // (rule, 0-based start of its expansion)
        let mut stack = vec![(self.root, 0u64)];
        let (lo, hi) = (from - 1, to);
        while let Some((v, start)) = stack.pop() {
            let end = start + self.lengths[v];
            if end <= lo || start >= hi {
                continue;
            }
            match self.rules[v] {
                Rule::Terminal(s) => out.push(s),
                Rule::Nonterminal(l, r) => {
                    let mid = start + self.lengths[l as usize];
                    stack.push((r as usize, mid));
                    stack.push((l as usize, start));
                }
            }
        }
        Ok(out)
    }

    /// The symbol at position `i` (1-indexed) by length-guided descent.
    pub fn symbol_at(&self, i: u64) -> Result<u32> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                what: "position",
                index: i,
                bound: self.len(),
            });
        }
        let mut v = self.root;
        let mut k = i;
        loop {
            match self.rules[v] {
                Rule::Terminal(s) => return Ok(s),
                Rule::Nonterminal(l, r) => {
                    let ll = self.lengths[l as usize];
                    if k <= ll {
                        v = l as usize;
                    } else {
                        k -= ll;
                        v = r as usize;
                    }
                }
            }
        }
    }
}

/// Children-before-parents order of all rules; fails on a cycle.
fn topological_order(rules: &[Rule]) -> Result<Vec<usize>> {
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;
    let n = rules.len();
    let mut state = vec![NEW; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, bool)> = Vec::new();
    for s in 0..n {
        if state[s] != NEW {
            continue;
        }
        stack.push((s, false));
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                state[v] = DONE;
                order.push(v);
                continue;
            }
            match state[v] {
                DONE => continue,
                OPEN => return Err(Error::NotAnSlp(format!("cycle through rule {v}"))),
                _ => {}
            }
            state[v] = OPEN;
            stack.push((v, true));
            if let Rule::Nonterminal(l, r) = rules[v] {
                for c in [r as usize, l as usize] {
                    match state[c] {
                        OPEN => return Err(Error::NotAnSlp(format!("cycle through rule {c}"))),
                        NEW => stack.push((c, false)),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{generate, GrammarRecipe};

    fn ab() -> Alphabet {
        Alphabet::new(vec!['a', 'b']).unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = Slp::new(vec![Rule::Terminal(0), Rule::Nonterminal(0, 0)], 1, ab()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.height(), 2);
        let cyc = Slp::new(vec![Rule::Nonterminal(1, 1), Rule::Nonterminal(0, 0)], 0, ab());
        assert!(matches!(cyc, Err(Error::NotAnSlp(_))));
        let selfloop = Slp::new(vec![Rule::Terminal(0), Rule::Nonterminal(1, 0)], 1, ab());
        assert!(matches!(selfloop, Err(Error::NotAnSlp(_))));
        assert!(Slp::new(vec![Rule::Terminal(5)], 0, ab()).is_err());
        assert!(Slp::new(vec![Rule::Nonterminal(0, 3)], 0, ab()).is_err());
        assert!(Slp::new(vec![], 0, ab()).is_err());
        let fib = generate(&GrammarRecipe::Fibonacci(10)).unwrap();
        assert_eq!(fib.len(), 55);
    }

    #[test]
    fn length_guard() {
        let mut rules = vec![Rule::Terminal(0)];
        for i in 0..62 {
            rules.push(Rule::Nonterminal(i, i));
        }
        let ok = Slp::new(rules.clone(), 62, ab()).unwrap();
        assert_eq!(ok.len(), 1 << 62);
        rules.push(Rule::Nonterminal(62, 62));
        assert_eq!(Slp::new(rules, 63, ab()), Err(Error::StringTooLong));
    }

    #[test]
    fn expand_examples() {
        let s = Slp::new(
            vec![Rule::Terminal(0), Rule::Nonterminal(0, 0), Rule::Nonterminal(1, 1)],
            2,
            ab(),
        )
        .unwrap();
        assert_eq!(s.expand_string(100).unwrap(), "aaaa");
        assert!(matches!(s.expand_string(3), Err(Error::ExpansionRefused { .. })));
        let f5 = generate(&GrammarRecipe::Fibonacci(5)).unwrap();
        assert_eq!(f5.expand_string(100).unwrap(), "abaab");
        assert_eq!(f5.extract(2, 4).unwrap(), vec![1, 0, 0]);
        assert!(f5.extract(0, 3).is_err() && f5.extract(3, 6).is_err() && f5.extract(4, 3).is_err());
        for i in 1..=5 {
            assert_eq!(f5.symbol_at(i).unwrap(), f5.expand(10).unwrap()[i as usize - 1]);
        }
    }

    #[test]
    fn unreachable_rules_are_tolerated() {
        let s = Slp::new(
            vec![Rule::Terminal(0), Rule::Terminal(1), Rule::Nonterminal(0, 0)],
            2,
            ab(),
        )
        .unwrap();
        assert!(!s.is_reachable(1));
        assert_eq!(s.expand_string(10).unwrap(), "aa");
    }

    #[test]
    fn alphabet_order() {
        let a = Alphabet::from_text("banana".chars());
        assert_eq!(a.symbols(), &['b', 'a', 'n']);
        assert_eq!(a.index_of('n'), Some(2));
        assert_eq!(a.index_of('x'), None);
        assert!(Alphabet::new(vec!['a', 'a']).is_err());
    }
}
