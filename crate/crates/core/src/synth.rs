//! Seeded generators for trees, color sets and texts used by tests,
//! the self-test and the benchmarks.

use crate::bitpack::BitString;
use crate::tree::Tree;
use rand::Rng;

/// Random recursive tree: node `v` picks a parent uniformly in `0..v`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    let parent: Vec<_> = (0..n)
        .map(|v| (v > 0).then(|| rng.random_range(0..v)))
        .collect();
    Tree::from_parents(&parent).expect("random tree is valid")
}

/// A tree of depth about `n/2`: parents are picked among the last few nodes.
pub fn random_deep_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    let parent: Vec<_> = (0..n)
        .map(|v| (v > 0).then(|| rng.random_range(v.saturating_sub(3)..v)))
        .collect();
    Tree::from_parents(&parent).expect("random tree is valid")
}

/// A spine `0..spine` with `legs` leaves hanging off each spine node.
pub fn caterpillar(spine: usize, legs: usize) -> Tree {
    let mut parent: Vec<Option<usize>> = (0..spine).map(|v| v.checked_sub(1)).collect();
    for s in 0..spine {
        parent.extend(std::iter::repeat_n(Some(s), legs));
    }
    Tree::from_parents(&parent).expect("caterpillar is valid")
}

/// Random tree of one of the shapes above.
pub fn random_shape<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    match rng.random_range(0..4) {
        0 => random_deep_tree(rng, n),
        1 => {
            let spine = rng.random_range(1..=n);
            let legs = (n - spine) / spine;
            let t = caterpillar(spine, legs);
            if t.len() == n {
                t
            } else {
                random_tree(rng, n)
            }
        }
        _ => random_tree(rng, n),
    }
}

/// Per-node color sets over `sigma` colors. Each node is colored with
/// probability `density`, and a colored node receives a few random colors.
pub fn random_colors<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    sigma: usize,
    density: f64,
) -> Vec<BitString> {
    (0..n)
        .map(|_| {
            let mut b = BitString::zeros(sigma);
            if sigma > 0 && rng.random_bool(density) {
                let k = rng.random_range(1..=sigma.min(4));
                for _ in 0..k {
                    b.set(rng.random_range(0..sigma), true);
                }
            }
            b
        })
        .collect()
}

/// Uniform random text over the first `sigma` letters of `alphabet`.
pub fn random_text<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: &[char]) -> String {
    (0..len)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect()
}

/// `sigma` distinct printable characters, starting at `a` for small sizes.
pub fn alphabet(sigma: usize) -> Vec<char> {
    if sigma <= 26 {
        ('a'..='z').take(sigma).collect()
    } else {
        (0..sigma as u32)
            .map(|i| char::from_u32(0x100 + i).expect("valid scalar"))
            .collect()
    }
}

/// A random block repeated until `len` characters are produced.
pub fn periodic_text<R: Rng + ?Sized>(rng: &mut R, len: usize, period: usize, alphabet: &[char]) -> String {
    let block: Vec<char> = random_text(rng, period.max(1), alphabet).chars().collect();
    block.iter().cycle().take(len).collect()
}

/// Words drawn from a small vocabulary, separated by spaces.
pub fn prose<R: Rng + ?Sized>(rng: &mut R, len: usize) -> String {
    const WORDS: &[&str] = &[
        "the", "grammar", "derives", "a", "string", "of", "length", "and", "every",
        "rule", "pairs", "two", "symbols", "into", "one", "query", "walks", "down",
        "heavy", "paths", "while", "colors", "mark", "ancestors", "in", "tree",
    ];
    let mut s = String::with_capacity(len + 12);
    while s.len() < len {
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(WORDS[rng.random_range(0..WORDS.len())]);
    }
    s.truncate(len.max(1));
    s
}

/// Runs of a single character with random lengths.
pub fn runs_text<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: &[char]) -> String {
    let mut s = String::with_capacity(len);
    let mut n = 0;
    while n < len {
        let ch = alphabet[rng.random_range(0..alphabet.len())];
        let k = rng.random_range(1..=64).min(len - n);
        s.extend(std::iter::repeat_n(ch, k));
        n += k;
    }
    s
}

/// Corpus entry `k` of up to `max_len` characters. Entries cycle through
/// uniform random text over 2, 4, 26 and 256 symbols, periodic text,
/// word-based prose and single-character runs.
pub fn corpus_text<R: Rng + ?Sized>(rng: &mut R, k: usize, max_len: usize) -> String {
    let len = rng.random_range(1..=max_len.max(1));
    match k % 7 {
        0 => random_text(rng, len, &alphabet(2)),
        1 => random_text(rng, len, &alphabet(4)),
        2 => random_text(rng, len, &alphabet(26)),
        3 => random_text(rng, len, &alphabet(256)),
        4 => {
            let period = rng.random_range(1..=12);
            let sigma = rng.random_range(1..=6);
            periodic_text(rng, len, period, &alphabet(sigma))
        }
        5 => prose(rng, len),
        _ => {
            let sigma = rng.random_range(1..=3);
            runs_text(rng, len, &alphabet(sigma))
        }
    }
}
