//! Shared fixtures for the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slpseq::bitpack::{BitMatrix, BitString};
use slpseq::synth;
use slpseq::treecolor::PackedColorTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A square bit matrix with each bit set with probability one half.
pub fn random_matrix(n: usize, seed: u64) -> BitMatrix {
    let mut r = rng(seed);
    let rows = (0..n)
        .map(|_| BitString::from_indices(n, (0..n).filter(|_| r.random_bool(0.5))).expect("in range"))
        .collect();
    BitMatrix::from_rows(rows, n).expect("square")
}

/// Sparse random bit strings of length `len`.
pub fn random_bits(count: usize, len: usize, seed: u64) -> Vec<BitString> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| BitString::from_indices(len, (0..len).filter(|_| r.random_bool(0.01))).expect("in range"))
        .collect()
}

/// A random colored tree with `n` nodes over `sigma` colors.
pub fn colored_tree(n: usize, sigma: usize, seed: u64) -> PackedColorTree {
    let mut r = rng(seed);
    let tree = synth::random_shape(&mut r, n);
    let colors = synth::random_colors(&mut r, n, sigma, 0.2);
    PackedColorTree::new(tree, sigma, colors).expect("colors fit")
}

/// Random `(u, v)` ancestor pairs with `u` an ancestor-or-self of `v`.
pub fn ancestor_pairs(t: &PackedColorTree, count: usize, seed: u64) -> Vec<(usize, usize, usize)> {
    let mut r = rng(seed);
    let parents = t.tree().parents();
    (0..count)
        .map(|_| {
            let v = r.random_range(0..t.len());
            let mut u = v;
            for _ in 0..r.random_range(0..64) {
                match parents[u] {
                    Some(p) => u = p,
                    None => break,
                }
            }
            (u, v, r.random_range(0..t.sigma()))
        })
        .collect()
}
