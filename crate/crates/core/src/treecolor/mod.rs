//! First and last colored ancestor queries on trees whose nodes carry
//! word-packed color sets.
//!
//! `firstcolor(v, c)` is the deepest node on the root-to-`v` path (with `v`
//! included) colored `c`. `lastcolor(u, v, c, include_u)` is the shallowest
//! node colored `c` on the path from an ancestor `u` down to `v`; `v` is
//! always part of the path and `u` only when `include_u` is set.
//!
//! Four engines answer the same queries with different trade-offs:
//!
//! | engine | space (words) | query |
//! |---|---|---|
//! | [`DenseIndex`] | `O(t σ)` | `O(1)` firstcolor, `O(log t)` lastcolor |
//! | [`HeavySummaryIndex`] | `O(t σ / w)` | `O(log t)` |
//! | [`MatrixIndex`] | `O(t + t σ / w)` | `O(t / w)` |
//! | [`ClusteredIndex`] | `O(t + t σ / w)` | `O(log w)` or `O(1)` by flavor |

mod clustered;
mod dense;
mod heavy_summary;
mod matrix;

pub use clustered::{ClusteredIndex, Flavor};
pub use dense::DenseIndex;
pub use heavy_summary::HeavySummaryIndex;
pub use matrix::MatrixIndex;

use crate::bitpack::BitString;
use crate::error::{Error, Result};
use crate::tree::{Ancestry, NodeId, Tree};

/// A tree with a σ-bit color set per node.
#[derive(Clone, Debug)]
pub struct PackedColorTree {
    tree: Tree,
    sigma: usize,
    colors: Vec<BitString>,
}

impl PackedColorTree {
    pub fn new(tree: Tree, sigma: usize, colors: Vec<BitString>) -> Result<PackedColorTree> {
        if colors.len() != tree.len() {
            return Err(Error::LengthMismatch {
                left: tree.len(),
                right: colors.len(),
            });
        }
        if let Some(b) = colors.iter().find(|b| b.len() != sigma) {
            return Err(Error::LengthMismatch {
                left: sigma,
                right: b.len(),
            });
        }
        Ok(PackedColorTree {
            tree,
            sigma,
            colors,
        })
    }

    /// Builds the color sets from per-node color lists.
    pub fn from_lists(tree: Tree, sigma: usize, lists: &[Vec<usize>]) -> Result<PackedColorTree> {
        let colors = lists
            .iter()
            .map(|l| {
                BitString::from_indices(sigma, l.iter().copied()).map_err(|_| Error::ColorOutOfRange {
                    color: l.iter().copied().max().unwrap_or(0),
                    sigma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PackedColorTree::new(tree, sigma, colors)
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn color(&self, v: NodeId) -> &BitString {
        &self.colors[v]
    }

    pub fn colors(&self) -> &[BitString] {
        &self.colors
    }

    #[inline]
    pub fn has(&self, v: NodeId, c: usize) -> bool {
        self.colors[v].get(c)
    }

    /// Total number of (node, color) pairs.
    pub fn total_colors(&self) -> usize {
        self.colors.iter().map(BitString::count_ones).sum()
    }
}

/// Counters filled in by the engines while answering queries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Summaries read inside the balanced trees of heavy paths.
    pub tree_steps: u64,
    /// Heavy paths entered (prefix summaries read).
    pub path_hops: u64,
    /// Words of the color matrix read.
    pub word_reads: u64,
    /// Queries issued to the macro-tree engine.
    pub macro_calls: u64,
    /// Queries issued to per-cluster engines.
    pub cluster_calls: u64,
}

impl QueryStats {
    pub fn add(&mut self, other: &QueryStats) {
        self.tree_steps += other.tree_steps;
        self.path_hops += other.path_hops;
        self.word_reads += other.word_reads;
        self.macro_calls += other.macro_calls;
        self.cluster_calls += other.cluster_calls;
    }
}

/// The query interface shared by every engine. The `_unchecked` methods
/// assume valid arguments; [`ColorQueryEngine`] validates them.
pub trait ColorIndex {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn sigma(&self) -> usize;
    fn firstcolor_unchecked(&self, v: NodeId, c: usize, stats: &mut QueryStats) -> Option<NodeId>;
    fn lastcolor_unchecked(
        &self,
        u: NodeId,
        v: NodeId,
        c: usize,
        include_u: bool,
        stats: &mut QueryStats,
    ) -> Option<NodeId>;
    /// Machine words held by the index; 32-bit entries count as half a word.
    fn space_words(&self) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Dense,
    HeavySummary,
    Matrix,
    Clustered(Flavor),
}

impl EngineKind {
    pub const ALL: [EngineKind; 5] = [
        EngineKind::Dense,
        EngineKind::HeavySummary,
        EngineKind::Matrix,
        EngineKind::Clustered(Flavor::LogQuery),
        EngineKind::Clustered(Flavor::ConstQuery),
    ];
}

impl std::fmt::Display for EngineKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EngineKind::Dense => f.write_str("dense"),
            EngineKind::HeavySummary => f.write_str("heavy-summary"),
            EngineKind::Matrix => f.write_str("matrix"),
            EngineKind::Clustered(fl) => write!(f, "clustered-{fl}"),
        }
    }
}

#[derive(Clone, Debug)]
enum Engine {
    Dense(DenseIndex),
    HeavySummary(HeavySummaryIndex),
    Matrix(MatrixIndex),
    Clustered(ClusteredIndex),
}

/// Any engine plus argument validation.
#[derive(Clone, Debug)]
pub struct ColorQueryEngine {
    kind: EngineKind,
    ancestry: Ancestry,
    engine: Engine,
}

impl ColorQueryEngine {
    pub fn build(t: &PackedColorTree, kind: EngineKind) -> ColorQueryEngine {
        let engine = match kind {
            EngineKind::Dense => Engine::Dense(DenseIndex::build(t)),
            EngineKind::HeavySummary => Engine::HeavySummary(HeavySummaryIndex::build(t)),
            EngineKind::Matrix => Engine::Matrix(MatrixIndex::build(t)),
            EngineKind::Clustered(fl) => Engine::Clustered(ClusteredIndex::build(t, fl)),
        };
        ColorQueryEngine {
            kind,
            ancestry: Ancestry::new(t.tree()),
            engine,
        }
    }

    pub fn kind(&self) -> EngineKind {
        self.kind
    }

    fn index(&self) -> &dyn ColorIndex {
        match &self.engine {
            Engine::Dense(e) => e,
            Engine::HeavySummary(e) => e,
            Engine::Matrix(e) => e,
            Engine::Clustered(e) => e,
        }
    }

    fn check(&self, v: NodeId, c: usize) -> Result<()> {
        let idx = self.index();
        if v >= idx.len() {
            return Err(Error::OutOfRange {
                what: "node",
                index: v as u64,
                bound: idx.len() as u64,
            });
        }
        if c >= idx.sigma() {
            return Err(Error::ColorOutOfRange {
                color: c,
                sigma: idx.sigma(),
            });
        }
        Ok(())
    }

    pub fn firstcolor(&self, v: NodeId, c: usize) -> Result<Option<NodeId>> {
        self.firstcolor_with_stats(v, c, &mut QueryStats::default())
    }

    pub fn firstcolor_with_stats(&self, v: NodeId, c: usize, stats: &mut QueryStats) -> Result<Option<NodeId>> {
        self.check(v, c)?;
        Ok(self.index().firstcolor_unchecked(v, c, stats))
    }

    pub fn lastcolor(&self, u: NodeId, v: NodeId, c: usize, include_u: bool) -> Result<Option<NodeId>> {
        self.lastcolor_with_stats(u, v, c, include_u, &mut QueryStats::default())
    }

    pub fn lastcolor_with_stats(
        &self,
        u: NodeId,
        v: NodeId,
        c: usize,
        include_u: bool,
        stats: &mut QueryStats,
    ) -> Result<Option<NodeId>> {
        self.check(v, c)?;
        self.check(u, c)?;
        if !self.ancestry.is_ancestor(u, v) {
            return Err(Error::NotAncestor { u, v });
        }
        Ok(self.index().lastcolor_unchecked(u, v, c, include_u, stats))
    }

    /// Words held by the engine itself, excluding the validation tables.
    pub fn space_words(&self) -> usize {
        self.index().space_words()
    }

    pub fn as_clustered(&self) -> Option<&ClusteredIndex> {
        match &self.engine {
            Engine::Clustered(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&MatrixIndex> {
        match &self.engine {
            Engine::Matrix(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_dense(&self) -> Option<&DenseIndex> {
        match &self.engine {
            Engine::Dense(e) => Some(e),
            _ => None,
        }
    }
}

/// Reference answer by walking parent links from `v`.
pub fn naive_firstcolor(t: &PackedColorTree, v: NodeId, c: usize) -> Result<Option<NodeId>> {
    if v >= t.len() {
        return Err(Error::OutOfRange {
            what: "node",
            index: v as u64,
            bound: t.len() as u64,
        });
    }
    if c >= t.sigma() {
        return Err(Error::ColorOutOfRange { color: c, sigma: t.sigma() });
    }
    let mut x = Some(v);
    while let Some(y) = x {
        if t.has(y, c) {
            return Ok(Some(y));
        }
        x = t.tree().parent(y);
    }
    Ok(None)
}

/// Reference answer by collecting the `u`-`v` path and scanning it top down.
pub fn naive_lastcolor(
    t: &PackedColorTree,
    u: NodeId,
    v: NodeId,
    c: usize,
    include_u: bool,
) -> Result<Option<NodeId>> {
    naive_firstcolor(t, v, c)?;
    if u >= t.len() {
        return Err(Error::OutOfRange {
            what: "node",
            index: u as u64,
            bound: t.len() as u64,
        });
    }
    let mut path = Vec::new();
    let mut x = Some(v);
    while let Some(y) = x {
        path.push(y);
        if y == u {
            break;
        }
        x = t.tree().parent(y);
    }
    if path.last() != Some(&u) {
        return Err(Error::NotAncestor { u, v });
    }
    if !include_u {
        path.pop();
    }
    Ok(path.into_iter().rev().find(|&y| t.has(y, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Path 0-1-2-3-4 with colors {0:{a}, 2:{a,b}, 4:{b}}, a = 0, b = 1.
    pub(crate) fn small_path() -> PackedColorTree {
        PackedColorTree::from_lists(Tree::path(5), 2, &[vec![0], vec![], vec![0, 1], vec![], vec![1]]).unwrap()
    }

    #[test]
    fn naive_examples() {
        let t = small_path();
        assert_eq!(naive_firstcolor(&t, 4, 0).unwrap(), Some(2));
        assert_eq!(naive_firstcolor(&t, 2, 0).unwrap(), Some(2));
        assert_eq!(naive_lastcolor(&t, 0, 4, 1, true).unwrap(), Some(2));
        assert_eq!(naive_lastcolor(&t, 2, 4, 1, false).unwrap(), Some(4));
        assert_eq!(naive_lastcolor(&t, 4, 4, 1, true).unwrap(), Some(4));
        assert_eq!(naive_lastcolor(&t, 4, 4, 0, true).unwrap(), None);
        assert!(naive_lastcolor(&t, 3, 1, 0, true).is_err());
        assert!(naive_firstcolor(&t, 0, 2).is_err());
        let single = PackedColorTree::from_lists(Tree::path(1), 1, &[vec![]]).unwrap();
        assert_eq!(naive_firstcolor(&single, 0, 0).unwrap(), None);
    }

    #[test]
    fn every_engine_on_the_small_path() {
        let t = small_path();
        for kind in EngineKind::ALL {
            let e = ColorQueryEngine::build(&t, kind);
            assert_eq!(e.firstcolor(4, 0).unwrap(), Some(2), "{kind}");
            assert_eq!(e.firstcolor(2, 0).unwrap(), Some(2), "{kind}");
            assert_eq!(e.firstcolor(1, 1).unwrap(), None, "{kind}");
            assert_eq!(e.lastcolor(0, 4, 1, true).unwrap(), Some(2), "{kind}");
            assert_eq!(e.lastcolor(2, 4, 1, false).unwrap(), Some(4), "{kind}");
            assert_eq!(e.lastcolor(4, 4, 1, true).unwrap(), Some(4), "{kind}");
            assert!(matches!(e.lastcolor(3, 1, 0, true), Err(Error::NotAncestor { .. })));
            assert!(matches!(e.firstcolor(0, 2), Err(Error::ColorOutOfRange { .. })));
            assert!(e.firstcolor(5, 0).is_err());
        }
    }

    #[test]
    fn root_only_color() {
        let mut lists = vec![vec![]; 30];
        lists[0] = vec![0];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = PackedColorTree::from_lists(synth::random_tree(&mut rng, 30), 1, &lists).unwrap();
        for kind in EngineKind::ALL {
            let e = ColorQueryEngine::build(&t, kind);
            for v in 0..30 {
                assert_eq!(e.firstcolor(v, 0).unwrap(), Some(0));
                assert_eq!(e.lastcolor(0, v, 0, true).unwrap(), Some(0));
                assert_eq!(e.lastcolor(0, v, 0, false).unwrap(), None);
            }
        }
    }

    pub(crate) fn cross_check(t: &PackedColorTree, rng: &mut impl Rng, pairs: usize) {
        let engines: Vec<_> = EngineKind::ALL.iter().map(|k| ColorQueryEngine::build(t, *k)).collect();
        let n = t.len();
        for v in 0..n {
            for c in 0..t.sigma() {
                let want = naive_firstcolor(t, v, c).unwrap();
                for e in &engines {
                    assert_eq!(e.firstcolor(v, c).unwrap(), want, "{} firstcolor({v},{c})", e.kind());
                }
            }
        }
        let parent = t.tree().parents();
        for _ in 0..pairs {
            let v = rng.random_range(0..n);
            let mut u = v;
            let up = rng.random_range(0..n);
            for _ in 0..up {
                match parent[u] {
                    Some(p) if rng.random_bool(0.9) => u = p,
                    _ => break,
                }
            }
            let c = rng.random_range(0..t.sigma());
            let incl = rng.random_bool(0.5);
            let want = naive_lastcolor(t, u, v, c, incl).unwrap();
            for e in &engines {
                assert_eq!(
                    e.lastcolor(u, v, c, incl).unwrap(),
                    want,
                    "{} lastcolor({u},{v},{c},{incl})",
                    e.kind()
                );
            }
        }
    }

    #[test]
    fn engines_agree_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in 0..60 {
            let n = rng.random_range(1..300);
            let sigma = [1, 3, 30, 64, 65][i % 5];
            let tree = synth::random_shape(&mut rng, n);
            let density = rng.random_range(0.02..0.6);
            let colors = synth::random_colors(&mut rng, n, sigma, density);
            let t = PackedColorTree::new(tree, sigma, colors).unwrap();
            cross_check(&t, &mut rng, 2000);
        }
    }

    #[test]
    fn include_flag_is_irrelevant_for_uncolored_u() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tree = synth::random_tree(&mut rng, 200);
        let colors = synth::random_colors(&mut rng, 200, 8, 0.2);
        let t = PackedColorTree::new(tree, 8, colors).unwrap();
        let e = ColorQueryEngine::build(&t, EngineKind::Clustered(Flavor::LogQuery));
        for v in 0..200 {
            let mut u = Some(v);
            while let Some(x) = u {
                for c in 0..8 {
                    if !t.has(x, c) {
                        assert_eq!(e.lastcolor(x, v, c, true).unwrap(), e.lastcolor(x, v, c, false).unwrap());
                    }
                }
                u = t.tree().parent(x);
            }
        }
    }
}
