use super::{ColorIndex, DenseIndex, HeavySummaryIndex, MatrixIndex, PackedColorTree, QueryStats};
use crate::bitpack::{BitString, WORD_BITS};
use crate::tree::{binarize, cluster_partition, NodeId, NONE};

/// Which engine answers queries inside a cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Flavor {
    /// Heavy-path summaries: `O(log w)` per query.
    #[default]
    LogQuery,
    /// Color matrix: `O(1)` per query since clusters span one word.
    ConstQuery,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::LogQuery => "log",
            Flavor::ConstQuery => "const",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "log" | "i" => Ok(Flavor::LogQuery),
            "const" | "ii" => Ok(Flavor::ConstQuery),
            _ => Err(format!("unknown flavor {s:?}, expected log or const")),
        }
    }
}

#[derive(Clone, Debug)]
enum Local {
    Log(HeavySummaryIndex),
    Const(MatrixIndex),
}

impl Local {
    fn index(&self) -> &dyn ColorIndex {
        match self {
            Local::Log(e) => e,
            Local::Const(e) => e,
        }
    }
}

#[derive(Clone, Debug)]
struct ClusterEntry {
    root: u32,
    root_macro: u32,
    leaf: u32,
    leaf_macro: u32,
    member_off: u32,
    engine: Local,
}

/// Cluster-partitioned engine over the binarized tree.
///
/// Each cluster of at most `w` nodes gets its own small engine; a dense
/// index over the macro tree answers queries that cross clusters. The
/// color of a macro node `b` is the union of colors on the path from just
/// below the root of the cluster ending at `b` down to `b`, so the macro
/// path from the tree root to `b` covers every node above `b` exactly once.
#[derive(Clone, Debug)]
pub struct ClusteredIndex {
    sigma: usize,
    len: usize,
    flavor: Flavor,
    tree_root: u32,
    home: Vec<u32>,
    local: Vec<u32>,
    boundary: Vec<bool>,
    members: Vec<u32>,
    clusters: Vec<ClusterEntry>,
    macro_nodes: Vec<u32>,
    /// Absent when the whole tree is one cluster.
    macro_index: Option<DenseIndex>,
}

impl ClusteredIndex {
    pub fn build(t: &PackedColorTree, flavor: Flavor) -> ClusteredIndex {
        let sigma = t.sigma();
        let bin = binarize(t.tree());
        let tree = &bin.tree;
        let x = WORD_BITS.min(tree.len());
        let part = cluster_partition(tree, x).expect("binarized tree is binary");
        let color_of = |v: NodeId| -> BitString {
            match bin.original(v) {
                Some(o) => t.color(o).clone(),
                None => BitString::zeros(sigma),
            }
        };

        let n = tree.len();
        let mut members = Vec::with_capacity(n + part.clusters().len());
        let mut clusters = Vec::with_capacity(part.clusters().len());
        for (id, c) in part.clusters().iter().enumerate() {
            let local_tree = part.local_tree(tree, id);
            let colors = c.nodes.iter().map(|&v| color_of(v)).collect();
            let lt = PackedColorTree::new(local_tree, sigma, colors).expect("local colors");
            let engine = match flavor {
                Flavor::LogQuery => Local::Log(HeavySummaryIndex::build(&lt)),
                Flavor::ConstQuery => Local::Const(MatrixIndex::build(&lt)),
            };
            clusters.push(ClusterEntry {
                root: c.root as u32,
                root_macro: part.macro_of(c.root).expect("cluster root is a macro node") as u32,
                leaf: c.leaf.map_or(NONE, |l| l as u32),
                leaf_macro: c.leaf.map_or(NONE, |l| part.macro_of(l).expect("leaf is a macro node") as u32),
                member_off: members.len() as u32,
                engine,
            });
            members.extend(c.nodes.iter().map(|&v| v as u32));
        }

        let macro_tree = part.macro_tree().clone();
        let macro_colors: Vec<BitString> = (0..macro_tree.len())
            .map(|m| {
                let b = part.macro_node(m);
                let mut acc = color_of(b);
                if macro_tree.parent(m).is_some() {
                    let top = part.clusters()[part.home(b)].root;
                    let mut y = tree.parent(b).expect("cluster root is an ancestor");
                    while y != top {
                        acc.or_assign(&color_of(y)).expect("equal lengths");
                        y = tree.parent(y).expect("cluster root is an ancestor");
                    }
                }
                acc
            })
            .collect();
        let macro_nodes = (0..macro_tree.len()).map(|m| part.macro_node(m) as u32).collect();
        let macro_len = macro_tree.len();
        let macro_pct = PackedColorTree::new(macro_tree, sigma, macro_colors).expect("macro colors");

        ClusteredIndex {
            sigma,
            len: t.len(),
            flavor,
            tree_root: tree.root() as u32,
            home: (0..n).map(|v| part.home(v) as u32).collect(),
            local: (0..n).map(|v| part.local(v) as u32).collect(),
            boundary: (0..n).map(|v| part.is_boundary(v)).collect(),
            members,
            clusters,
            macro_nodes,
            macro_index: (macro_len > 1).then(|| DenseIndex::build(&macro_pct)),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn macro_len(&self) -> usize {
        self.macro_nodes.len()
    }

    #[inline]
    fn global(&self, cl: &ClusterEntry, local: usize) -> NodeId {
        self.members[cl.member_off as usize + local] as usize
    }

    fn in_cluster_first(&self, cl: &ClusterEntry, local: usize, c: usize, stats: &mut QueryStats) -> Option<NodeId> {
        stats.cluster_calls += 1;
        cl.engine
            .index()
            .firstcolor_unchecked(local, c, stats)
            .map(|l| self.global(cl, l))
    }

    fn in_cluster_last(
        &self,
        cl: &ClusterEntry,
        lu: usize,
        lv: usize,
        c: usize,
        include_u: bool,
        stats: &mut QueryStats,
    ) -> Option<NodeId> {
        stats.cluster_calls += 1;
        cl.engine
            .index()
            .lastcolor_unchecked(lu, lv, c, include_u, stats)
            .map(|l| self.global(cl, l))
    }
}

impl ColorIndex for ClusteredIndex {
    fn len(&self) -> usize {
        self.len
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn firstcolor_unchecked(&self, v: NodeId, c: usize, stats: &mut QueryStats) -> Option<NodeId> {
        let cv = &self.clusters[self.home[v] as usize];
        if let Some(z) = self.in_cluster_first(cv, self.local[v] as usize, c, stats) {
            return Some(z);
        }
        if cv.root == self.tree_root {
            return None;
        }
        stats.macro_calls += 1;
        let m = self
            .macro_index
            .as_ref()
            .expect("several clusters")
            .firstcolor_unchecked(cv.root_macro as usize, c, stats)?;
        let w = self.macro_nodes[m] as usize;
        if w == self.tree_root as usize {
            return Some(w);
        }
        let cw = &self.clusters[self.home[w] as usize];
        self.in_cluster_first(cw, self.local[w] as usize, c, stats)
    }

    fn lastcolor_unchecked(
        &self,
        u: NodeId,
        v: NodeId,
        c: usize,
        include_u: bool,
        stats: &mut QueryStats,
    ) -> Option<NodeId> {
        let hu = self.home[u] as usize;
        let hv = self.home[v] as usize;
        if hu == hv {
            let cl = &self.clusters[hu];
            return self.in_cluster_last(cl, self.local[u] as usize, self.local[v] as usize, c, include_u, stats);
        }
        let cu = &self.clusters[hu];
        let cv = &self.clusters[hv];
        // `w` is the boundary node of u's cluster on the way down to v.
        let (w, w_macro) = if self.boundary[u] {
            let m = if u == self.tree_root as usize { 0 } else { cu.leaf_macro };
            (u, m)
        } else {
            (cu.leaf as usize, cu.leaf_macro)
        };
        if let Some(z) = self.in_cluster_last(cu, self.local[u] as usize, self.local[w] as usize, c, include_u, stats) {
            return Some(z);
        }
        // A lower cluster's root is either `w`, already searched, or a macro
        // node whose segment holds no `c`. Including it is harmless unless
        // it is an excluded `u`.
        let include_root = |cl: &ClusterEntry| include_u || cl.root as usize != u;
        if w_macro != cv.root_macro {
            stats.macro_calls += 1;
            let found = self.macro_index.as_ref().expect("several clusters").lastcolor_unchecked(
                w_macro as usize,
                cv.root_macro as usize,
                c,
                false,
                stats,
            );
            if let Some(m) = found {
                let z = self.macro_nodes[m] as usize;
                let cz = &self.clusters[self.home[z] as usize];
                return self.in_cluster_last(cz, 0, self.local[z] as usize, c, include_root(cz), stats);
            }
        }
        self.in_cluster_last(cv, 0, self.local[v] as usize, c, include_root(cv), stats)
    }

    fn space_words(&self) -> usize {
        let engines: usize = self.clusters.iter().map(|c| c.engine.index().space_words() + 3).sum();
        let halves = self.home.len() + self.local.len() + self.members.len() + self.macro_nodes.len();
        engines + halves.div_ceil(2) + self.boundary.len().div_ceil(64) + self.macro_index.as_ref().map_or(0, DenseIndex::space_words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use crate::tree::Tree;
    use crate::treecolor::{naive_firstcolor, naive_lastcolor};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_tree_is_one_cluster() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let tree = synth::random_tree(&mut rng, 40);
        let colors = synth::random_colors(&mut rng, 40, 5, 0.3);
        let t = PackedColorTree::new(tree, 5, colors).unwrap();
        for flavor in [Flavor::LogQuery, Flavor::ConstQuery] {
            let e = ClusteredIndex::build(&t, flavor);
            assert!(e.cluster_count() <= 2);
            for v in 0..40 {
                for c in 0..5 {
                    let mut s = QueryStats::default();
                    assert_eq!(e.firstcolor_unchecked(v, c, &mut s), naive_firstcolor(&t, v, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn long_paths_and_boundary_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for n in [63, 64, 65, 128, 129, 1000] {
            let colors = synth::random_colors(&mut rng, n, 3, 0.02);
            let t = PackedColorTree::new(Tree::path(n), 3, colors).unwrap();
            for flavor in [Flavor::LogQuery, Flavor::ConstQuery] {
                let e = ClusteredIndex::build(&t, flavor);
                for _ in 0..3000 {
                    let v = rng.random_range(0..n);
                    let u = rng.random_range(0..=v);
                    let c = rng.random_range(0..3);
                    let incl = rng.random_bool(0.5);
                    let mut s = QueryStats::default();
                    let got = e.lastcolor_unchecked(u, v, c, incl, &mut s);
                    assert_eq!(got, naive_lastcolor(&t, u, v, c, incl).unwrap(), "n={n} {u} {v} {c} {incl}");
                    assert!(s.macro_calls <= 1 && s.cluster_calls <= 3);
                }
            }
        }
    }

    #[test]
    fn flavor_parses() {
        assert_eq!("log".parse::<Flavor>().unwrap(), Flavor::LogQuery);
        assert_eq!("const".parse::<Flavor>().unwrap(), Flavor::ConstQuery);
        assert!("fast".parse::<Flavor>().is_err());
    }
}
