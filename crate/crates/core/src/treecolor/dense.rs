use super::{ColorIndex, PackedColorTree, QueryStats};
use crate::tree::{LevelAncestorIndex, NodeId, Tree, NONE};

/// Full `t x σ` answer table plus one induced subtree per color.
///
/// The induced subtree of color `c` holds the root and every node colored
/// `c`, with ancestry inherited from the tree. Its local ids are assigned in
/// pre-order, so local 0 is always the root. `table[v][c]` stores the local
/// id of the deepest `c`-colored ancestor-or-self of `v`, or 0 when there is
/// none (the root stands in for "nothing"). Colors on no node other than
/// the root keep no induced subtree.
#[derive(Clone, Debug)]
pub struct DenseIndex {
    sigma: usize,
    root: usize,
    parent: Vec<u32>,
    table: Vec<u32>,
    root_colored: Vec<bool>,
    induced: Vec<Option<Induced>>,
}

#[derive(Clone, Debug)]
struct Induced {
    nodes: Vec<u32>,
    la: LevelAncestorIndex,
}

impl DenseIndex {
    pub fn build(t: &PackedColorTree) -> DenseIndex {
        let tree = t.tree();
        let n = tree.len();
        let sigma = t.sigma();
        let root = tree.root();
        let mut table = vec![0u32; n * sigma];
        let mut nodes: Vec<Vec<u32>> = vec![vec![root as u32]; sigma];
        let mut induced_parent: Vec<Vec<Option<usize>>> = vec![vec![None]; sigma];
        let root_colored: Vec<bool> = (0..sigma).map(|c| t.has(root, c)).collect();
        for v in tree.preorder() {
            let Some(p) = tree.parent(v) else { continue };
            table.copy_within(p * sigma..(p + 1) * sigma, v * sigma);
            for c in t.color(v).iter_ones() {
                let local = nodes[c].len();
                induced_parent[c].push(Some(table[v * sigma + c] as usize));
                nodes[c].push(v as u32);
                table[v * sigma + c] = local as u32;
            }
        }
        let induced = nodes
            .into_iter()
            .zip(&induced_parent)
            .map(|(nodes, parent)| {
                (nodes.len() > 1).then(|| Induced {
                    la: LevelAncestorIndex::new(&Tree::from_parents(parent).expect("induced tree")),
                    nodes,
                })
            })
            .collect();
        let parent = tree
            .parents()
            .iter()
            .map(|p| p.map_or(NONE, |p| p as u32))
            .collect();
        DenseIndex {
            sigma,
            root,
            parent,
            table,
            root_colored,
            induced,
        }
    }

    /// Number of nodes in the induced subtree of color `c`.
    pub fn induced_len(&self, c: usize) -> usize {
        self.induced[c].as_ref().map_or(1, |i| i.nodes.len())
    }

    #[inline]
    fn entry(&self, v: NodeId, c: usize) -> usize {
        self.table[v * self.sigma + c] as usize
    }
}

impl ColorIndex for DenseIndex {
    fn len(&self) -> usize {
        self.parent.len()
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    #[inline]
    fn firstcolor_unchecked(&self, v: NodeId, c: usize, _stats: &mut QueryStats) -> Option<NodeId> {
        match (self.entry(v, c), &self.induced[c]) {
            (0, _) if !self.root_colored[c] => None,
            (l, Some(ind)) => Some(ind.nodes[l] as usize),
            (_, None) => Some(self.root),
        }
    }

    fn lastcolor_unchecked(
        &self,
        u: NodeId,
        v: NodeId,
        c: usize,
        include_u: bool,
        _stats: &mut QueryStats,
    ) -> Option<NodeId> {
        let fv = self.entry(v, c);
        if fv == 0 && !self.root_colored[c] {
            return None;
        }
        let anchor = if include_u { self.parent[u] } else { u as u32 };
        let Some(ind) = &self.induced[c] else {
            return (anchor == NONE).then_some(self.root);
        };
        // The answer is the shallowest colored ancestor of `v` strictly
        // below `anchor`; above it, the deepest colored node is `first(anchor)`.
        let target = if anchor == NONE {
            usize::from(!self.root_colored[c])
        } else {
            ind.la.depth(self.entry(anchor as usize, c)) + 1
        };
        if ind.la.depth(fv) < target {
            return None;
        }
        Some(ind.nodes[ind.la.la_unchecked(fv, target)] as usize)
    }

    fn space_words(&self) -> usize {
        let induced: usize = self
            .induced
            .iter()
            .flatten()
            .map(|i| i.nodes.len().div_ceil(2) + i.la.space_words())
            .sum();
        (self.table.len() + self.parent.len()).div_ceil(2) + 2 * self.sigma.div_ceil(64) + induced
    }
}
