use super::{NodeId, Tree};

/// Partition of a tree into heavy paths.
#[derive(Clone, Debug)]
pub struct HeavyPathDecomposition {
    heavy_child: Vec<Option<NodeId>>,
    path_of: Vec<usize>,
    pos: Vec<usize>,
    paths: Vec<Vec<NodeId>>,
}

/// Decomposes `tree` into heavy paths using subtree sizes as weights.
pub fn heavy_path_decompose(tree: &Tree) -> HeavyPathDecomposition {
    let sizes: Vec<u64> = tree.subtree_sizes().into_iter().map(|s| s as u64).collect();
    HeavyPathDecomposition::with_weights(tree, &sizes)
}

impl HeavyPathDecomposition {
    /// Decomposes with caller-supplied subtree weights. The heavy child of a
    /// node is the child of maximum weight; ties go to the earliest child.
    pub fn with_weights(tree: &Tree, weight: &[u64]) -> HeavyPathDecomposition {
        let n = tree.len();
        let mut heavy_child = vec![None; n];
        for (v, hc) in heavy_child.iter_mut().enumerate() {
            let mut best: Option<NodeId> = None;
            for &c in tree.children(v) {
                if best.is_none_or(|b| weight[c] > weight[b]) {
                    best = Some(c);
                }
            }
            *hc = best;
        }
        let mut path_of = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        let mut paths = Vec::new();
        for v in tree.preorder() {
            let is_head = match tree.parent(v) {
                None => true,
                Some(p) => heavy_child[p] != Some(v),
            };
            if !is_head {
                continue;
            }
            let id = paths.len();
            let mut path = Vec::new();
            let mut x = Some(v);
            while let Some(y) = x {
                path_of[y] = id;
                pos[y] = path.len();
                path.push(y);
                x = heavy_child[y];
            }
            paths.push(path);
        }
        HeavyPathDecomposition {
            heavy_child,
            path_of,
            pos,
            paths,
        }
    }

    #[inline]
    pub fn heavy_child(&self, v: NodeId) -> Option<NodeId> {
        self.heavy_child[v]
    }

    #[inline]
    pub fn path_of(&self, v: NodeId) -> usize {
        self.path_of[v]
    }

    /// Position of `v` on its path, 0 at the path head.
    #[inline]
    pub fn position(&self, v: NodeId) -> usize {
        self.pos[v]
    }

    /// Paths, each listed from its head (closest to the root) downwards.
    pub fn paths(&self) -> &[Vec<NodeId>] {
        &self.paths
    }

    /// A node is heavy when it is the heavy child of its parent.
    pub fn is_heavy(&self, tree: &Tree, v: NodeId) -> bool {
        tree.parent(v)
            .is_some_and(|p| self.heavy_child[p] == Some(v))
    }

    /// Maximum number of light edges on a root-to-leaf path.
    pub fn max_light_depth(&self, tree: &Tree) -> usize {
        let mut light = vec![0usize; tree.len()];
        let mut best = 0;
        for v in tree.preorder() {
            if let Some(p) = tree.parent(v) {
                light[v] = light[p] + usize::from(!self.is_heavy(tree, v));
            }
            best = best.max(light[v]);
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check_structure(tree: &Tree, hpd: &HeavyPathDecomposition) {
        let mut seen = vec![false; tree.len()];
        for (id, path) in hpd.paths().iter().enumerate() {
            for (i, &v) in path.iter().enumerate() {
                assert!(!seen[v], "paths overlap at {v}");
                seen[v] = true;
                assert_eq!(hpd.path_of(v), id);
                assert_eq!(hpd.position(v), i);
                if i > 0 {
                    assert_eq!(tree.parent(v), Some(path[i - 1]));
                }
            }
        }
        assert!(seen.iter().all(|s| *s), "paths do not cover the tree");
        let size = tree.subtree_sizes();
        for v in 0..tree.len() {
            for &c in tree.children(v) {
                if !hpd.is_heavy(tree, c) {
                    assert!(2 * size[c] < size[v] + 1, "light child too big");
                }
            }
        }
        let bound = (tree.len() as f64).log2().floor() as usize;
        assert!(hpd.max_light_depth(tree) <= bound);
    }

    #[test]
    fn path_is_one_heavy_path() {
        let t = Tree::path(5);
        let hpd = heavy_path_decompose(&t);
        assert_eq!(hpd.paths(), &[vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn complete_binary_tree_light_bound() {
        let parent: Vec<_> = (0..15).map(|v: usize| v.checked_sub(1).map(|p| p / 2)).collect();
        let t = Tree::from_parents(&parent).unwrap();
        let hpd = heavy_path_decompose(&t);
        assert!(hpd.max_light_depth(&t) <= 3);
        // ties go to the first child
        assert_eq!(hpd.heavy_child(0), Some(1));
        check_structure(&t, &hpd);
    }

    #[test]
    fn random_trees_satisfy_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..500 {
            let t = synth::random_tree(&mut rng, 1 + i % 300);
            check_structure(&t, &heavy_path_decompose(&t));
        }
    }
}
