use super::{NodeId, Tree};

/// A binary tree derived from an arbitrary-degree tree by dummy-node
/// expansion. Original nodes keep their ids; dummies are appended after them.
#[derive(Clone, Debug)]
pub struct Binarized {
    pub tree: Tree,
    /// Number of original nodes; ids `>= original_len` are dummies.
    pub original_len: usize,
}

impl Binarized {
    #[inline]
    pub fn is_dummy(&self, v: NodeId) -> bool {
        v >= self.original_len
    }

    /// The original node of a binarized id, `None` for dummies.
    #[inline]
    pub fn original(&self, v: NodeId) -> Option<NodeId> {
        (v < self.original_len).then_some(v)
    }
}

/// Replaces every node with children `c1..ck`, `k > 2`, by a right spine of
/// dummies: `v -> (c1, d1)`, `d1 -> (c2, d2)`, ..., `d(k-2) -> (c(k-1), ck)`.
/// Ancestry between original nodes is preserved and at most `t - 2` dummies
/// are added.
pub fn binarize(tree: &Tree) -> Binarized {
    let n = tree.len();
    let mut children: Vec<Vec<NodeId>> = Vec::with_capacity(n);
    let mut extra: Vec<Vec<NodeId>> = Vec::new();
    for v in 0..n {
        let cs = tree.children(v);
        if cs.len() <= 2 {
            children.push(cs.to_vec());
            continue;
        }
        let mut next_dummy = n + extra.len();
        children.push(vec![cs[0], next_dummy]);
        for (i, &c) in cs.iter().enumerate().skip(1) {
            if i + 2 == cs.len() {
                extra.push(vec![c, cs[i + 1]]);
                break;
            }
            next_dummy += 1;
            extra.push(vec![c, next_dummy]);
        }
    }
    children.extend(extra);
    let tree = Tree::from_children(tree.root(), children).expect("binarized tree is a tree");
    Binarized {
        tree,
        original_len: n,
    }
}
