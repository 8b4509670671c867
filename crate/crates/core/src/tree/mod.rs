//! Rooted ordered trees and the structural decompositions the color query
//! engines are built on.

mod binarize;
mod cluster;
mod heavy_path;
mod level_ancestor;

pub use binarize::{binarize, Binarized};
pub use cluster::{cluster_partition, Cluster, ClusterPartition};
pub use heavy_path::{heavy_path_decompose, HeavyPathDecomposition};
pub use level_ancestor::LevelAncestorIndex;

use crate::error::{Error, Result};

pub type NodeId = usize;

pub(crate) const NONE: u32 = u32::MAX;

/// A rooted, ordered tree over nodes `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    root: NodeId,
}

impl Tree {
    /// Builds a tree from a parent array. Children are ordered by id.
    pub fn from_parents(parent: &[Option<NodeId>]) -> Result<Tree> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidTree("no nodes".into()));
        }
        let mut children = vec![Vec::new(); n];
        let mut root = None;
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::InvalidTree("more than one root".into()))
                }
                None => root = Some(v),
                Some(p) if p >= n => {
                    return Err(Error::InvalidTree(format!("parent {p} of {v} out of range")))
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::InvalidTree("no root".into()))?;
        Tree::checked(parent.to_vec(), children, root)
    }

    /// Builds a tree from ordered child lists.
    pub fn from_children(root: NodeId, children: Vec<Vec<NodeId>>) -> Result<Tree> {
        let n = children.len();
        if root >= n {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == root || parent[c].is_some() {
                    return Err(Error::InvalidTree(format!("bad child {c} of {v}")));
                }
                parent[c] = Some(v);
            }
        }
        Tree::checked(parent, children, root)
    }

    fn checked(parent: Vec<Option<NodeId>>, children: Vec<Vec<NodeId>>, root: NodeId) -> Result<Tree> {
        let tree = Tree {
            parent,
            children,
            root,
        };
        // Every node must be reachable from the root, otherwise a cycle exists.
        if tree.preorder().len() != tree.len() {
            return Err(Error::InvalidTree("not connected (cycle)".into()));
        }
        Ok(tree)
    }

    /// A single path `0 - 1 - ... - (n-1)` rooted at 0.
    pub fn path(n: usize) -> Tree {
        let parent: Vec<_> = (0..n).map(|v| v.checked_sub(1)).collect();
        Tree::from_parents(&parent).expect("path is a tree")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn root(&self) -> NodeId {
        self.root
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    #[inline]
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn parents(&self) -> &[Option<NodeId>] {
        &self.parent
    }

    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 2)
    }

    /// Nodes in pre-order, respecting child order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if order.len() > self.len() {
                break;
            }
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// Depth of every node, root at depth 0.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// `|T(v)|` for every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for v in self.preorder().into_iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// Walks parent links; `u` is an ancestor of itself.
    pub fn is_ancestor_walk(&self, u: NodeId, v: NodeId) -> bool {
        let mut x = Some(v);
        while let Some(y) = x {
            if y == u {
                return true;
            }
            x = self.parent[y];
        }
        false
    }
}

/// Constant-time ancestor tests from pre-order intervals.
#[derive(Clone, Debug)]
pub struct Ancestry {
    tin: Vec<u32>,
    size: Vec<u32>,
}

impl Ancestry {
    pub fn new(tree: &Tree) -> Ancestry {
        let mut tin = vec![0u32; tree.len()];
        for (i, v) in tree.preorder().into_iter().enumerate() {
            tin[v] = i as u32;
        }
        let size = tree.subtree_sizes().into_iter().map(|s| s as u32).collect();
        Ancestry { tin, size }
    }

    /// True when `u` is an ancestor of `v` or equal to it.
    #[inline]
    pub fn is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = (self.tin[u], self.tin[v]);
        a <= b && b < a + self.size[u]
    }

    pub fn len(&self) -> usize {
        self.tin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tin.is_empty()
    }

    pub fn space_words(&self) -> usize {
        self.tin.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_parent_arrays() {
        assert!(Tree::from_parents(&[]).is_err());
        assert!(Tree::from_parents(&[None, None]).is_err());
        assert!(Tree::from_parents(&[Some(1), Some(0)]).is_err());
        assert!(Tree::from_parents(&[None, Some(2), Some(1)]).is_err());
        assert!(Tree::from_parents(&[None, Some(7)]).is_err());
    }

    #[test]
    fn basic_shape_queries() {
        let t = Tree::from_parents(&[None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(t.preorder(), vec![0, 1, 3, 2]);
        assert_eq!(t.depths(), vec![0, 1, 1, 2]);
        assert_eq!(t.subtree_sizes(), vec![4, 2, 1, 1]);
        let a = Ancestry::new(&t);
        assert!(a.is_ancestor(0, 3) && a.is_ancestor(1, 3) && a.is_ancestor(3, 3));
        assert!(!a.is_ancestor(2, 3) && !a.is_ancestor(3, 1));
    }
}
