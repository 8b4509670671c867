//! Cluster partition of a binary tree.
//!
//! Clusters are connected subtrees. Each has a root and at most one leaf
//! boundary node; neighbouring clusters share exactly that boundary node.
//! The partition is built by a bottom-up greedy merge: a node absorbs the
//! open parts of its children while the merged part stays below `x` nodes
//! and holds at most one boundary leaf. Otherwise every child part is closed
//! into its own cluster rooted at the node, and the node becomes a boundary.
//!
//! Every cluster has at most `max(x, 2)` nodes. A closure caused by size
//! consumes about `x` nodes and a closure caused by two boundary leaves is
//! a branching node of the macro tree, which gives roughly `4t/x` clusters.

use super::{NodeId, Tree, NONE};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    /// Top boundary node.
    pub root: NodeId,
    /// Bottom boundary node, if any.
    pub leaf: Option<NodeId>,
    /// Member nodes in pre-order; `nodes[0] == root`.
    pub nodes: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct ClusterPartition {
    x: usize,
    clusters: Vec<Cluster>,
    home: Vec<u32>,
    local: Vec<u32>,
    boundary: Vec<bool>,
    macro_tree: Tree,
    macro_nodes: Vec<NodeId>,
    macro_of: Vec<u32>,
}

/// Partitions a binary tree into clusters of at most `max(x, 2)` nodes.
pub fn cluster_partition(tree: &Tree, x: usize) -> Result<ClusterPartition> {
    if !tree.is_binary() {
        return Err(Error::InvalidTree("cluster partition needs a binary tree".into()));
    }
    if x == 0 || x > tree.len().max(1) {
        return Err(Error::OutOfRange {
            what: "cluster parameter",
            index: x as u64,
            bound: tree.len() as u64,
        });
    }
    let n = tree.len();
    let open_limit = x.saturating_sub(1).max(1);
    let mut open_size = vec![0usize; n];
    let mut open_bound = vec![0u8; n];
    let mut boundary = vec![false; n];
    let mut home = vec![NONE; n];
    let mut local = vec![NONE; n];
    let mut clusters: Vec<Cluster> = Vec::new();

    let close = |root: NodeId,
                     start: NodeId,
                     include_root: bool,
                     boundary: &[bool],
                     home: &mut [u32],
                     local: &mut [u32],
                     clusters: &mut Vec<Cluster>| {
        let id = clusters.len() as u32;
        let mut nodes = Vec::new();
        let mut leaf = None;
        if !include_root {
            nodes.push(root);
        }
        let mut stack = vec![start];
        while let Some(y) = stack.pop() {
            home[y] = id;
            local[y] = nodes.len() as u32;
            nodes.push(y);
            if boundary[y] && y != root {
                leaf = Some(y);
            } else {
                stack.extend(tree.children(y).iter().rev());
            }
        }
        clusters.push(Cluster { root, leaf, nodes });
    };

    let order = tree.preorder();
    for &v in order.iter().rev() {
        let kids = tree.children(v);
        let size = 1 + kids.iter().map(|&c| open_size[c]).sum::<usize>();
        let bound: u8 = kids.iter().map(|&c| open_bound[c]).sum();
        if size <= open_limit && bound <= 1 {
            open_size[v] = size;
            open_bound[v] = bound;
            continue;
        }
        for &c in kids {
            close(v, c, false, &boundary, &mut home, &mut local, &mut clusters);
        }
        boundary[v] = true;
        open_size[v] = 1;
        open_bound[v] = 1;
    }
    let root = tree.root();
    if boundary[root] {
        // The root already heads closed clusters; it lives in the first one.
        let first = clusters
            .iter()
            .position(|c| c.root == root)
            .expect("boundary root heads a cluster");
        home[root] = first as u32;
        local[root] = 0;
    } else {
        close(root, root, true, &boundary, &mut home, &mut local, &mut clusters);
    }

    let mut macro_nodes = Vec::new();
    let mut macro_of = vec![NONE; n];
    for &v in &order {
        if v == root || boundary[v] {
            macro_of[v] = macro_nodes.len() as u32;
            macro_nodes.push(v);
        }
    }
    let macro_parent: Vec<Option<NodeId>> = macro_nodes
        .iter()
        .map(|&b| {
            (b != root).then(|| macro_of[clusters[home[b] as usize].root] as usize)
        })
        .collect();
    let macro_tree = Tree::from_parents(&macro_parent)?;

    Ok(ClusterPartition {
        x,
        clusters,
        home,
        local,
        boundary,
        macro_tree,
        macro_nodes,
        macro_of,
    })
}

impl ClusterPartition {
    pub fn x(&self) -> usize {
        self.x
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// The cluster a node belongs to: the one in which it is not the root,
    /// or for the tree root, a cluster it heads.
    #[inline]
    pub fn home(&self, v: NodeId) -> usize {
        self.home[v] as usize
    }

    /// Index of `v` in `clusters()[home(v)].nodes`.
    #[inline]
    pub fn local(&self, v: NodeId) -> usize {
        self.local[v] as usize
    }

    #[inline]
    pub fn is_boundary(&self, v: NodeId) -> bool {
        self.boundary[v]
    }

    /// Tree over the boundary nodes (plus the tree root).
    pub fn macro_tree(&self) -> &Tree {
        &self.macro_tree
    }

    #[inline]
    pub fn macro_node(&self, m: usize) -> NodeId {
        self.macro_nodes[m]
    }

    #[inline]
    pub fn macro_of(&self, v: NodeId) -> Option<usize> {
        let m = self.macro_of[v];
        (m != NONE).then_some(m as usize)
    }

    /// A cluster as a standalone tree over local ids, root at 0.
    pub fn local_tree(&self, tree: &Tree, cluster: usize) -> Tree {
        let c = &self.clusters[cluster];
        let mut index = std::collections::HashMap::with_capacity(c.nodes.len());
        for (i, &v) in c.nodes.iter().enumerate() {
            index.insert(v, i);
        }
        let parent: Vec<Option<NodeId>> = c
            .nodes
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if i == 0 {
                    None
                } else {
                    Some(index[&tree.parent(v).expect("non-root member has a parent")])
                }
            })
            .collect();
        Tree::from_parents(&parent).expect("cluster is connected")
    }

    pub fn space_words(&self) -> usize {
        let members: usize = self.clusters.iter().map(|c| c.nodes.len() + 3).sum();
        (members + 3 * self.home.len() + 2 * self.macro_nodes.len()).div_ceil(2)
    }
}
