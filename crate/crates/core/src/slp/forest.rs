use super::{Rule, Slp};
use crate::error::{Error, Result};
use crate::tree::NONE;

/// Which child the derivation path takes when it leaves a heavy tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    /// The path ends at a terminal inside the tree.
    Terminal,
}

/// One heavy tree crossed by a root-to-leaf derivation path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub tree: usize,
    /// First node of the tree on the path.
    pub entry: usize,
    /// Last node of the tree on the path; a forest ancestor of `entry`.
    pub exit: usize,
    /// 0-based start of `S(entry)` within `S`.
    pub offset: u64,
    pub side: Side,
}

/// Result of a random access: the symbol and the heavy trees crossed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessTrace {
    pub symbol: u32,
    pub visits: Vec<Visit>,
}

/// The heavy forest of an SLP. Every nonterminal keeps an edge to its
/// heavy child (the one deriving the longer string, left on ties), and that
/// child is its parent in the forest, so every tree is rooted at a terminal.
#[derive(Clone, Debug)]
pub struct SlpHeavyForest {
    heavy_left: Vec<bool>,
    tree_of: Vec<u32>,
    depth: Vec<u32>,
    tpos: Vec<u64>,
    roots: Vec<u32>,
}

impl SlpHeavyForest {
    pub fn build(slp: &Slp) -> SlpHeavyForest {
        let n = slp.num_rules();
        let mut heavy_left = vec![false; n];
        let mut tree_of = vec![NONE; n];
        let mut depth = vec![0u32; n];
        let mut tpos = vec![0u64; n];
        let mut roots = Vec::new();
        for v in children_first(slp) {
            match slp.rule(v) {
                Rule::Terminal(_) => {
                    tree_of[v] = roots.len() as u32;
                    roots.push(v as u32);
                }
                Rule::Nonterminal(l, r) => {
                    let (l, r) = (l as usize, r as usize);
                    let left = slp.len_of(l) >= slp.len_of(r);
                    heavy_left[v] = left;
                    let h = if left { l } else { r };
                    tree_of[v] = tree_of[h];
                    depth[v] = depth[h] + 1;
                    tpos[v] = tpos[h] + if left { 0 } else { slp.len_of(l) };
                }
            }
        }
        SlpHeavyForest {
            heavy_left,
            tree_of,
            depth,
            tpos,
            roots,
        }
    }

    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    /// Heavy tree of a reachable rule.
    #[inline]
    pub fn tree_of(&self, v: usize) -> Option<usize> {
        let t = self.tree_of[v];
        (t != NONE).then_some(t as usize)
    }

    /// The terminal at the root of a heavy tree.
    #[inline]
    pub fn root_of(&self, tree: usize) -> usize {
        self.roots[tree] as usize
    }

    /// Distance from `v` to its tree root along heavy edges.
    #[inline]
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    #[inline]
    pub fn heavy_is_left(&self, v: usize) -> bool {
        self.heavy_left[v]
    }

    pub fn heavy_child(&self, slp: &Slp, v: usize) -> Option<usize> {
        slp.children(v).map(|(l, r)| if self.heavy_left[v] { l } else { r })
    }

    /// 0-based position of the tree root's terminal within `S(v)`.
    #[inline]
    pub fn tpos(&self, v: usize) -> u64 {
        self.tpos[v]
    }

    /// Most light edges on any root-to-terminal derivation path.
    pub fn max_light_depth(&self, slp: &Slp) -> usize {
        let mut light = vec![0usize; slp.num_rules()];
        for v in children_first(slp) {
            if let Some((l, r)) = slp.children(v) {
                let (hl, hr) = (usize::from(!self.heavy_left[v]), usize::from(self.heavy_left[v]));
                light[v] = (light[l] + hl).max(light[r] + hr);
            }
        }
        light[slp.root()]
    }

    /// Descends to position `i` (1-indexed), recording the heavy trees
    /// crossed with their entry and exit nodes.
    pub fn access(&self, slp: &Slp, i: u64) -> Result<AccessTrace> {
        if i == 0 || i > slp.len() {
            return Err(Error::OutOfRange {
                what: "position",
                index: i,
                bound: slp.len(),
            });
        }
        let mut visits = Vec::new();
        let mut v = slp.root();
        let mut start = 0u64;
        let mut entry = (v, start);
        loop {
            match slp.rule(v) {
                Rule::Terminal(s) => {
                    visits.push(self.visit(entry, v, Side::Terminal));
                    return Ok(AccessTrace { symbol: s, visits });
                }
                Rule::Nonterminal(l, r) => {
                    let (l, r) = (l as usize, r as usize);
                    let go_left = i - start <= slp.len_of(l);
                    let (next, side) = if go_left {
                        (l, Side::Left)
                    } else {
                        start += slp.len_of(l);
                        (r, Side::Right)
                    };
                    if go_left != self.heavy_left[v] {
                        visits.push(self.visit(entry, v, side));
                        entry = (next, start);
                    }
                    v = next;
                }
            }
        }
    }

    fn visit(&self, (entry, offset): (usize, u64), exit: usize, side: Side) -> Visit {
        Visit {
            tree: self.tree_of[entry] as usize,
            entry,
            exit,
            offset,
            side,
        }
    }

    /// 0-based start of `S(exit)` within `S` for a visit.
    #[inline]
    pub fn exit_offset(&self, visit: &Visit) -> u64 {
        self.offset_in_tree(visit.entry, visit.offset, visit.exit)
    }

    /// Start of `S(x)` given the start of `S(entry)`, for a node `x` of the
    /// same tree on the heavy path below `entry`.
    #[inline]
    pub fn offset_in_tree(&self, entry: usize, entry_offset: u64, x: usize) -> u64 {
        entry_offset + self.tpos[entry] - self.tpos[x]
    }

    pub fn space_words(&self) -> usize {
        self.tpos.len() + (self.tree_of.len() + self.depth.len() + self.roots.len()).div_ceil(2) + self.heavy_left.len().div_ceil(64)
    }
}

/// Reachable rules, children before parents.
fn children_first(slp: &Slp) -> Vec<usize> {
    let n = slp.num_rules();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(slp.root(), false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            order.push(v);
            continue;
        }
        if seen[v] {
            continue;
        }
        seen[v] = true;
        stack.push((v, true));
        if let Some((l, r)) = slp.children(v) {
            for c in [r, l] {
                if !seen[c] {
                    stack.push((c, false));
                }
            }
        }
    }
    order
}
