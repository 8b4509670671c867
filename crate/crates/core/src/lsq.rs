//! Labelled successor and predecessor queries on an SLP.
//!
//! `ls(i, c)` is the least `j > i` with `S[j] = c` and `lp(i, c)` the
//! greatest `j < i` with `S[j] = c`, both answered without expanding `S`.
//!
//! Every heavy tree of the SLP gets one clustered color engine over `2σ`
//! colors. A node `v` carries color `c` when `c` occurs in `S(left(v))`
//! and the left child is light, and color `σ + c` when `c` occurs in
//! `S(right(v))` and the right child is light.

use crate::bitpack::{test_bit, words_for, BitString};
use crate::error::{Error, Result};
use crate::slp::{Side, Slp, SlpHeavyForest};
use crate::tree::Tree;
use crate::treecolor::{ClusteredIndex, ColorIndex, Flavor, PackedColorTree, QueryStats};

/// Per-query instrumentation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LsStats {
    /// Heavy trees on the access path to `i`.
    pub visits: u64,
    /// Color queries issued while walking up the access path.
    pub walkup_queries: u64,
    /// Color queries issued while descending to the answer.
    pub descent_queries: u64,
    /// Counters from the color engines.
    pub engine: QueryStats,
}

impl LsStats {
    pub fn engine_queries(&self) -> u64 {
        self.walkup_queries + self.descent_queries
    }
}

#[derive(Clone, Debug)]
pub struct LsIndex {
    slp: Slp,
    forest: SlpHeavyForest,
    flavor: Flavor,
    sw: usize,
    charset: Vec<u64>,
    local: Vec<u32>,
    members: Vec<Vec<u32>>,
    engines: Vec<Option<ClusteredIndex>>,
}

impl LsIndex {
    pub fn new(slp: Slp, flavor: Flavor) -> LsIndex {
        let forest = SlpHeavyForest::build(&slp);
        LsIndex::build(slp, forest, flavor)
    }

    pub fn build(slp: Slp, forest: SlpHeavyForest, flavor: Flavor) -> LsIndex {
        let n = slp.num_rules();
        let sigma = slp.sigma();
        let sw = words_for(sigma);
        let mut charset = vec![0u64; n * sw];
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); forest.tree_count()];
        let mut local = vec![u32::MAX; n];
        for v in children_first(&slp) {
            if let Some((l, r)) = slp.children(v) {
                for w in 0..sw {
                    charset[v * sw + w] = charset[l * sw + w] | charset[r * sw + w];
                }
            } else if let crate::slp::Rule::Terminal(s) = slp.rule(v) {
                charset[v * sw + s as usize / 64] |= 1 << (s % 64);
            }
            let t = forest.tree_of(v).expect("reachable");
            local[v] = members[t].len() as u32;
            members[t].push(v as u32);
        }
        let engines = members
            .iter()
            .map(|nodes| {
                let parent: Vec<Option<usize>> = nodes
                    .iter()
                    .map(|&v| forest.heavy_child(&slp, v as usize).map(|h| local[h] as usize))
                    .collect();
                let tree = Tree::from_parents(&parent).expect("heavy tree");
                let colors = nodes
                    .iter()
                    .map(|&v| {
                        let v = v as usize;
                        let mut b = BitString::zeros(2 * sigma);
                        if let Some((l, r)) = slp.children(v) {
                            let light = if forest.heavy_is_left(v) { r } else { l };
                            let base = if forest.heavy_is_left(v) { sigma } else { 0 };
                            for c in 0..sigma {
                                if test_bit(&charset[light * sw..], c) {
                                    b.set(base + c, true);
                                }
                            }
                        }
                        b
                    })
                    .collect::<Vec<BitString>>();
                if colors.iter().all(BitString::none) {
                    return None;
                }
                let pct = PackedColorTree::new(tree, 2 * sigma, colors).expect("summaries");
                Some(ClusteredIndex::build(&pct, flavor))
            })
            .collect();
        LsIndex {
            slp,
            forest,
            flavor,
            sw,
            charset,
            local,
            members,
            engines,
        }
    }

    pub fn slp(&self) -> &Slp {
        &self.slp
    }

    pub fn forest(&self) -> &SlpHeavyForest {
        &self.forest
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Characters occurring in `S(v)`.
    pub fn charset(&self, v: usize) -> BitString {
        let words = self.charset[v * self.sw..(v + 1) * self.sw].to_vec();
        BitString::from_words(words, self.slp.sigma()).expect("canonical")
    }

    /// `L(v)`: characters of the left child when it is light, else empty.
    pub fn left_summary(&self, v: usize) -> BitString {
        match self.slp.children(v) {
            Some((l, _)) if !self.forest.heavy_is_left(v) => self.charset(l),
            _ => BitString::zeros(self.slp.sigma()),
        }
    }

    /// `R(v)`: characters of the right child when it is light, else empty.
    pub fn right_summary(&self, v: usize) -> BitString {
        match self.slp.children(v) {
            Some((_, r)) if self.forest.heavy_is_left(v) => self.charset(r),
            _ => BitString::zeros(self.slp.sigma()),
        }
    }

    #[inline]
    fn has(&self, v: usize, c: usize) -> bool {
        test_bit(&self.charset[v * self.sw..], c)
    }

    /// Deepest forest ancestor-or-self of `v` carrying `color`.
    fn first(&self, v: usize, color: usize, st: &mut LsStats) -> Option<usize> {
        let t = self.forest.tree_of(v).expect("reachable");
        self.engines[t]
            .as_ref()?
            .firstcolor_unchecked(self.local[v] as usize, color, &mut st.engine)
            .map(|l| self.member(t, l))
    }

    /// Shallowest node carrying `color` on the forest path from `u` down to `v`.
    fn last(&self, u: usize, v: usize, color: usize, include_u: bool, st: &mut LsStats) -> Option<usize> {
        let t = self.forest.tree_of(v).expect("reachable");
        self.engines[t]
            .as_ref()?
            .lastcolor_unchecked(self.local[u] as usize, self.local[v] as usize, color, include_u, &mut st.engine)
            .map(|l| self.member(t, l))
    }

    #[inline]
    fn member(&self, tree: usize, local: usize) -> usize {
        self.members[tree][local] as usize
    }

    fn check_symbol(&self, c: usize) -> bool {
        c < self.slp.sigma()
    }

    /// `ls` on a character; characters outside the alphabet give `None`.
    pub fn ls_char(&self, i: u64, ch: char) -> Result<Option<u64>> {
        match self.slp.alphabet().index_of(ch) {
            Some(c) => self.ls(i, c),
            None => self.ls(i, usize::MAX),
        }
    }

    /// `lp` on a character; characters outside the alphabet give `None`.
    pub fn lp_char(&self, i: u64, ch: char) -> Result<Option<u64>> {
        match self.slp.alphabet().index_of(ch) {
            Some(c) => self.lp(i, c),
            None => self.lp(i, usize::MAX),
        }
    }

    /// Least `j > i` with `S[j] = c`, for `0 <= i <= N`.
    pub fn ls(&self, i: u64, c: usize) -> Result<Option<u64>> {
        self.ls_with_stats(i, c, &mut LsStats::default())
    }

    /// Greatest `j < i` with `S[j] = c`, for `1 <= i <= N + 1`.
    pub fn lp(&self, i: u64, c: usize) -> Result<Option<u64>> {
        self.lp_with_stats(i, c, &mut LsStats::default())
    }

    pub fn ls_with_stats(&self, i: u64, c: usize, st: &mut LsStats) -> Result<Option<u64>> {
        let n = self.slp.len();
        if i > n {
            return Err(Error::OutOfRange {
                what: "position",
                index: i,
                bound: n,
            });
        }
        if !self.check_symbol(c) || i == n {
            return Ok(None);
        }
        let root = self.slp.root();
        if i == 0 {
            return Ok(self.has(root, c).then(|| self.descend_first(root, 0, c, st)));
        }
        let trace = self.forest.access(&self.slp, i)?;
        st.visits = trace.visits.len() as u64;
        let sigma = self.slp.sigma();
        for vis in trace.visits.iter().rev() {
            if vis.side == Side::Left {
                let (l, r) = self.slp.children(vis.exit).expect("nonterminal exit");
                if self.has(r, c) {
                    let off = self.forest.exit_offset(vis) + self.slp.len_of(l);
                    return Ok(Some(self.descend_first(r, off, c, st)));
                }
            }
            st.walkup_queries += 1;
            if let Some(x) = self.last(vis.exit, vis.entry, sigma + c, false, st) {
                let (l, r) = self.slp.children(x).expect("colored nodes are nonterminals");
                let off = self.forest.offset_in_tree(vis.entry, vis.offset, x) + self.slp.len_of(l);
                return Ok(Some(self.descend_first(r, off, c, st)));
            }
        }
        Ok(None)
    }

    pub fn lp_with_stats(&self, i: u64, c: usize, st: &mut LsStats) -> Result<Option<u64>> {
        let n = self.slp.len();
        if i == 0 || i > n + 1 {
            return Err(Error::OutOfRange {
                what: "position",
                index: i,
                bound: n + 1,
            });
        }
        if !self.check_symbol(c) || i == 1 {
            return Ok(None);
        }
        let root = self.slp.root();
        if i == n + 1 {
            return Ok(self.has(root, c).then(|| self.descend_last(root, 0, c, st)));
        }
        let trace = self.forest.access(&self.slp, i)?;
        st.visits = trace.visits.len() as u64;
        for vis in trace.visits.iter().rev() {
            if vis.side == Side::Right {
                let (l, _) = self.slp.children(vis.exit).expect("nonterminal exit");
                if self.has(l, c) {
                    let off = self.forest.exit_offset(vis);
                    return Ok(Some(self.descend_last(l, off, c, st)));
                }
            }
            st.walkup_queries += 1;
            if let Some(x) = self.last(vis.exit, vis.entry, c, false, st) {
                let (l, _) = self.slp.children(x).expect("colored nodes are nonterminals");
                let off = self.forest.offset_in_tree(vis.entry, vis.offset, x);
                return Ok(Some(self.descend_last(l, off, c, st)));
            }
        }
        Ok(None)
    }

    /// First position of `c` inside `S(w)`, which contains `c`; `off` is
    /// the 0-based start of `S(w)`.
    fn descend_first(&self, mut w: usize, mut off: u64, c: usize, st: &mut LsStats) -> u64 {
        let sigma = self.slp.sigma();
        loop {
            st.descent_queries += 1;
            if let Some(x) = self.first(w, c, st) {
                off = self.forest.offset_in_tree(w, off, x);
                w = self.slp.children(x).expect("nonterminal").0;
                continue;
            }
            let t = self.forest.tree_of(w).expect("reachable");
            let root = self.forest.root_of(t);
            if self.has(root, c) {
                return off + self.forest.tpos(w) + 1;
            }
            st.descent_queries += 1;
            let x = self
                .last(root, w, sigma + c, true, st)
                .expect("the character occurs below w");
            let (l, r) = self.slp.children(x).expect("nonterminal");
            off = self.forest.offset_in_tree(w, off, x) + self.slp.len_of(l);
            w = r;
        }
    }

    /// Last position of `c` inside `S(w)`, mirror of [`Self::descend_first`].
    fn descend_last(&self, mut w: usize, mut off: u64, c: usize, st: &mut LsStats) -> u64 {
        let sigma = self.slp.sigma();
        loop {
            st.descent_queries += 1;
            if let Some(x) = self.first(w, sigma + c, st) {
                let (l, r) = self.slp.children(x).expect("nonterminal");
                off = self.forest.offset_in_tree(w, off, x) + self.slp.len_of(l);
                w = r;
                continue;
            }
            let t = self.forest.tree_of(w).expect("reachable");
            let root = self.forest.root_of(t);
            if self.has(root, c) {
                return off + self.forest.tpos(w) + 1;
            }
            st.descent_queries += 1;
            let x = self.last(root, w, c, true, st).expect("the character occurs below w");
            off = self.forest.offset_in_tree(w, off, x);
            w = self.slp.children(x).expect("nonterminal").0;
        }
    }

    /// Words held by the index, the grammar and its heavy forest included.
    pub fn space_words(&self) -> usize {
        let n = self.slp.num_rules();
        let grammar = 2 * n;
        let engines: usize = self.engines.iter().flatten().map(|e| e.space_words()).sum();
        grammar + self.forest.space_words() + self.charset.len() + self.local.len().div_ceil(2) + self.local.len().div_ceil(2) + engines
    }
}

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
        if std::mem::replace(&mut seen[v], true) {
            continue;
        }
        stack.push((v, true));
        if let Some((l, r)) = slp.children(v) {
            stack.extend([(r, false), (l, false)]);
        }
    }
    order
}
