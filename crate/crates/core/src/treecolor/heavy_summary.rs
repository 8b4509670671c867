use super::{ColorIndex, PackedColorTree, QueryStats};
use crate::bitpack::{or_words, test_bit, words_for};
use crate::tree::{heavy_path_decompose, NodeId, NONE};

const MAX_LEVELS: usize = 34;

/// Heavy paths with a balanced summary tree and prefix summaries each.
///
/// For a path `v_0 .. v_{k-1}` (head first) the index stores `k` prefix
/// summaries `P(i) = C(v_0) | .. | C(v_i)` followed by the levels of a
/// balanced binary tree over the path: level 0 holds `C(v_i)`, level `l`
/// holds `ceil(k / 2^l)` summaries, and node `(l, i)` has children
/// `(l-1, 2i)` and `(l-1, 2i+1)`.
#[derive(Clone, Debug)]
pub struct HeavySummaryIndex {
    sigma: usize,
    sw: usize,
    path_of: Vec<u32>,
    pos: Vec<u32>,
    paths: Vec<PathEntry>,
    nodes: Vec<u32>,
    words: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
struct PathEntry {
    head_parent: u32,
    len: u32,
    node_off: u32,
    base: usize,
}

#[inline]
fn level_count(k: usize, l: usize) -> usize {
    (k + (1 << l) - 1) >> l
}

/// Word offsets of every level of one path's balanced tree.
struct Levels {
    off: [usize; MAX_LEVELS],
    top: usize,
    k: usize,
}

impl HeavySummaryIndex {
    pub fn build(t: &PackedColorTree) -> HeavySummaryIndex {
        let tree = t.tree();
        let sigma = t.sigma();
        let sw = words_for(sigma);
        let hpd = heavy_path_decompose(tree);
        let n = tree.len();
        let mut path_of = vec![0u32; n];
        let mut pos = vec![0u32; n];
        let mut paths = Vec::with_capacity(hpd.paths().len());
        let mut nodes = Vec::with_capacity(n);
        let mut words = Vec::new();
        for (id, path) in hpd.paths().iter().enumerate() {
            let k = path.len();
            let base = words.len();
            paths.push(PathEntry {
                head_parent: tree.parent(path[0]).map_or(NONE, |p| p as u32),
                len: k as u32,
                node_off: nodes.len() as u32,
                base,
            });
            let mut acc = vec![0u64; sw];
            for (i, &v) in path.iter().enumerate() {
                path_of[v] = id as u32;
                pos[v] = i as u32;
                nodes.push(v as u32);
                or_words(&mut acc, t.color(v).words());
                words.extend_from_slice(&acc);
            }
            let mut level_start = words.len();
            for &v in path {
                words.extend_from_slice(t.color(v).words());
            }
            let mut l = 0;
            while level_count(k, l) > 1 {
                let below = level_count(k, l);
                let start = words.len();
                for i in 0..level_count(k, l + 1) {
                    let mut s = words[level_start + 2 * i * sw..level_start + (2 * i + 1) * sw].to_vec();
                    if 2 * i + 1 < below {
                        or_words(&mut s, &words[level_start + (2 * i + 1) * sw..level_start + (2 * i + 2) * sw]);
                    }
                    words.extend_from_slice(&s);
                }
                level_start = start;
                l += 1;
            }
        }
        HeavySummaryIndex {
            sigma,
            sw,
            path_of,
            pos,
            paths,
            nodes,
            words,
        }
    }

    /// Number of heavy paths.
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    #[inline]
    fn prefix_has(&self, p: &PathEntry, i: usize, c: usize) -> bool {
        test_bit(&self.words[p.base + i * self.sw..], c)
    }

    fn levels(&self, p: &PathEntry) -> Levels {
        let k = p.len as usize;
        let mut off = [0; MAX_LEVELS];
        off[0] = p.base + k * self.sw;
        let mut l = 0;
        while level_count(k, l) > 1 {
            off[l + 1] = off[l] + level_count(k, l) * self.sw;
            l += 1;
        }
        Levels { off, top: l, k }
    }

    #[inline]
    fn has(&self, lv: &Levels, l: usize, i: usize, c: usize, stats: &mut QueryStats) -> bool {
        stats.tree_steps += 1;
        test_bit(&self.words[lv.off[l] + i * self.sw..], c)
    }

    #[inline]
    fn node(&self, p: &PathEntry, i: usize) -> NodeId {
        self.nodes[p.node_off as usize + i] as usize
    }

    /// Rightmost colored leaf below `(l, i)`, which is known to contain `c`.
    fn rightmost_below(&self, lv: &Levels, mut l: usize, mut i: usize, c: usize, stats: &mut QueryStats) -> usize {
        while l > 0 {
            let right = 2 * i + 1;
            i = if right < level_count(lv.k, l - 1) && self.has(lv, l - 1, right, c, stats) {
                right
            } else {
                2 * i
            };
            l -= 1;
        }
        i
    }

    /// Leftmost colored leaf below `(l, i)`, which is known to contain `c`.
    fn leftmost_below(&self, lv: &Levels, mut l: usize, mut i: usize, c: usize, stats: &mut QueryStats) -> usize {
        while l > 0 {
            i = if self.has(lv, l - 1, 2 * i, c, stats) {
                2 * i
            } else {
                2 * i + 1
            };
            l -= 1;
        }
        i
    }

    /// Deepest colored position `<= i`; one must exist.
    fn deepest_up_to(&self, lv: &Levels, i: usize, c: usize, stats: &mut QueryStats) -> usize {
        if self.has(lv, 0, i, c, stats) {
            return i;
        }
        let (mut l, mut a) = (0, i);
        loop {
            if a % 2 == 1 && self.has(lv, l, a - 1, c, stats) {
                return self.rightmost_below(lv, l, a - 1, c, stats);
            }
            a /= 2;
            l += 1;
            debug_assert!(l <= lv.top, "prefix summary promised a colored node");
        }
    }

    /// Leftmost colored position in `lo..=hi`.
    fn leftmost_in_range(&self, lv: &Levels, lo: usize, hi: usize, c: usize, stats: &mut QueryStats) -> Option<usize> {
        if self.has(lv, 0, lo, c, stats) {
            return Some(lo);
        }
        let (mut l, mut a) = (0, lo);
        while l < lv.top {
            if a % 2 == 0 {
                let sib = a + 1;
                if sib >= level_count(lv.k, l) || (sib << l) > hi {
                    return None;
                }
                if self.has(lv, l, sib, c, stats) {
                    let r = self.leftmost_below(lv, l, sib, c, stats);
                    return (r <= hi).then_some(r);
                }
            }
            a /= 2;
            l += 1;
        }
        None
    }
}

impl ColorIndex for HeavySummaryIndex {
    fn len(&self) -> usize {
        self.path_of.len()
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn firstcolor_unchecked(&self, v: NodeId, c: usize, stats: &mut QueryStats) -> Option<NodeId> {
        let mut x = v;
        loop {
            let p = &self.paths[self.path_of[x] as usize];
            let i = self.pos[x] as usize;
            stats.path_hops += 1;
            if self.prefix_has(p, i, c) {
                let lv = self.levels(p);
                return Some(self.node(p, self.deepest_up_to(&lv, i, c, stats)));
            }
            if p.head_parent == NONE {
                return None;
            }
            x = p.head_parent as usize;
        }
    }

    fn lastcolor_unchecked(
        &self,
        u: NodeId,
        v: NodeId,
        c: usize,
        include_u: bool,
        stats: &mut QueryStats,
    ) -> Option<NodeId> {
        let pu = self.path_of[u];
        let mut best = None;
        let mut x = v;
        loop {
            let id = self.path_of[x];
            let p = &self.paths[id as usize];
            let hi = self.pos[x] as usize;
            stats.path_hops += 1;
            if id == pu {
                let lo = self.pos[u] as usize + usize::from(!include_u);
                if lo <= hi && self.prefix_has(p, hi, c) {
                    let lv = self.levels(p);
                    let found = if lo == 0 {
                        Some(self.leftmost_below(&lv, lv.top, 0, c, stats))
                    } else {
                        self.leftmost_in_range(&lv, lo, hi, c, stats)
                    };
                    if let Some(i) = found {
                        return Some(self.node(p, i));
                    }
                }
                break;
            }
            if self.prefix_has(p, hi, c) {
                best = Some(p);
            }
            x = p.head_parent as usize;
        }
        // Everything on a path above the segment's end is on the query path,
        // so the path's leftmost colored node is the answer.
        best.map(|p| {
            let lv = self.levels(p);
            self.node(p, self.leftmost_below(&lv, lv.top, 0, c, stats))
        })
    }

    fn space_words(&self) -> usize {
        let halves = self.path_of.len() + self.pos.len() + self.nodes.len() + 3 * self.paths.len();
        self.words.len() + self.paths.len() + halves.div_ceil(2)
    }
}
