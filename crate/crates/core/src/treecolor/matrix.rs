use super::{ColorIndex, PackedColorTree, QueryStats};
use crate::bitpack::{test_bit, transpose, BitMatrix, BitString, WORD_BITS};
use crate::tree::{NodeId, NONE};

/// Color matrix over pre-order positions plus blocked ancestor sets.
///
/// Row `c` of the matrix marks the pre-order positions of nodes colored `c`.
/// Rows are packed back to back, `t` bits each, so a 64-position block of a
/// row is read from at most two words. The
/// proper-ancestor set `A(v)` is not stored as a `t`-bit string per node.
/// Since ancestors precede `v` in pre-order, `A(v)` splits into one word per
/// 64-position block, and walking from `v` to the parent of its highest
/// ancestor inside the same block enumerates those words from the deepest
/// block up. `within[x]` holds the proper ancestors of `x` that share its
/// block and `jump[x]` is that parent.
#[derive(Clone, Debug)]
pub struct MatrixIndex {
    sigma: usize,
    rows: Vec<u64>,
    pre: Vec<u32>,
    node_at: Vec<u32>,
    within: Vec<u64>,
    jump: Vec<u32>,
}

impl MatrixIndex {
    pub fn build(t: &PackedColorTree) -> MatrixIndex {
        let tree = t.tree();
        let n = tree.len();
        let order = tree.preorder();
        let mut pre = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            pre[v] = i as u32;
        }
        let mut by_pre = BitMatrix::zeros(n, t.sigma());
        for (i, &v) in order.iter().enumerate() {
            for c in t.color(v).iter_ones() {
                by_pre.set(i, c, true);
            }
        }
        let m = transpose(&by_pre);
        let mut rows = vec![0u64; (n * t.sigma()).div_ceil(WORD_BITS)];
        for c in 0..t.sigma() {
            for i in m.row(c).iter_ones() {
                let bit = c * n + i;
                rows[bit / WORD_BITS] |= 1u64 << (bit % WORD_BITS);
            }
        }
        let mut within = vec![0u64; n];
        let mut jump = vec![NONE; n];
        for &v in &order {
            let Some(p) = tree.parent(v) else { continue };
            let (bv, bp) = (pre[v] as usize / WORD_BITS, pre[p] as usize / WORD_BITS);
            if bv == bp {
                within[v] = within[p] | 1u64 << (pre[p] as usize % WORD_BITS);
                jump[v] = jump[p];
            } else {
                jump[v] = p as u32;
            }
        }
        MatrixIndex {
            sigma: t.sigma(),
            rows,
            pre,
            node_at: order.iter().map(|&v| v as u32).collect(),
            within,
            jump,
        }
    }

    /// The proper-ancestor set `A(v)` over pre-order positions.
    pub fn ancestor_bits(&self, v: NodeId) -> BitString {
        let mut a = BitString::zeros(self.pre.len());
        let mut x = v as u32;
        let mut first = true;
        while x != NONE {
            let xi = x as usize;
            let block = self.pre[xi] as usize / WORD_BITS;
            let mut mask = self.within[xi];
            if !first {
                mask |= 1u64 << (self.pre[xi] as usize % WORD_BITS);
            }
            a.words_mut()[block] |= mask;
            first = false;
            x = self.jump[xi];
        }
        a
    }

    /// Pre-order position of `v`.
    pub fn preorder_index(&self, v: NodeId) -> usize {
        self.pre[v] as usize
    }

    /// Row `c` of the color matrix over pre-order positions.
    pub fn color_row(&self, c: usize) -> BitString {
        let n = self.pre.len();
        BitString::from_indices(n, (0..n).filter(|&i| test_bit(&self.rows, c * n + i))).expect("in range")
    }

    /// Positions `64 * block ..` of row `c`; bits past the row end are
    /// garbage and must be masked by the caller.
    #[inline]
    fn block_of(&self, c: usize, block: usize) -> u64 {
        let start = c * self.pre.len() + block * WORD_BITS;
        let (w, o) = (start / WORD_BITS, start % WORD_BITS);
        let lo = self.rows[w] >> o;
        match self.rows.get(w + 1) {
            Some(&hi) if o > 0 => lo | hi << (WORD_BITS - o),
            _ => lo,
        }
    }

    #[inline]
    fn ancestors_with_self(&self, x: usize) -> u64 {
        self.within[x] | 1u64 << (self.pre[x] as usize % WORD_BITS)
    }
}

impl ColorIndex for MatrixIndex {
    fn len(&self) -> usize {
        self.pre.len()
    }

    fn sigma(&self) -> usize {
        self.sigma
    }

    fn firstcolor_unchecked(&self, v: NodeId, c: usize, stats: &mut QueryStats) -> Option<NodeId> {
        let mut x = v as u32;
        while x != NONE {
            let xi = x as usize;
            let block = self.pre[xi] as usize / WORD_BITS;
            stats.word_reads += 1;
            let r = self.block_of(c, block) & self.ancestors_with_self(xi);
            if r != 0 {
                let i = block * WORD_BITS + (WORD_BITS - 1 - r.leading_zeros() as usize);
                return Some(self.node_at[i] as usize);
            }
            x = self.jump[xi];
        }
        None
    }

    fn lastcolor_unchecked(
        &self,
        u: NodeId,
        v: NodeId,
        c: usize,
        include_u: bool,
        stats: &mut QueryStats,
    ) -> Option<NodeId> {
        let lo = self.pre[u] as usize + usize::from(!include_u);
        let lo_block = lo / WORD_BITS;
        let mut best = None;
        let mut x = v as u32;
        while x != NONE {
            let xi = x as usize;
            let block = self.pre[xi] as usize / WORD_BITS;
            if block < lo_block {
                break;
            }
            stats.word_reads += 1;
            let mut r = self.block_of(c, block) & self.ancestors_with_self(xi);
            if block == lo_block {
                r &= !0u64 << (lo % WORD_BITS);
            }
            if r != 0 {
                best = Some(block * WORD_BITS + r.trailing_zeros() as usize);
            }
            x = self.jump[xi];
        }
        best.map(|i| self.node_at[i] as usize)
    }

    fn space_words(&self) -> usize {
        self.rows.len() + self.within.len() + (self.pre.len() + self.node_at.len() + self.jump.len()).div_ceil(2)
    }
}
