use super::{NodeId, Tree, NONE};
use crate::error::{Error, Result};

/// Jump-pointer level ancestor structure: `up[k][v]` is the ancestor of `v`
/// at distance `2^k`.
#[derive(Clone, Debug)]
pub struct LevelAncestorIndex {
    depth: Vec<u32>,
    up: Vec<Vec<u32>>,
    root: u32,
}

impl LevelAncestorIndex {
    pub fn new(tree: &Tree) -> LevelAncestorIndex {
        let n = tree.len();
        let depth: Vec<u32> = tree.depths().into_iter().map(|d| d as u32).collect();
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let levels = (u32::BITS - max_depth.leading_zeros()) as usize;
        let mut up = Vec::with_capacity(levels);
        if levels > 0 {
            up.push(
                (0..n)
                    .map(|v| tree.parent(v).map_or(NONE, |p| p as u32))
                    .collect::<Vec<_>>(),
            );
        }
        for k in 1..levels {
            let prev: &Vec<u32> = &up[k - 1];
            let next = prev
                .iter()
                .map(|&a| if a == NONE { NONE } else { prev[a as usize] })
                .collect();
            up.push(next);
        }
        LevelAncestorIndex {
            depth,
            up,
            root: tree.root() as u32,
        }
    }

    #[inline]
    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v] as usize
    }

    /// The ancestor of `v` at depth `d` (root depth 0).
    pub fn la(&self, v: NodeId, d: usize) -> Result<NodeId> {
        let dv = self.depth(v);
        if d > dv {
            return Err(Error::OutOfRange {
                what: "level ancestor depth",
                index: d as u64,
                bound: dv as u64,
            });
        }
        Ok(self.la_unchecked(v, d))
    }

    #[inline]
    pub(crate) fn la_unchecked(&self, v: NodeId, d: usize) -> NodeId {
        if d == 0 {
            return self.root as usize;
        }
        let mut x = v as u32;
        let mut diff = self.depth[v] - d as u32;
        while diff != 0 {
            let k = diff.trailing_zeros() as usize;
            x = self.up[k][x as usize];
            diff &= diff - 1;
        }
        x as usize
    }

    pub fn space_words(&self) -> usize {
        (self.depth.len() + self.up.iter().map(Vec::len).sum::<usize>()).div_ceil(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn walk(tree: &Tree, depth: &[usize], v: NodeId, d: usize) -> NodeId {
        let mut x = v;
        for _ in d..depth[v] {
            x = tree.parent(x).unwrap();
        }
        x
    }

    #[test]
    fn endpoints() {
        let t = Tree::path(10);
        let la = LevelAncestorIndex::new(&t);
        for v in 0..10 {
            assert_eq!(la.la(v, la.depth(v)).unwrap(), v);
            assert_eq!(la.la(v, 0).unwrap(), 0);
        }
        assert!(la.la(3, 4).is_err());
        let single = LevelAncestorIndex::new(&Tree::path(1));
        assert_eq!(single.la(0, 0).unwrap(), 0);
    }

    #[test]
    fn agrees_with_parent_walk() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut queries = 0;
        while queries < 100_000 {
            let n = rng.random_range(1..400);
            let t = if rng.random_bool(0.3) {
                synth::random_deep_tree(&mut rng, n)
            } else {
                synth::random_tree(&mut rng, n)
            };
            let depth = t.depths();
            let la = LevelAncestorIndex::new(&t);
            for _ in 0..500 {
                let v = rng.random_range(0..n);
                let d = rng.random_range(0..=depth[v]);
                assert_eq!(la.la(v, d).unwrap(), walk(&t, &depth, v, d));
                queries += 1;
            }
        }
    }
}
