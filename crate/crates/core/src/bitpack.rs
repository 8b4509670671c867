//! Word-packed bit strings and bit matrices.
//!
//! Bit `i` of a [`BitString`] lives in word `i / 64` at bit position
//! `i % 64`. Index 0 plays the role of the first element of the set (the
//! `b1` of a textbook bit string); every module uses this one convention.
//! Bits at positions `>= len` in the last word are always zero.

use crate::error::{Error, Result};

/// Machine word size in bits.
pub const WORD_BITS: usize = 64;

/// Number of words needed to hold `bits` bits.
#[inline]
pub const fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// A fixed-length set over the universe `0..len`, packed into words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitString[{}](", self.len)?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl BitString {
    /// The empty set over a universe of `len` elements.
    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// The full set over a universe of `len` elements.
    pub fn ones(len: usize) -> Self {
        let mut b = BitString {
            words: vec![!0; words_for(len)],
            len,
        };
        b.canonicalize();
        b
    }

    /// Builds a bit string from raw words, clearing any padding bits.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Result<Self> {
        if words.len() != words_for(len) {
            return Err(Error::LengthMismatch {
                left: words.len() * WORD_BITS,
                right: len,
            });
        }
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Ok(BitString { words, len })
    }

    /// Builds a bit string with the listed indices set.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut b = BitString::zeros(len);
        for i in indices {
            b.try_set(i, true)?;
        }
        Ok(b)
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn from_bit_str(s: &str) -> Self {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| *c == '0' || *c == '1')
            .map(|c| c == '1')
            .collect();
        let mut b = BitString::zeros(bits.len());
        for (i, bit) in bits.into_iter().enumerate() {
            b.set(i, bit);
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Mutable access to the words. Callers must keep padding bits zero;
    /// [`BitString::canonicalize`] restores the invariant.
    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn canonicalize(&mut self) {
        let mask = tail_mask(self.len);
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn try_set(&mut self, i: usize, value: bool) -> Result<()> {
        if i >= self.len {
            return Err(Error::OutOfRange {
                what: "bit",
                index: i as u64,
                bound: self.len as u64,
            });
        }
        self.set(i, value);
        Ok(())
    }

    /// True when no bit is set.
    pub fn none(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    fn check_len(&self, other: &BitString) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    pub fn and(&self, other: &BitString) -> Result<BitString> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitString) -> Result<BitString> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn not(&self) -> BitString {
        let mut out = BitString {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        out.canonicalize();
        out
    }

    pub fn or_assign(&mut self, other: &BitString) -> Result<()> {
        self.check_len(other)?;
        or_words(&mut self.words, &other.words);
        Ok(())
    }

    fn zip_with(&self, other: &BitString, f: impl Fn(u64, u64) -> u64) -> Result<BitString> {
        self.check_len(other)?;
        Ok(BitString {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| f(*a, *b))
                .collect(),
            len: self.len,
        })
    }

    /// Smallest set index, see [`lsb_index`].
    pub fn lsb_index(&self) -> Option<usize> {
        lsb_index(self)
    }

    /// Largest set index, see [`msb_index`].
    pub fn msb_index(&self) -> Option<usize> {
        msb_index(self)
    }
}

/// `dst |= src`, word by word.
#[inline]
pub fn or_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= *s;
    }
}

/// Tests bit `i` of a packed word slice.
#[inline]
pub fn test_bit(words: &[u64], i: usize) -> bool {
    (words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
}

/// Smallest index `i` with `b[i] = 1`, scanning words low to high.
pub fn lsb_index(b: &BitString) -> Option<usize> {
    lowest_in_words(&b.words)
}

/// Largest index `i` with `b[i] = 1`, scanning words high to low.
pub fn msb_index(b: &BitString) -> Option<usize> {
    highest_in_words(&b.words)
}

#[inline]
pub(crate) fn lowest_in_words(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
}

#[inline]
pub(crate) fn highest_in_words(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
}

/// Bitwise OR of bit strings of equal length `len`.
pub fn summary(bs: &[BitString], len: usize) -> Result<BitString> {
    let mut out = BitString::zeros(len);
    for b in bs {
        out.or_assign(b)?;
    }
    Ok(out)
}

/// Zeroes bits `0..k`.
pub fn clear_prefix(b: &BitString, k: usize) -> Result<BitString> {
    if k > b.len {
        return Err(Error::OutOfRange {
            what: "prefix length",
            index: k as u64,
            bound: b.len as u64,
        });
    }
    let mut out = b.clone();
    clear_prefix_in_place(&mut out.words, k);
    Ok(out)
}

#[inline]
pub(crate) fn clear_prefix_in_place(words: &mut [u64], k: usize) {
    let full = k / WORD_BITS;
    for w in &mut words[..full] {
        *w = 0;
    }
    let rem = k % WORD_BITS;
    if rem != 0 {
        words[full] &= !((1u64 << rem) - 1);
    }
}

/// A `rows x cols` bit matrix stored as one packed row per bit string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitString>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitString::zeros(cols); rows],
        }
    }

    /// Builds a matrix from rows, each of length `cols`.
    pub fn from_rows(rows: Vec<BitString>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    left: r.len(),
                    right: cols,
                });
            }
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitString {
        &self.data[r]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn into_rows(self) -> Vec<BitString> {
        self.data
    }

    /// Total words of packed storage.
    pub fn word_count(&self) -> usize {
        self.data.iter().map(|r| r.words().len()).sum()
    }
}

/// Transposes a 64x64 block given as 64 row words: bit `c` of `block[r]`
/// moves to bit `r` of `out[c]`. Six rounds of half-block swaps.
pub fn transpose_block(block: &[u64; WORD_BITS]) -> [u64; WORD_BITS] {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    let mut m = *block;
    for round in (0..6).rev() {
        let width = 1usize << round;
        let mask = MASKS[round];
        let mut top = 0;
        while top < WORD_BITS {
            for r in top..top + width {
                // Swap the high half of row r with the low half of row r + width.
                let a = m[r];
                let b = m[r + width];
                let t = ((a >> width) ^ b) & mask;
                m[r + width] = b ^ t;
                m[r] = a ^ (t << width);
            }
            top += 2 * width;
        }
    }
    m
}

/// Transposes a 64x64 [`BitMatrix`].
pub fn transpose_word_block(m: &BitMatrix) -> Result<BitMatrix> {
    if m.rows != WORD_BITS || m.cols != WORD_BITS {
        return Err(Error::BadDimensions {
            expected: "64x64",
            rows: m.rows,
            cols: m.cols,
        });
    }
    let mut block = [0u64; WORD_BITS];
    for (r, w) in block.iter_mut().enumerate() {
        *w = m.data[r].words[0];
    }
    let out = transpose_block(&block);
    Ok(BitMatrix {
        rows: WORD_BITS,
        cols: WORD_BITS,
        data: out
            .iter()
            .map(|w| BitString {
                words: vec![*w],
                len: WORD_BITS,
            })
            .collect(),
    })
}

/// Transposes an arbitrary matrix by cutting it into 64x64 blocks (zero
/// padded at the edges), transposing each block and placing block `(i, j)`
/// at `(j, i)`.
pub fn transpose(m: &BitMatrix) -> BitMatrix {
    let mut out = BitMatrix::zeros(m.cols, m.rows);
    let row_blocks = words_for(m.rows);
    let col_blocks = words_for(m.cols);
    let mut block = [0u64; WORD_BITS];
    for rb in 0..row_blocks {
        for cb in 0..col_blocks {
            let mut any = 0u64;
            for (i, w) in block.iter_mut().enumerate() {
                let r = rb * WORD_BITS + i;
                *w = if r < m.rows { m.data[r].words[cb] } else { 0 };
                any |= *w;
            }
            if any == 0 {
                continue;
            }
            let t = transpose_block(&block);
            for (i, w) in t.iter().enumerate() {
                let r = cb * WORD_BITS + i;
                if r < out.rows {
                    out.data[r].words[rb] = *w;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bits(rng: &mut ChaCha8Rng, len: usize, density: f64) -> BitString {
        let mut b = BitString::zeros(len);
        for i in 0..len {
            if rng.random_bool(density) {
                b.set(i, true);
            }
        }
        b
    }

    fn naive_lowest(b: &BitString) -> Option<usize> {
        (0..b.len()).find(|&i| b.get(i))
    }

    fn naive_highest(b: &BitString) -> Option<usize> {
        (0..b.len()).rev().find(|&i| b.get(i))
    }

    fn naive_transpose(m: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(m.cols(), m.rows());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let rows: Vec<_> = (0..rows).map(|_| random_bits(rng, cols, 0.3)).collect();
        BitMatrix::from_rows(rows, cols).unwrap()
    }

    #[test]
    fn lsb_msb_small_examples() {
        let b = BitString::from_bit_str("0110");
        assert_eq!(lsb_index(&b), Some(1));
        assert_eq!(msb_index(&b), Some(2));
        assert_eq!(lsb_index(&BitString::zeros(256)), None);
        assert_eq!(msb_index(&BitString::zeros(256)), None);
        let mut w = BitString::zeros(64);
        w.set(63, true);
        assert_eq!(msb_index(&w), Some(63));
    }

    #[test]
    fn lsb_msb_random_512() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let b = random_bits(&mut rng, 512, 0.01);
            assert_eq!(lsb_index(&b), naive_lowest(&b));
            assert_eq!(msb_index(&b), naive_highest(&b));
        }
    }

    #[test]
    fn summary_examples() {
        let s = summary(
            &[BitString::from_bit_str("1010"), BitString::from_bit_str("0110")],
            4,
        )
        .unwrap();
        assert_eq!(s, BitString::from_bit_str("1110"));
        assert_eq!(summary(&[], 8).unwrap(), BitString::zeros(8));
        let err = summary(&[BitString::zeros(3)], 4).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn summary_random_320() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let bs: Vec<_> = (0..100).map(|_| random_bits(&mut rng, 320, 0.01)).collect();
        let s = summary(&bs, 320).unwrap();
        for i in 0..320 {
            assert_eq!(s.get(i), bs.iter().any(|b| b.get(i)));
        }
    }

    #[test]
    fn word_block_examples() {
        let mut id = BitMatrix::zeros(64, 64);
        for i in 0..64 {
            id.set(i, i, true);
        }
        assert_eq!(transpose_word_block(&id).unwrap(), id);

        let mut single = BitMatrix::zeros(64, 64);
        single.set(3, 17, true);
        let t = transpose_word_block(&single).unwrap();
        let mut expect = BitMatrix::zeros(64, 64);
        expect.set(17, 3, true);
        assert_eq!(t, expect);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, 64, 64);
        assert_eq!(transpose_word_block(&m).unwrap(), naive_transpose(&m));

        assert!(transpose_word_block(&BitMatrix::zeros(63, 64)).is_err());
    }

    #[test]
    fn transpose_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for bit in [false, true] {
            let mut m = BitMatrix::zeros(1, 1);
            m.set(0, 0, bit);
            assert_eq!(transpose(&m), m);
        }
        let m = random_matrix(&mut rng, 3, 200);
        assert_eq!(transpose(&m), naive_transpose(&m));
        let shapes = [1, 7, 63, 64, 65, 200];
        for &r in &shapes {
            for &c in &shapes {
                let m = random_matrix(&mut rng, r, c);
                let t = transpose(&m);
                assert_eq!(t, naive_transpose(&m), "{r}x{c}");
                assert_eq!(transpose(&t), m, "involution {r}x{c}");
            }
        }
    }

    #[test]
    fn clear_prefix_examples() {
        let b = BitString::from_bit_str("1111");
        assert_eq!(clear_prefix(&b, 2).unwrap(), BitString::from_bit_str("0011"));
        assert_eq!(clear_prefix(&b, 0).unwrap(), b);
        assert_eq!(clear_prefix(&b, 4).unwrap(), BitString::zeros(4));
        assert!(clear_prefix(&b, 5).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = random_bits(&mut rng, 300, 0.5);
        let c = clear_prefix(&b, 77).unwrap();
        for i in 0..300 {
            assert_eq!(c.get(i), i >= 77 && b.get(i));
        }
    }

    #[test]
    fn operand_lengths_must_match() {
        let a = BitString::zeros(10);
        let b = BitString::zeros(11);
        assert!(a.and(&b).is_err());
        assert!(a.or(&b).is_err());
        assert!(a.xor(&b).is_err());
        assert_eq!(BitString::ones(70).not(), BitString::zeros(70));
        assert_eq!(BitString::ones(70).count_ones(), 70);
    }

    fn arb_bits() -> impl Strategy<Value = BitString> {
        (1usize..=1024).prop_flat_map(|len| {
            proptest::collection::vec(any::<u64>(), words_for(len))
                .prop_map(move |w| BitString::from_words(w, len).unwrap())
        })
    }

    fn padding_clear(b: &BitString) -> bool {
        b.words().last().is_none_or(|w| w & !tail_mask(b.len()) == 0)
    }

    proptest! {
        #[test]
        fn extremes_match_bit_loop(b in arb_bits(), sparse in 0u32..4) {
            // Thin the bits out so empty words and single bits also occur.
            let mut b = b;
            for _ in 0..sparse {
                let other = b.clone();
                for (i, w) in b.words_mut().iter_mut().enumerate() {
                    *w &= other.words()[i].rotate_left(17);
                }
            }
            prop_assert_eq!(lsb_index(&b), naive_lowest(&b));
            prop_assert_eq!(msb_index(&b), naive_highest(&b));
        }

        #[test]
        fn ops_stay_canonical(a in arb_bits(), k in 0usize..1024) {
            let k = k.min(a.len());
            prop_assert!(padding_clear(&a.not()));
            prop_assert!(padding_clear(&clear_prefix(&a, k).unwrap()));
            prop_assert!(padding_clear(&a.or(&a.not()).unwrap()));
            prop_assert_eq!(a.or(&a.not()).unwrap(), BitString::ones(a.len()));
        }
    }
}
