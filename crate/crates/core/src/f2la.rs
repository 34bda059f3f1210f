//! Dense linear algebra over GF(2).
//!
//! Rows are packed into 64-bit words, least significant bit first. Bits past
//! the last column of a row are always zero, so word-level equality, XOR and
//! popcount need no masking.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// A packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|b| *b.1).map(|b| b.0))
    }

    /// Parses a string of `0`/`1` characters; other characters are ignored.
    pub fn parse(s: &str) -> Self {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| *c == '0' || *c == '1')
            .map(|c| c == '1')
            .collect();
        Self::from_bools(&bits)
    }

    pub(crate) fn from_words(len: usize, words: &[u64]) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVec {
            len,
            words: words.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    /// Parity of the overlap with `other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        ones_in(&self.words)
    }

    pub fn support(&self) -> Vec<usize> {
        self.ones().collect()
    }

    /// Lexicographic order of the 0/1 strings read from index 0.
    pub fn lex_cmp(&self, other: &BitVec) -> Ordering {
        self.len.cmp(&other.len).then_with(|| lex_cmp_words(&self.words, &other.words))
    }
}

pub(crate) fn lex_cmp_words(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            // lowest differing bit decides; the string with a 0 there is smaller
            let low = (x ^ y).trailing_zeros();
            return if (x >> low) & 1 == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    a.len().cmp(&b.len())
}

pub(crate) fn ones_in(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            }
        })
    })
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from the column supports of each row.
    pub fn from_supports(rows: usize, cols: usize, supports: &[Vec<usize>]) -> Self {
        assert_eq!(supports.len(), rows);
        let mut m = Self::zeros(rows, cols);
        for (r, s) in supports.iter().enumerate() {
            for &c in s {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Parses rows of `0`/`1` strings, e.g. `["1100", "0110"]`.
    pub fn parse(rows: &[&str]) -> Self {
        let vs: Vec<BitVec> = rows.iter().map(|r| BitVec::parse(r)).collect();
        let cols = vs.first().map_or(0, BitVec::len);
        Self::from_rows(cols, &vs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r))
    }

    pub fn row_support(&self, r: usize) -> Vec<usize> {
        ones_in(self.row_words(r)).collect()
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| self.row_weight(r)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in 0..self.rows {
            for c in ones_in(self.row_words(r)) {
                w[c] += 1;
            }
        }
        w
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| ones_in(self.row_words(r)).map(move |c| (r, c)))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let s = self.stride;
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        assert_ne!(dst, src);
        let s = self.stride;
        if dst < src {
            let (head, tail) = self.data.split_at_mut(src * s);
            xor_into(&mut head[dst * s..(dst + 1) * s], &tail[..s]);
        } else {
            let (head, tail) = self.data.split_at_mut(dst * s);
            xor_into(&mut tail[..s], &head[src * s..(src + 1) * s]);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (r, c) in self.entries() {
            t.set(c, r, true);
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = r * out.stride;
            for k in ones_in(self.row_words(r)) {
                xor_into(&mut out.data[dst..dst + out.stride], other.row_words(k));
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.rows {
                break;
            }
            let (w, bit) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            let s = m.stride;
            let (head, tail) = m.data.split_at_mut((rank + 1) * s);
            let pivot = &head[rank * s + w..(rank + 1) * s];
            for row in tail.chunks_exact_mut(s) {
                if row[w] & bit != 0 {
                    xor_into(&mut row[w..], pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Canonical reduced row echelon form: leftmost pivots, processed top row
    /// first, every pivot column cleared above and below. Zero rows are dropped.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            let rank = pivots.len();
            if rank == m.rows {
                break;
            }
            let (w, bit) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (rank..m.rows).find(|&r| m.data[r * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(rank, p);
            let s = m.stride;
            let pivot: Vec<u64> = m.data[rank * s + w..(rank + 1) * s].to_vec();
            for (r, row) in m.data.chunks_exact_mut(s).enumerate() {
                if r != rank && row[w] & bit != 0 {
                    xor_into(&mut row[w..], &pivot);
                }
            }
            pivots.push(c);
        }
        m.data.truncate(pivots.len() * m.stride);
        m.rows = pivots.len();
        Rref { matrix: m, pivots }
    }

    /// Basis of `{v : self · v = 0}`, one basis vector per free column in
    /// increasing column order.
    pub fn kernel_basis(&self) -> BitMatrix {
        let Rref { matrix: r, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = BitMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, true);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, f) {
                    k.set(i, p, true);
                }
            }
        }
        k
    }

    pub fn rowspace_contains(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(RowReducer::new(self).contains(v))
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut m = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for (r, c) in self.entries() {
            m.set(r, c, true);
        }
        for (r, c) in other.entries() {
            m.set(r, self.cols + c, true);
        }
        Ok(m)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1) in self.entries() {
            for (r2, c2) in other.entries() {
                m.set(r1 * other.rows + r2, c1 * other.cols + c2, true);
            }
        }
        m
    }

    /// Column `c` of the result is column `perm[c]` of `self`.
    pub fn select_columns(&self, perm: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, perm.len());
        for r in 0..self.rows {
            let src = self.row_words(r);
            for (c, &p) in perm.iter().enumerate() {
                if (src[p / WORD] >> (p % WORD)) & 1 == 1 {
                    m.data[r * m.stride + c / WORD] |= 1u64 << (c % WORD);
                }
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            m.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        m
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Precomputed echelon basis for repeated membership queries against a row space.
#[derive(Clone, Debug)]
pub struct RowReducer {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(m: &BitMatrix) -> Self {
        let Rref { matrix, pivots } = m.rref();
        RowReducer {
            basis: matrix,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `words` in place modulo the row space; the result is zero iff
    /// the input lies in it.
    pub fn reduce_words(&self, words: &mut [u64]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if (words[p / WORD] >> (p % WORD)) & 1 == 1 {
                xor_into(&mut words[p / WORD..], &self.basis.row_words(i)[p / WORD..]);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.basis.cols());
        let mut w = v.words().to_vec();
        self.reduce_words(&mut w);
        w.iter().all(|x| *x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hamming() -> BitMatrix {
        BitMatrix::parse(&["1010101", "0110011", "0001111"])
    }

    fn brute_rank(m: &BitMatrix) -> usize {
        // size of the row space via all 2^rows combinations
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.rows()) {
            let mut v = BitVec::zeros(m.cols());
            for r in 0..m.rows() {
                if mask >> r & 1 == 1 {
                    v.xor_assign(&m.row(r));
                }
            }
            seen.insert(v);
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(hamming().rank(), 3);
        assert_eq!(brute_rank(&hamming()), 3);
        assert_eq!(BitMatrix::zeros(4, 6).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(3).kernel_basis().rows(), 0);
        let k = BitMatrix::parse(&["11"]).kernel_basis();
        assert_eq!(k, BitMatrix::parse(&["11"]));
        let h = hamming();
        let k = h.kernel_basis();
        assert_eq!(k.rows(), 4);
        assert!(h.mul(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn rowspace_examples() {
        let m = BitMatrix::parse(&["110"]);
        assert!(m.rowspace_contains(&BitVec::zeros(3)).unwrap());
        assert!(!m.rowspace_contains(&BitVec::parse("011")).unwrap());
        let m = BitMatrix::parse(&["1100", "0110"]);
        assert!(m.rowspace_contains(&BitVec::parse("1010")).unwrap());
        assert!(m.rowspace_contains(&BitVec::parse("101")).is_err());
    }

    #[test]
    fn mul_examples() {
        let m = hamming();
        assert_eq!(BitMatrix::identity(3).mul(&m).unwrap(), m);
        assert!(m.mul(&m.transpose()).unwrap().is_zero());
        let a = BitMatrix::parse(&["11"]);
        assert_eq!(a.mul(&a.transpose()).unwrap(), BitMatrix::zeros(1, 1));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn rref_is_canonical() {
        let a = BitMatrix::parse(&["0110", "1100", "1010"]);
        let b = BitMatrix::parse(&["1010", "0110"]);
        assert_eq!(a.rref().matrix, b.rref().matrix);
        assert_eq!(a.rref().pivots, vec![0, 1]);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 200;
        let mut m = BitMatrix::zeros(n - 1, n);
        for i in 0..n - 1 {
            m.set(i, i, true);
            m.set(i, i + 1, true);
        }
        assert_eq!(m.rank(), n - 1);
        let k = m.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row_weight(0), n);
    }

    #[test]
    fn lex_order_reads_from_index_zero() {
        assert!(BitVec::parse("0111") < BitVec::parse("1000"));
        assert!(BitVec::parse("1100") > BitVec::parse("1011"));
        let mut a = BitVec::zeros(130);
        let mut b = BitVec::zeros(130);
        a.set(129, true);
        b.set(70, true);
        assert!(a < b);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut m = BitMatrix::zeros(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    if b {
                        m.set(i / c.max(1), i % c.max(1), true);
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix(64, 64)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in arb_matrix(40, 80)) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.rows() + m.rank(), m.cols());
            prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.rows());
        }

        #[test]
        fn rows_lie_in_rowspace(m in arb_matrix(20, 70)) {
            for r in 0..m.rows() {
                prop_assert!(m.rowspace_contains(&m.row(r)).unwrap());
            }
        }

        #[test]
        fn membership_matches_rank_test(m in arb_matrix(12, 20), seed in any::<u64>()) {
            let cols = m.cols();
            let v = BitVec::from_indices(cols, (0..cols).filter(|i| (seed >> (i % 64)) & 1 == 1));
            let stacked = m.vstack(&BitMatrix::from_rows(cols, std::slice::from_ref(&v))).unwrap();
            prop_assert_eq!(m.rowspace_contains(&v).unwrap(), stacked.rank() == m.rank());
        }

        #[test]
        fn mul_is_associative(
            (a, b, c) in (0..=32usize, 0..=32usize, 0..=32usize, 0..=32usize).prop_flat_map(|(p, q, r, s)| {
                (arb_fixed(p, q), arb_fixed(q, r), arb_fixed(r, s))
            })
        ) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    fn arb_fixed(r: usize, c: usize) -> impl Strategy<Value = BitMatrix> {
        proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            let mut m = BitMatrix::zeros(r, c);
            for (i, b) in bits.into_iter().enumerate() {
                if b {
                    m.set(i / c, i % c, true);
                }
            }
            m
        })
    }
}
