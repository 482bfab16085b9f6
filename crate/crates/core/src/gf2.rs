//! Bit-packed linear algebra over the two-element field.
//!
//! Matrices are dense, row-major, packed 64 bits per word. Elimination uses a
//! fixed pivot strategy (columns left to right, rows top to bottom) so that
//! every derived object (ranks, kernel bases, solutions) is reproducible
//! across runs. Everything downstream keys its coordinates to these outputs.

use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2), bit-packed. Trailing bits past `len` are kept zero so
/// that equality and hashing work on the raw words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Reconstructs a vector from raw words (little-endian bit order within
    /// each word). Excess bits beyond `len` are masked off.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len, "xor_assign length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the lowest set bit, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Iterates over set bit indices in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * WORD_BITS;
            std::iter::successors(if w == 0 { None } else { Some(w) }, |&rest| {
                let next = rest & (rest - 1);
                if next == 0 {
                    None
                } else {
                    Some(next)
                }
            })
            .map(move |w| base + w.trailing_zeros() as usize)
        })
    }

    /// Parity of the AND of two vectors of equal length.
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len, "dot length mismatch");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Parity of the bits in the half-open range `[start, end)`.
    pub fn range_parity(&self, start: usize, end: usize) -> bool {
        debug_assert!(start <= end && end <= self.len);
        let mut parity = 0u32;
        let mut i = start;
        while i < end {
            let wi = i / WORD_BITS;
            let lo = i % WORD_BITS;
            let take = (WORD_BITS - lo).min(end - i);
            let mask = if take == WORD_BITS {
                u64::MAX
            } else {
                ((1u64 << take) - 1) << lo
            };
            parity ^= (self.words[wi] & mask).count_ones();
            i += take;
        }
        parity % 2 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}; ", self.len)?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over GF(2), row-major and bit-packed.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        Self {
            rows,
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors (all of length `cols`).
    pub fn from_rows(rows: &[BitVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            m.words[i * m.words_per_row..(i + 1) * m.words_per_row].copy_from_slice(r.words());
        }
        m
    }

    pub fn from_bits(rows: usize, cols: usize, bits: &[&[u8]]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in bits.iter().enumerate().take(rows) {
            for (j, &b) in row.iter().enumerate().take(cols) {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.words[i * self.words_per_row + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let idx = i * self.words_per_row + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.words[idx] |= mask;
        } else {
            self.words[idx] &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(
            self.cols,
            self.words[i * self.words_per_row..(i + 1) * self.words_per_row].to_vec(),
        )
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// XORs row `src` into row `dst`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let wpr = self.words_per_row;
        let (a, b) = if dst < src {
            let (lo, hi) = self.words.split_at_mut(src * wpr);
            (&mut lo[dst * wpr..dst * wpr + wpr], &hi[..wpr])
        } else {
            let (lo, hi) = self.words.split_at_mut(dst * wpr);
            (&mut hi[..wpr], &lo[src * wpr..src * wpr + wpr])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for k in 0..wpr {
            self.words.swap(a * wpr + k, b * wpr + k);
        }
    }

    /// XORs the vector `v` (length `cols`) into row `i`.
    pub fn xor_row_with(&mut self, i: usize, v: &BitVec) {
        debug_assert_eq!(v.len(), self.cols);
        for (w, x) in self.words[i * self.words_per_row..(i + 1) * self.words_per_row]
            .iter_mut()
            .zip(v.words())
        {
            *w ^= x;
        }
    }

    /// Matrix-vector product; `v` has length `cols`, result has length `rows`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "mul_vec: dimension mismatch");
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(i).iter().zip(v.words()) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let base = i * self.words_per_row;
            for (wi, &w) in self.words[base..base + self.words_per_row]
                .iter()
                .enumerate()
            {
                let mut rest = w;
                while rest != 0 {
                    let j = wi * WORD_BITS + rest.trailing_zeros() as usize;
                    t.set(j, i, true);
                    rest &= rest - 1;
                }
            }
        }
        t
    }

    /// Dimension of the row space. The matrix is not mutated.
    pub fn rank(&self) -> usize {
        Echelon::new(self).rank()
    }

    /// Canonical basis of the right kernel `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        Echelon::new(self).kernel_basis()
    }

    /// Some `x` with `M x = b` under the fixed pivot rule, if one exists.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        Echelon::new(self).solve(b)
    }

    /// Reduced row echelon form (same shape; zero rows at the bottom).
    pub fn rref(&self) -> BitMatrix {
        let ech = Echelon::new(self);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..ech.rank() {
            out.words[i * out.words_per_row..(i + 1) * out.words_per_row]
                .copy_from_slice(ech.reduced.row_words(i));
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix together with the row transform that
/// produced it. Supports repeated solves against the same matrix and
/// extraction of a canonical kernel basis.
pub struct Echelon {
    rows: usize,
    cols: usize,
    rank: usize,
    /// First `rank` rows hold the reduced echelon form; the rest are zero.
    reduced: BitMatrix,
    /// Row transform `T` with `T * M = reduced`.
    transform: BitMatrix,
    /// Pivot column of each echelon row, strictly increasing.
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Self {
        let rows = m.rows();
        let cols = m.cols();
        // Work on the augmented matrix [M | I] so the transform rides along.
        let mut work = BitMatrix::zeros(rows, cols + rows);
        for i in 0..rows {
            let wpr = work.words_per_row;
            work.words[i * wpr..i * wpr + m.words_per_row].copy_from_slice(m.row_words(i));
            work.set(i, cols + i, true);
        }
        let mut rank = 0;
        let mut pivots = Vec::new();
        for col in 0..cols {
            let Some(pivot_row) = (rank..rows).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(rank, pivot_row);
            for r in 0..rows {
                if r != rank && work.get(r, col) {
                    work.xor_rows(r, rank);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        let mut reduced = BitMatrix::zeros(rows, cols);
        let mut transform = BitMatrix::zeros(rows, rows);
        for i in 0..rows {
            let row = work.row(i);
            for j in row.ones() {
                if j < cols {
                    reduced.set(i, j, true);
                } else {
                    transform.set(i, j - cols, true);
                }
            }
        }
        Self {
            rows,
            cols,
            rank,
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Solves `M x = b`. The returned solution is supported on the pivot
    /// columns, which makes it unique for a fixed input.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "solve: rhs length must match rows");
        let c = self.transform.mul_vec(b);
        for r in self.rank..self.rows {
            if c.get(r) {
                return None;
            }
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            if c.get(i) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Canonical kernel basis: one vector per free column, in ascending
    /// column order, each expressed via the reduced echelon rows.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut pivot_set = vec![false; self.cols];
        for &p in &self.pivots {
            pivot_set[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - self.rank);
        for (f, &is_pivot) in pivot_set.iter().enumerate() {
            if is_pivot {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (i, &p) in self.pivots.iter().enumerate() {
                if self.reduced.get(i, f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally accumulated row space: supports rank queries and membership
/// tests while inserting vectors one at a time. Rows are kept in echelon form
/// with strictly increasing leading columns.
pub struct SpanAccumulator {
    cols: usize,
    rows: Vec<BitVec>,
    leads: Vec<usize>,
}

impl SpanAccumulator {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            leads: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` against the current span; the remainder is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            if v.get(lead) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Inserts `v` into the span. Returns true iff the rank increased.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let r = self.reduce(v);
        match r.first_set() {
            None => false,
            Some(lead) => {
                let pos = self.leads.partition_point(|&l| l < lead);
                self.leads.insert(pos, lead);
                self.rows.insert(pos, r);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.random_bool(0.5) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[test]
    fn rank_identity() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_equal_rows() {
        let m = BitMatrix::from_bits(2, 2, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(BitMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_equal_rows() {
        let m = BitMatrix::from_bits(2, 2, &[&[1, 1], &[1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], BitVec::from_bits([true, true]));
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let m = BitMatrix::identity(4);
        let b = BitVec::from_bits([true, false, true, true]);
        assert_eq!(m.solve(&b), Some(b));
    }

    #[test]
    fn solve_fixed_pivot_rule() {
        // All four candidates for [[1,1]] x = (1) are (1,0) and (0,1); the
        // left-to-right pivot rule must pick (1,0).
        let m = BitMatrix::from_bits(1, 2, &[&[1, 1]]);
        let b = BitVec::from_bits([true]);
        let x = m.solve(&b).unwrap();
        assert_eq!(x, BitVec::from_bits([true, false]));
        let mut seen = false;
        for mask in 0..4u32 {
            let cand = BitVec::from_bits([(mask & 1) != 0, (mask & 2) != 0]);
            if m.mul_vec(&cand) == b && cand == x {
                seen = true;
            }
        }
        assert!(seen, "canonical solution must be among the enumerated ones");
    }

    #[test]
    fn solve_zero_matrix_inconsistent() {
        let m = BitMatrix::zeros(2, 3);
        let b = BitVec::from_bits([true, false]);
        assert_eq!(m.solve(&b), None);
    }

    #[test]
    fn rank_nullity_and_solve_soundness_randomized() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for case in 0..1200 {
            let rows = 1 + (case % 23);
            let cols = 1 + (case % 29);
            let m = random_matrix(&mut rng, rows, cols);
            let ech = Echelon::new(&m);
            let kernel = ech.kernel_basis();
            assert_eq!(ech.rank() + kernel.len(), cols, "rank-nullity failed");
            for v in &kernel {
                assert!(m.mul_vec(v).is_zero(), "kernel vector not annihilated");
            }
            // Solve against an attainable rhs and check soundness bit-exactly.
            let x0 = BitVec::from_bits((0..cols).map(|_| rng.random_bool(0.5)));
            let b = m.mul_vec(&x0);
            let x = ech.solve(&b).expect("rhs in the image must be solvable");
            assert_eq!(m.mul_vec(&x), b, "solve soundness failed");
        }
    }

    #[test]
    fn determinism_across_runs() {
        let mut rng = StdRng::seed_from_u64(42);
        let m = random_matrix(&mut rng, 20, 20);
        let e1 = Echelon::new(&m);
        let e2 = Echelon::new(&m);
        assert_eq!(e1.pivots(), e2.pivots());
        assert_eq!(e1.kernel_basis(), e2.kernel_basis());
        let b = BitVec::from_bits((0..20).map(|i| i % 3 == 0));
        assert_eq!(e1.solve(&m.mul_vec(&b)), e2.solve(&m.mul_vec(&b)));
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 13, 17);
            let once = m.rref();
            assert_eq!(once.rref(), once);
        }
    }

    #[test]
    fn span_accumulator_matches_echelon_rank() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 15, 24);
            let mut acc = SpanAccumulator::new(24);
            for i in 0..m.rows() {
                acc.insert(m.row(i));
            }
            assert_eq!(acc.rank(), m.rank());
            for i in 0..m.rows() {
                assert!(acc.contains(&m.row(i)));
            }
        }
    }

    #[test]
    fn range_parity_matches_naive() {
        let mut rng = StdRng::seed_from_u64(3);
        let v = BitVec::from_bits((0..300).map(|_| rng.random_bool(0.4)));
        for _ in 0..200 {
            let a = rng.random_range(0..=300);
            let b = rng.random_range(a..=300);
            let naive = (a..b).filter(|&i| v.get(i)).count() % 2 == 1;
            assert_eq!(v.range_parity(a, b), naive);
        }
    }

    #[test]
    fn ones_iterator_word_boundaries() {
        let mut v = BitVec::zeros(130);
        for &i in &[0, 63, 64, 127, 129] {
            v.set(i, true);
        }
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 127, 129]);
        assert_eq!(v.first_set(), Some(0));
        assert_eq!(v.count_ones(), 5);
    }
}
