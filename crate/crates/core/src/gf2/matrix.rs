use std::fmt;

use crate::error::{domain, Result};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Dense, row-major, bit-packed matrix over GF(2).
///
/// Column `j` of a row lives in bit `j % 64` of word `j / 64`. Padding bits
/// past `cols` are always zero, so rows can be compared and XOR-ed word-wise.
/// A matrix may have zero rows (the kernel basis of a full-rank matrix, for
/// instance) but always has at least one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols >= 1, "a bit matrix needs at least one column");
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

    /// Builds a matrix from rows of 0/1 bytes. All rows must have equal
    /// length and contain only 0 or 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return domain("matrix needs at least one row to infer its width");
        };
        let cols = first.as_ref().len();
        if cols == 0 {
            return domain("matrix needs at least one column");
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return domain(format!("row {i} has length {}, expected {cols}", row.len()));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return domain(format!("entry ({i},{j}) is {b}, not a bit")),
                }
            }
        }
        Ok(m)
    }

    /// Parses rows written as strings of `0`/`1`; whitespace inside a row is
    /// ignored. Handy for fixtures and tests.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => domain(format!("unexpected character {other:?} in bit row")),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&parsed)
    }

    /// Builds a `cols`-wide matrix from packed rows in the internal layout.
    pub fn from_packed_rows(cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let stride = m.stride;
            m.row_words_mut(i).copy_from_slice(&r[..stride]);
            m.clear_padding(i);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of 64-bit words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        self.data[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn clear_padding(&mut self, i: usize) {
        let extra = self.stride * WORD_BITS - self.cols;
        if extra > 0 {
            let last = i * self.stride + self.stride - 1;
            self.data[last] &= u64::MAX >> extra;
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..src * s + s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..dst * s + s])
        };
        for (d, v) in b.iter_mut().zip(a) {
            *d ^= *v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_weight(i)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for i in 0..self.rows {
            for j in self.row_support(i) {
                w[j] += 1;
            }
        }
        w
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column indices of the ones in row `i`, increasing.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        support_of(self.row_words(i))
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    /// Row `i` as a vector of 0/1 bytes.
    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j) as u8).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        assert!(self.rows >= 1, "cannot transpose a matrix without rows");
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.row_support(i) {
                let src = other.row_words(k).to_vec();
                for (d, s) in out.row_words_mut(i).iter_mut().zip(&src) {
                    *d ^= s;
                }
            }
        }
        out
    }

    /// `M · x` for a 0/1 vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &[u8]) -> Vec<u8> {
        assert_eq!(x.len(), self.cols);
        let packed = pack_bits(x);
        (0..self.rows).map(|i| dot(self.row_words(i), &packed) as u8).collect()
    }

    /// True iff `M · x = 0`.
    pub fn annihilates(&self, x: &[u8]) -> bool {
        let packed = pack_bits(x);
        (0..self.rows).all(|i| !dot(self.row_words(i), &packed))
    }

    /// Same as [`annihilates`](Self::annihilates) for a packed vector.
    pub fn annihilates_packed(&self, x: &[u64]) -> bool {
        (0..self.rows).all(|i| !dot(self.row_words(i), x))
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len().max(1));
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    out.set(i, jj, true);
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        }
    }

    /// Appends a packed row.
    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.stride);
        self.data.extend_from_slice(row);
        self.rows += 1;
        let i = self.rows - 1;
        self.clear_padding(i);
    }

    /// Column `j` packed over rows.
    pub fn column_packed(&self, j: usize) -> Vec<u64> {
        let mut col = vec![0u64; words_for(self.rows.max(1))];
        for i in 0..self.rows {
            if self.get(i, j) {
                col[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        col
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let s: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

pub fn pack_bits(x: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(x.len().max(1))];
    for (j, &b) in x.iter().enumerate() {
        if b & 1 == 1 {
            out[j / WORD_BITS] |= 1 << (j % WORD_BITS);
        }
    }
    out
}

pub fn unpack_bits(words: &[u64], len: usize) -> Vec<u8> {
    (0..len).map(|j| ((words[j / WORD_BITS] >> (j % WORD_BITS)) & 1) as u8).collect()
}

pub fn support_of(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let t = w.trailing_zeros() as usize;
            out.push(wi * WORD_BITS + t);
            w &= w - 1;
        }
    }
    out
}

pub fn weight_of(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Inner product over GF(2) of two packed vectors.
#[inline]
pub fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

/// Lexicographic order on packed bit vectors, column 0 first, 0 < 1.
pub fn lex_cmp(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let diff = x ^ y;
        if diff != 0 {
            let t = diff.trailing_zeros();
            return if (x >> t) & 1 == 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            };
        }
    }
    a.len().cmp(&b.len())
}
