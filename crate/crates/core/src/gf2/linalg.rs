use super::matrix::{BitMatrix, WORD_BITS};

/// Reduced row-echelon form of a matrix together with its rank and pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// Same shape as the input; rows `rank..` are zero.
    pub reduced: BitMatrix,
    /// Pivot column of each of the first `rank` rows, strictly increasing.
    pub pivot_cols: Vec<usize>,
}

/// Gauss–Jordan elimination. The pivot for each column is the first row at or
/// below the current pivot row that has a one there.
pub fn rank_and_rref(m: &BitMatrix) -> Rref {
    let mut r = m.clone();
    let mut pivot_cols = Vec::new();
    let mut prow = 0;
    for j in 0..r.cols() {
        if prow == r.rows() {
            break;
        }
        let Some(p) = (prow..r.rows()).find(|&i| r.get(i, j)) else {
            continue;
        };
        r.swap_rows(p, prow);
        for i in 0..r.rows() {
            if i != prow && r.get(i, j) {
                r.xor_row_into(prow, i);
            }
        }
        pivot_cols.push(j);
        prow += 1;
    }
    Rref {
        rank: prow,
        reduced: r,
        pivot_cols,
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    rank_and_rref(m).rank
}

/// Basis of `{x : M xᵀ = 0}` as the rows of a `(cols − rank) × cols` matrix.
///
/// One basis vector per free column `f`: it has a one at `f` and, for every
/// pivot row `i`, the entry `R[i][f]` at that row's pivot column.
pub fn null_space_basis(m: &BitMatrix) -> BitMatrix {
    let rref = rank_and_rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &rref.pivot_cols {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut basis = BitMatrix::zeros(free.len(), n);
    for (b, &f) in free.iter().enumerate() {
        basis.set(b, f, true);
        for (i, &p) in rref.pivot_cols.iter().enumerate() {
            if rref.reduced.get(i, f) {
                basis.set(b, p, true);
            }
        }
    }
    basis
}

/// Rows of the reduced echelon form spanning the row space of `m`.
pub fn row_space_basis(m: &BitMatrix) -> BitMatrix {
    let rref = rank_and_rref(m);
    let mut out = BitMatrix::zeros(0, m.cols());
    for i in 0..rref.rank {
        out.push_row(rref.reduced.row_words(i));
    }
    out
}

/// Incremental basis of packed vectors over GF(2), keyed by leading bit.
///
/// Used wherever many small rank questions are asked (column independence of
/// erasure patterns, duplicate detection among dual codewords).
#[derive(Clone, Debug)]
pub struct XorBasis {
    words: usize,
    // (leading bit, reduced vector)
    rows: Vec<(usize, Vec<u64>)>,
}

impl XorBasis {
    pub fn new(words: usize) -> Self {
        XorBasis {
            words,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. Returns the residual.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (lead, row) in &self.rows {
            if (v[lead / WORD_BITS] >> (lead % WORD_BITS)) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        v
    }

    /// Inserts `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.words);
        let v = self.reduce(v);
        let Some(lead) = leading_bit(&v) else {
            return false;
        };
        // keep every stored row free of the new leading bit
        for (_, row) in self.rows.iter_mut() {
            if (row[lead / WORD_BITS] >> (lead % WORD_BITS)) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a ^= b;
                }
            }
        }
        self.rows.push((lead, v));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        leading_bit(&self.reduce(v)).is_none()
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
}

/// Rank of the column submatrix `m[:, cols]`.
pub fn column_rank(m: &BitMatrix, cols: &[usize]) -> usize {
    let words = super::matrix::words_for(m.rows().max(1));
    let mut basis = XorBasis::new(words);
    for &c in cols {
        basis.insert(&m.column_packed(c));
    }
    basis.rank()
}
