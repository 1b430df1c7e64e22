//! Parity-check matrix constructions and interchange formats.

mod alist;
pub mod fixtures;
mod gallager;
mod nonbinary;
mod qc;
mod ru;

pub use alist::{read_alist, write_alist};
pub use gallager::build_gallager;
pub use nonbinary::{binary_image, random_labeling, read_label_file, write_label_file, NonbinaryLabeledMatrix};
pub use qc::{base_matrix, qc_expand_circulant, qc_expand_tailbiting, QcEntry, QcPolynomialMatrix};
pub use ru::{build_ru, ru_from_sockets};

use crate::gf2::{self, BitMatrix};

/// A binary linear code given by a parity-check matrix, with the rank and
/// Tanner-graph adjacency cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    h: BitMatrix,
    rank: usize,
    check_neighbors: Vec<Vec<usize>>,
    var_neighbors: Vec<Vec<usize>>,
}

impl LinearCode {
    pub fn new(h: BitMatrix) -> Self {
        let rank = gf2::rank(&h);
        let check_neighbors: Vec<Vec<usize>> = (0..h.rows()).map(|i| h.row_support(i)).collect();
        let mut var_neighbors = vec![Vec::new(); h.cols()];
        for (i, row) in check_neighbors.iter().enumerate() {
            for &j in row {
                var_neighbors[j].push(i);
            }
        }
        LinearCode {
            h,
            rank,
            check_neighbors,
            var_neighbors,
        }
    }

    #[inline]
    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn into_h(self) -> BitMatrix {
        self.h
    }

    /// Code length.
    #[inline]
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of parity-check rows (may exceed the rank).
    #[inline]
    pub fn r(&self) -> usize {
        self.h.rows()
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension `n − rank(H)`.
    #[inline]
    pub fn k(&self) -> usize {
        self.n() - self.rank
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    /// Variable indices of each check.
    pub fn check_neighbors(&self) -> &[Vec<usize>] {
        &self.check_neighbors
    }

    /// Check indices of each variable.
    pub fn var_neighbors(&self) -> &[Vec<usize>] {
        &self.var_neighbors
    }

    /// Generator matrix (basis of the null space of `H`), `k × n`.
    pub fn generator(&self) -> BitMatrix {
        gf2::null_space_basis(&self.h)
    }

    pub fn is_codeword(&self, x: &[u8]) -> bool {
        self.h.annihilates(x)
    }

    /// `(min, max)` column weight and `(min, max)` row weight.
    pub fn degree_profile(&self) -> DegreeProfile {
        let cw = self.h.col_weights();
        let rw = self.h.row_weights();
        DegreeProfile {
            col_min: cw.iter().copied().min().unwrap_or(0),
            col_max: cw.iter().copied().max().unwrap_or(0),
            row_min: rw.iter().copied().min().unwrap_or(0),
            row_max: rw.iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub col_min: usize,
    pub col_max: usize,
    pub row_min: usize,
    pub row_max: usize,
}

impl DegreeProfile {
    pub fn is_regular(&self) -> bool {
        self.col_min == self.col_max && self.row_min == self.row_max
    }

    /// `J,K` for regular codes, ranges otherwise (`3-4,6-8`).
    pub fn label(&self) -> String {
        let part = |lo: usize, hi: usize| if lo == hi { lo.to_string() } else { format!("{lo}-{hi}") };
        format!("{},{}", part(self.col_min, self.col_max), part(self.row_min, self.row_max))
    }
}
