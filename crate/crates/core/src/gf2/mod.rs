//! Exact linear algebra over GF(2) and arithmetic in GF(2^m).

mod field;
mod linalg;
mod matrix;

pub use field::{
    is_irreducible, is_primitive, poly_mulmod, smallest_primitive_poly, GfField, DEFAULT_PRIMITIVE_POLYS,
    MAX_EXTENSION_DEGREE,
};
pub use linalg::{column_rank, null_space_basis, rank, rank_and_rref, row_space_basis, Rref, XorBasis};
pub use matrix::{dot, lex_cmp, pack_bits, support_of, unpack_bits, weight_of, BitMatrix};
pub(crate) use matrix::words_for;
