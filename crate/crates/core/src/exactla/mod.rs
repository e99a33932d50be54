//! Exact linear algebra over prime fields.

mod dense;
mod echelon;
mod field;
mod sparse;

pub use dense::{quotient_basis, Mat, Quotient, Rref};
pub use echelon::Echelon;
pub use field::{Fp, Scalar};
pub use sparse::{sparsify, SparseMat};

/// Rank of a matrix together with a basis of its kernel.
pub fn rank_nullspace(m: &Mat) -> (usize, Mat) {
    m.rank_nullspace()
}

/// Solve `m x = b`; `None` when `b` lies outside the image.
pub fn solve(m: &Mat, b: &[u32]) -> Option<Vec<u32>> {
    m.solve(b)
}
