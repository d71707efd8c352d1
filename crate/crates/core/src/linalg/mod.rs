//! Exact dense linear algebra over small prime fields.
//!
//! [`FpMatrix`] is the generic representation; when `p = 2` its elimination
//! routines run on [`BitMatrix`], which packs 64 entries per word. Subspaces
//! are always kept in reduced row echelon form so that equality is plain
//! comparison of the stored bases.

pub mod bitmat;
pub mod field;
pub mod matrix;
pub mod subspace;

pub use bitmat::BitMatrix;
pub use matrix::{Echelon, FpMatrix};
pub use subspace::Subspace;
