//! Frobenius iterates, colengths of monomial ideals, and Hilbert-Kunz and
//! Dutta multiplicity tables.

mod ideal;
mod koszul_poly;
mod report;

use crate::complex::ChainComplex;

pub use ideal::{MonomialIdeal, ENUMERATION_LIMIT};
pub use koszul_poly::polynomial_koszul_homology;
pub use report::{dutta_koszul, dutta_sequence, hilbert_kunz, DuttaReport, DuttaRoute, DuttaRow, Rational};

/// `F^e(P)`: every differential entry raised to the power `p^e`.
pub fn frobenius_complex(p: &ChainComplex, e: u32) -> ChainComplex {
    p.frobenius_iter(e)
}
