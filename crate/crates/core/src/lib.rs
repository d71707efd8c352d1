//! Homological algebra of degree-two functors on free complexes over
//! finite-dimensional monomial quotient algebras `F_p[x_1..x_n]/I`.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: exact linear algebra over F_p with a bit-packed F_2 path.
//! - [`algebra`]: monomial quotient rings, their elements, and matrices of
//!   ring elements ([`FreeMap`]).
//! - [`complex`]: bounded complexes of free modules, homology lengths,
//!   Betti numbers, Koszul complexes and tensor products.
//! - [`dold_kan`]: the Γ and N functors, the levelwise action of `T²`,
//!   `S²`, `Λ²` and the Frobenius, and the natural short exact sequences
//!   relating their extensions.
//! - [`multiplicity`]: Frobenius iterates, colengths of monomial ideals,
//!   Hilbert-Kunz and Dutta multiplicity tables.
//! - [`harness`]: verification checks and seeded sweeps with JSON
//!   certificates.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod algebra;
pub mod complex;
pub mod dold_kan;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod multiplicity;

pub use algebra::{FreeMap, MonomialQuotientRing, RingElement};
pub use complex::{ChainComplex, HomologyReport};
pub use error::{Error, Result};
pub use linalg::{FpMatrix, Subspace};
