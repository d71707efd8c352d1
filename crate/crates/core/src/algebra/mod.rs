//! Monomial quotient algebras `F_p[x_1..x_n]/I`, their elements, and maps
//! between free modules over them.
//!
//! Every ring here is a finite-dimensional local algebra with residue field
//! `F_p`, so the length of any finite module equals its `F_p`-dimension. All
//! homology lengths in the crate are computed that way, through
//! [`FreeMap::underlying_k_matrix`].

mod element;
mod freemap;
mod ring;
pub(crate) mod text;

pub use element::RingElement;
pub use freemap::FreeMap;
pub use ring::{MonomialQuotientRing, MAX_RING_DIM};
