//! Dold-Kan extensions of degree-two functors to complexes of free modules.
//!
//! [`gamma`] builds the simplicial module `Γ(P)` level by level, with
//! `Γ(P)_n = ⊕_{[n]↠[k]} P_k`. [`apply_functor`] applies `T²`, `S²`, `Λ²` or
//! the Frobenius to every level and structure map, and [`normalize`] returns
//! the complex `N_n = ∩_{i<n} ker d_i` with differential `(-1)^n d_n`,
//! written in an explicit free basis. [`extend`] is the composite
//! `N ∘ G_* ∘ Γ`.
//!
//! Free bases come from the splitting `X_n = N_n ⊕ D_n`, where `D_n` is the
//! span of the degenerate simplices: when the degeneracies permute basis
//! vectors (as they do for every module built here), the images of the
//! nondegenerate basis vectors under the normalizing projector form a basis
//! of `N_n`. Other modules go through a slower route that selects pivots of
//! the projector modulo the maximal ideal and certifies the result with
//! `k`-dimensions.

mod normalize;
mod ses;
mod simplicial;
mod sparse;
mod surjection;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

pub use normalize::{
    compare_frobenius, extend, extend_to, invert, normalize, normalize_with_bases, normalized_k_dimension,
    FrobeniusComparison, Normalized,
};
pub use ses::{
    lem419, odd_split_check, ses_maps, wedge_h0_oracle, DegreeCertificate, FundamentalSes, NaturalMap,
    ShortExactSequence,
};
pub use simplicial::{apply_functor, gamma, TruncatedSimplicialModule};
pub use surjection::Surjection;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctorTag {
    T2,
    S2,
    L2,
    Frob,
}

impl FunctorTag {
    pub const ALL: [FunctorTag; 4] = [FunctorTag::T2, FunctorTag::S2, FunctorTag::L2, FunctorTag::Frob];

    /// Polynomial degree.
    pub fn degree(self) -> usize {
        match self {
            FunctorTag::Frob => 1,
            _ => 2,
        }
    }

    /// Rank of `G(R^n)`.
    pub fn rank_law(self, n: usize) -> usize {
        match self {
            FunctorTag::T2 => n * n,
            FunctorTag::S2 => n * (n + 1) / 2,
            FunctorTag::L2 => n * n.saturating_sub(1) / 2,
            FunctorTag::Frob => n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctorTag::T2 => "t2",
            FunctorTag::S2 => "s2",
            FunctorTag::L2 => "l2",
            FunctorTag::Frob => "frob",
        }
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctorTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FunctorTag::ALL
            .into_iter()
            .find(|t| t.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Precondition(format!("unknown functor `{s}`, expected t2, s2, l2 or frob")))
    }
}
