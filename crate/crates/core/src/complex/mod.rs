//! Bounded complexes of finite free modules over a monomial quotient ring.
//!
//! Degrees are homological: `∂_j : P_j -> P_{j-1}`, with `P` concentrated in
//! `[0, m]`. Complexes are validated on construction (`∂_j ∘ ∂_{j+1} = 0`), so
//! a [`ChainComplex`] value is always a complex.

mod construct;
mod minimal;
mod text;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{FreeMap, MonomialQuotientRing};
use crate::error::{Error, Result};

pub(crate) use construct::combinations;
pub use construct::{koszul, random_complex, random_complex_with, tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Arc<MonomialQuotientRing>,
    ranks: Vec<usize>,
    /// `diffs[j - 1]` is `∂_j`, a `ranks[j-1] x ranks[j]` map.
    diffs: Vec<FreeMap>,
}

/// Homology lengths and Betti numbers of a complex.
///
/// `h[j] = dim_k H_j(P)` (the length, since the ring is Artinian with residue
/// field `F_p`) and `betti[j] = dim_k H_j(P ⊗_R k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub h: Vec<usize>,
    pub betti: Vec<usize>,
    pub total_h: usize,
    pub total_rank: usize,
    pub total_betti: usize,
    pub chi: i64,
}

impl ChainComplex {
    pub fn new(ring: &Arc<MonomialQuotientRing>, ranks: Vec<usize>, diffs: Vec<FreeMap>) -> Result<Self> {
        let c = Self::new_unchecked(ring, ranks, diffs)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Shape and ring checks only; `∂² = 0` is the caller's responsibility.
    pub(crate) fn new_unchecked(
        ring: &Arc<MonomialQuotientRing>,
        ranks: Vec<usize>,
        diffs: Vec<FreeMap>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidRange("a complex needs at least degree 0".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (j, d) in diffs.iter().enumerate() {
            if !MonomialQuotientRing::same(ring, d.ring()) {
                return Err(Error::RingMismatch);
            }
            if d.rows() != ranks[j] || d.cols() != ranks[j + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "∂_{} is {}x{}, expected {}x{}",
                    j + 1,
                    d.rows(),
                    d.cols(),
                    ranks[j],
                    ranks[j + 1]
                )));
            }
        }
        Ok(ChainComplex {
            ring: ring.clone(),
            ranks,
            diffs,
        })
    }

    fn check_square_zero(&self) -> Result<()> {
        for j in 1..self.diffs.len() {
            if !self.diffs[j - 1].compose(&self.diffs[j])?.is_zero() {
                return Err(Error::NotAComplex { degree: j - 1 });
            }
        }
        Ok(())
    }

    /// `R^n` in degree 0.
    pub fn free_module(ring: &Arc<MonomialQuotientRing>, n: usize) -> Self {
        ChainComplex {
            ring: ring.clone(),
            ranks: vec![n],
            diffs: Vec::new(),
        }
    }

    /// The two-term complex `0 -> R^{cols} --f--> R^{rows} -> 0`.
    pub fn two_term(f: FreeMap) -> Self {
        ChainComplex {
            ring: f.ring().clone(),
            ranks: vec![f.rows(), f.cols()],
            diffs: vec![f],
        }
    }

    pub fn ring(&self) -> &Arc<MonomialQuotientRing> {
        &self.ring
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, j: usize) -> usize {
        self.ranks.get(j).copied().unwrap_or(0)
    }

    /// Top degree `m`.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn diffs(&self) -> &[FreeMap] {
        &self.diffs
    }

    /// `∂_j` for `1 <= j <= m`.
    pub fn diff(&self, j: usize) -> Option<&FreeMap> {
        j.checked_sub(1).and_then(|i| self.diffs.get(i))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(FreeMap::is_minimal)
    }

    /// `χ` computed from ranks: `D · Σ (-1)^j r_j`.
    pub fn euler_from_ranks(&self) -> i64 {
        let d = self.ring.dim() as i64;
        self.ranks
            .iter()
            .enumerate()
            .map(|(j, &r)| if j % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum::<i64>()
            * d
    }

    pub fn homology(&self) -> HomologyReport {
        let d = self.ring.dim();
        let m = self.top();
        let mut k_ranks = vec![0usize; m + 2];
        let mut red_ranks = vec![0usize; m + 2];
        for j in 1..=m {
            let f = &self.diffs[j - 1];
            k_ranks[j] = f.underlying_k_matrix().rank();
            red_ranks[j] = f.reduction().rank();
        }
        let h: Vec<usize> = (0..=m)
            .map(|j| self.ranks[j] * d - k_ranks[j] - k_ranks[j + 1])
            .collect();
        let betti: Vec<usize> = (0..=m)
            .map(|j| self.ranks[j] - red_ranks[j] - red_ranks[j + 1])
            .collect();
        let chi = h
            .iter()
            .enumerate()
            .map(|(j, &x)| if j % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        HomologyReport {
            total_h: h.iter().sum(),
            total_rank: self.total_rank(),
            total_betti: betti.iter().sum(),
            h,
            betti,
            chi,
        }
    }

    /// Entrywise Frobenius `F(P)`.
    pub fn frobenius(&self) -> ChainComplex {
        self.frobenius_iter(1)
    }

    /// `F^e(P)`.
    pub fn frobenius_iter(&self, e: u32) -> ChainComplex {
        ChainComplex {
            ring: self.ring.clone(),
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.frobenius_iter(e)).collect(),
        }
    }

    /// Homological shift `Σ^k P`: degree `j` of the result is `P_{j-k}`,
    /// differentials carry the sign `(-1)^k`.
    pub fn shift(&self, k: usize) -> ChainComplex {
        if k == 0 {
            return self.clone();
        }
        let mut ranks = vec![0; k];
        ranks.extend_from_slice(&self.ranks);
        let mut diffs: Vec<FreeMap> = (1..k).map(|_| FreeMap::zeros(&self.ring, 0, 0)).collect();
        diffs.push(FreeMap::zeros(&self.ring, 0, self.ranks[0]));
        let sign = if k.is_multiple_of(2) { 1 } else { self.ring.p() - 1 };
        diffs.extend(self.diffs.iter().map(|d| d.scale(sign)));
        ChainComplex {
            ring: self.ring.clone(),
            ranks,
            diffs,
        }
    }

    /// Hard truncation to degrees `[lo, hi]`: modules outside become zero and
    /// the differentials leaving the window are dropped.
    pub fn truncate(&self, lo: usize, hi: usize) -> Result<ChainComplex> {
        if lo > hi || hi > self.top() {
            return Err(Error::InvalidRange(format!(
                "[{lo}, {hi}] is not inside [0, {}]",
                self.top()
            )));
        }
        let ranks: Vec<usize> = (0..=hi).map(|j| if j < lo { 0 } else { self.ranks[j] }).collect();
        let diffs = (1..=hi)
            .map(|j| {
                if j <= lo {
                    FreeMap::zeros(&self.ring, ranks[j - 1], ranks[j])
                } else {
                    self.diffs[j - 1].clone()
                }
            })
            .collect();
        Ok(ChainComplex {
            ring: self.ring.clone(),
            ranks,
            diffs,
        })
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if !MonomialQuotientRing::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let top = self.top().max(other.top());
        let ranks: Vec<usize> = (0..=top).map(|j| self.rank(j) + other.rank(j)).collect();
        let pad = |c: &ChainComplex, j: usize| {
            c.diff(j)
                .cloned()
                .unwrap_or_else(|| FreeMap::zeros(&c.ring, c.rank(j - 1), c.rank(j)))
        };
        let diffs = (1..=top)
            .map(|j| pad(self, j).direct_sum(&pad(other, j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainComplex {
            ring: self.ring.clone(),
            ranks,
            diffs,
        })
    }

    /// Drops trailing zero modules.
    pub fn trimmed(&self) -> ChainComplex {
        let mut top = self.top();
        while top > 0 && self.ranks[top] == 0 {
            top -= 1;
        }
        ChainComplex {
            ring: self.ring.clone(),
            ranks: self.ranks[..=top].to_vec(),
            diffs: self.diffs[..top].to_vec(),
        }
    }

    pub fn to_text(&self) -> String {
        text::complex_to_text(self)
    }

    pub fn from_text(s: &str) -> Result<ChainComplex> {
        text::complex_from_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual() -> Arc<MonomialQuotientRing> {
        MonomialQuotientRing::truncated(2, 2).unwrap()
    }

    #[test]
    fn homology_of_multiplication_by_x() {
        let r = dual();
        let p = ChainComplex::two_term(FreeMap::from_entries(&r, 1, 1, &[r.var(0)]).unwrap());
        let rep = p.homology();
        assert_eq!(rep.h, vec![1, 1]);
        assert_eq!(rep.total_h, 2);
        assert_eq!(rep.betti, vec![1, 1]);
        assert_eq!(rep.chi, 0);
        assert_eq!(rep.chi, p.euler_from_ranks());
    }

    #[test]
    fn exact_and_degree_zero_complexes() {
        let r = dual();
        let iso = ChainComplex::two_term(FreeMap::identity(&r, 1));
        assert_eq!(iso.homology().h, vec![0, 0]);
        assert_eq!(iso.homology().betti, vec![0, 0]);
        let free = ChainComplex::free_module(&r, 3);
        assert_eq!(free.homology().h, vec![6]);
    }

    #[test]
    fn construction_rejects_non_complexes() {
        let r = dual();
        let one = FreeMap::identity(&r, 1);
        let err = ChainComplex::new(&r, vec![1, 1, 1], vec![one.clone(), one.clone()]);
        assert!(matches!(err, Err(Error::NotAComplex { degree: 0 })));
        let bad_shape = ChainComplex::new(&r, vec![1, 2], vec![one]);
        assert!(matches!(bad_shape, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn shift_and_truncate() {
        let r = dual();
        let x = FreeMap::from_entries(&r, 1, 1, &[r.var(0)]).unwrap();
        let k = ChainComplex::new(&r, vec![1, 1, 1], vec![x.clone(), x.clone()]).unwrap();
        assert_eq!(k.shift(0), k);
        let s = k.shift(2);
        assert_eq!(s.homology().h, vec![0, 0, 1, 0, 1]);
        assert_eq!(&s.homology().h[2..], &k.homology().h[..]);
        assert_eq!(k.homology().h, vec![1, 0, 1]);
        let t = k.truncate(1, 2).unwrap();
        // degree 2 is away from the cut at 1
        assert_eq!(t.homology().h[2], k.homology().h[2]);
        assert_eq!(t.homology().h[1], 1);
        assert!(k.truncate(2, 1).is_err());
        assert!(k.truncate(0, 3).is_err());
    }
}
