use serde::Serialize;

use super::normalize::{normalize_with_bases, Normalized};
use super::simplicial::{apply_functor, gamma, sym_index, sym_pairs, wedge_index, wedge_pairs};
use super::sparse::SparseMap;
use super::{extend, FunctorTag};
use crate::algebra::FreeMap;
use crate::complex::{ChainComplex, HomologyReport};
use crate::error::{Error, Result};

/// The four module-level natural transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NaturalMap {
    /// `x ∧ y ↦ x ⊗ y - y ⊗ x`
    WedgeToTensor,
    /// `x ⊗ y ↦ x · y`
    TensorToSym,
    /// `x ↦ x · x` on Frobenius basis vectors
    FrobToSym,
    /// `x · y ↦ x ∧ y`
    SymToWedge,
}

impl NaturalMap {
    /// Matrix at a level of rank `n`.
    pub(crate) fn sparse(self, ring: &crate::algebra::MonomialQuotientRing, n: usize) -> SparseMap {
        let d = ring.dim();
        let mut one = vec![0; d];
        one[0] = 1;
        let mut minus_one = vec![0; d];
        minus_one[0] = ring.p() - 1;
        match self {
            NaturalMap::WedgeToTensor => {
                let pairs = wedge_pairs(n);
                SparseMap::build(ring, n * n, pairs.len(), |c, col| {
                    let (i, j) = pairs[c];
                    col.add(i * n + j, &one);
                    col.add(j * n + i, &minus_one);
                })
            }
            NaturalMap::TensorToSym => SparseMap::build(ring, n * (n + 1) / 2, n * n, |c, col| {
                let (i, j) = (c / n, c % n);
                col.add(sym_index(n, i.min(j), i.max(j)), &one);
            }),
            NaturalMap::FrobToSym => SparseMap::build(ring, n * (n + 1) / 2, n, |i, col| {
                col.add(sym_index(n, i, i), &one);
            }),
            NaturalMap::SymToWedge => {
                let pairs = sym_pairs(n);
                SparseMap::build(ring, n * n.saturating_sub(1) / 2, pairs.len(), |c, col| {
                    let (i, j) = pairs[c];
                    if i != j {
                        col.add(wedge_index(n, i, j), &one);
                    }
                })
            }
        }
    }
}

/// Exactness data for one degree of `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCertificate {
    pub degree: usize,
    pub ranks: [usize; 3],
    /// `k`-ranks of the two maps.
    pub first_rank: usize,
    pub second_rank: usize,
    pub composite_zero: bool,
    pub injective: bool,
    pub surjective: bool,
    pub middle_exact: bool,
    pub chain_maps: bool,
}

impl DegreeCertificate {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.injective && self.surjective && self.middle_exact && self.chain_maps
    }
}

/// A short exact sequence of normalized complexes with its certificates.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub functors: [FunctorTag; 3],
    pub complexes: [ChainComplex; 3],
    pub homology: [HomologyReport; 3],
    pub first: Vec<FreeMap>,
    pub second: Vec<FreeMap>,
    pub certificates: Vec<DegreeCertificate>,
}

impl ShortExactSequence {
    pub fn exact(&self) -> bool {
        self.certificates.iter().all(DegreeCertificate::exact)
    }

    pub fn euler_additive(&self) -> bool {
        self.homology[1].chi == self.homology[0].chi + self.homology[2].chi
    }
}

/// Both sequences of the fundamental lemma for one complex.
#[derive(Clone, Debug)]
pub struct FundamentalSes {
    /// `0 -> Λ̃²P -> T̃²P -> S̃²P -> 0`
    pub main: ShortExactSequence,
    /// `0 -> F(P) -> S̃²P -> Λ̃²P -> 0`, in characteristic 2.
    pub char2: Option<ShortExactSequence>,
}

fn normalized_map(
    eta: NaturalMap,
    source: &Normalized,
    target: &Normalized,
    level_ranks: &[usize],
    ring: &crate::algebra::MonomialQuotientRing,
) -> Result<Vec<FreeMap>> {
    (0..source.bases.len())
        .map(|n| {
            let y = eta.sparse(ring, level_ranks[n]).apply(&source.bases[n]);
            target.coordinates(n, &y)
        })
        .collect()
}

fn certify(complexes: &[&ChainComplex; 3], first: &[FreeMap], second: &[FreeMap]) -> Result<Vec<DegreeCertificate>> {
    let d = complexes[0].ring().dim();
    let top = complexes[1].top();
    let mut out = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let ranks = [complexes[0].rank(n), complexes[1].rank(n), complexes[2].rank(n)];
        let first_rank = first[n].underlying_k_matrix().rank();
        let second_rank = second[n].underlying_k_matrix().rank();
        let composite_zero = second[n].compose(&first[n])?.is_zero();
        let mut chain_maps = true;
        if n > 0 {
            let [a, b, c] = complexes;
            chain_maps = first[n - 1].compose(&a.diffs()[n - 1])? == b.diffs()[n - 1].compose(&first[n])?
                && second[n - 1].compose(&b.diffs()[n - 1])? == c.diffs()[n - 1].compose(&second[n])?;
        }
        out.push(DegreeCertificate {
            degree: n,
            ranks,
            first_rank,
            second_rank,
            composite_zero,
            injective: first_rank == ranks[0] * d,
            surjective: second_rank == ranks[2] * d,
            middle_exact: first_rank + second_rank == ranks[1] * d,
            chain_maps,
        });
    }
    Ok(out)
}

fn sequence(
    tags: [FunctorTag; 3],
    maps: [NaturalMap; 2],
    norms: [&Normalized; 3],
    level_ranks: &[usize],
    ring: &crate::algebra::MonomialQuotientRing,
) -> Result<ShortExactSequence> {
    let first = normalized_map(maps[0], norms[0], norms[1], level_ranks, ring)?;
    let second = normalized_map(maps[1], norms[1], norms[2], level_ranks, ring)?;
    let complexes = [&norms[0].complex, &norms[1].complex, &norms[2].complex];
    let certificates = certify(&complexes, &first, &second)?;
    Ok(ShortExactSequence {
        functors: tags,
        homology: complexes.map(ChainComplex::homology),
        complexes: complexes.map(Clone::clone),
        first,
        second,
        certificates,
    })
}

/// Builds the sequences of the fundamental lemma by applying the natural
/// transformations levelwise on `Γ(P)` and normalizing.
pub fn ses_maps(p: &ChainComplex, char2: bool) -> Result<FundamentalSes> {
    let ring = p.ring().clone();
    if char2 && ring.p() != 2 {
        return Err(Error::Characteristic(format!(
            "the Frobenius sequence needs characteristic 2, the ring has {}",
            ring.p()
        )));
    }
    let top = 2 * p.top();
    let g = gamma(p, top)?;
    let level_ranks = g.level_ranks().to_vec();
    let norm = |tag| -> Result<Normalized> {
        let s = apply_functor(tag, &g)?;
        // F(P) lives in degrees up to top(P); pad to the common range
        normalize_with_bases(&s, top)
    };
    let l2 = norm(FunctorTag::L2)?;
    let t2 = norm(FunctorTag::T2)?;
    let s2 = norm(FunctorTag::S2)?;
    let main = sequence(
        [FunctorTag::L2, FunctorTag::T2, FunctorTag::S2],
        [NaturalMap::WedgeToTensor, NaturalMap::TensorToSym],
        [&l2, &t2, &s2],
        &level_ranks,
        &ring,
    )?;
    let char2 = if char2 {
        let fr = norm(FunctorTag::Frob)?;
        Some(sequence(
            [FunctorTag::Frob, FunctorTag::S2, FunctorTag::L2],
            [NaturalMap::FrobToSym, NaturalMap::SymToWedge],
            [&fr, &s2, &l2],
            &level_ranks,
            &ring,
        )?)
    } else {
        None
    };
    Ok(FundamentalSes { main, char2 })
}

/// `dim_k` of `coker(P_0 ⊗ P_1 -> Λ²P_0)`, `e_a ⊗ f_b ↦ e_a ∧ ∂f_b`, which
/// presents `Λ²(H_0 P)`.
pub fn wedge_h0_oracle(p: &ChainComplex) -> Result<usize> {
    let ring = p.ring();
    let r0 = p.rank(0);
    let rows = r0 * r0.saturating_sub(1) / 2;
    let Some(d) = p.diff(1) else {
        return Ok(rows * ring.dim());
    };
    let r1 = d.cols();
    let mut m = FreeMap::zeros(ring, rows, r0 * r1);
    let minus_one = ring.p() - 1;
    for a in 0..r0 {
        for b in 0..r1 {
            let col = a * r1 + b;
            for c in 0..r0 {
                if c == a || d.is_entry_zero(c, b) {
                    continue;
                }
                let e = d.get(c, b);
                let (row, e) = if a < c {
                    (wedge_index(r0, a, c), e)
                } else {
                    (wedge_index(r0, c, a), e.scale(minus_one))
                };
                let cur = m.get(row, col).add(&e)?;
                m.set(row, col, &cur)?;
            }
        }
    }
    Ok(rows * ring.dim() - m.underlying_k_matrix().rank())
}

/// `(dim_k H_0(Λ̃²P), dim_k Λ²(H_0 P))`.
pub fn lem419(p: &ChainComplex) -> Result<(usize, usize)> {
    let lhs = extend(FunctorTag::L2, p)?.homology().h[0];
    Ok((lhs, wedge_h0_oracle(p)?))
}

/// Degreewise `h(T̃²P) = h(Λ̃²P) + h(S̃²P)` in odd characteristic.
pub fn odd_split_check(p: &ChainComplex) -> Result<bool> {
    if p.ring().p() == 2 {
        return Err(Error::Characteristic("the split check needs odd characteristic".into()));
    }
    let h = |tag| extend(tag, p).map(|c| c.homology().h);
    let (t, l, s) = (h(FunctorTag::T2)?, h(FunctorTag::L2)?, h(FunctorTag::S2)?);
    let at = |v: &Vec<usize>, j: usize| v.get(j).copied().unwrap_or(0);
    let top = t.len().max(l.len()).max(s.len());
    Ok((0..top).all(|j| at(&t, j) == at(&l, j) + at(&s, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialQuotientRing;
    use crate::complex::{koszul, random_complex};

    #[test]
    fn sequences_are_exact() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        for seed in 0..3 {
            let p = random_complex(&r, &[2, 2, 1], seed, seed != 1).unwrap();
            let ses = ses_maps(&p, true).unwrap();
            assert!(ses.main.exact(), "{:?}", ses.main.certificates);
            assert!(ses.main.euler_additive());
            let c2 = ses.char2.unwrap();
            assert!(c2.exact(), "{:?}", c2.certificates);
            assert!(c2.euler_additive());
        }
        let t = MonomialQuotientRing::truncated(3, 3).unwrap();
        let p = random_complex(&t, &[1, 2], 1, true).unwrap();
        assert!(ses_maps(&p, false).unwrap().main.exact());
        assert!(matches!(ses_maps(&p, true), Err(Error::Characteristic(_))));
    }

    #[test]
    fn wedge_of_h0() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let k = koszul(&r, &[r.var(0), r.var(1)]).unwrap();
        let (lhs, rhs) = lem419(&k.truncate(0, 1).unwrap()).unwrap();
        // H_0 = k, so Λ²(H_0) = 0
        assert_eq!((lhs, rhs), (0, 0));
        for seed in 0..4 {
            let p = random_complex(&r, &[3, 2], seed, true).unwrap();
            let (lhs, rhs) = lem419(&p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn odd_split() {
        let r = MonomialQuotientRing::truncated(3, 3).unwrap();
        let k = koszul(&r, &[r.var(0)]).unwrap();
        assert!(odd_split_check(&k).unwrap());
        let iso = ChainComplex::two_term(FreeMap::identity(&r, 2));
        assert!(odd_split_check(&iso).unwrap());
        let c = MonomialQuotientRing::carlsson(1).unwrap();
        assert!(odd_split_check(&koszul(&c, &[c.var(0)]).unwrap()).is_err());
    }
}
