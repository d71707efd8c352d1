use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::sparse::SparseMap;
use super::{FunctorTag, Surjection};
use crate::algebra::{FreeMap, MonomialQuotientRing};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};

/// A simplicial free module truncated at level `N_max`: levels `0..=N_max`,
/// faces `d_i : X_n -> X_{n-1}` and degeneracies `s_j : X_n -> X_{n+1}`
/// wherever both ends are inside the truncation.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSimplicialModule {
    ring: Arc<MonomialQuotientRing>,
    n_max: usize,
    level_ranks: Vec<usize>,
    /// `faces[n][i]`, empty for `n = 0`.
    faces: Vec<Vec<SparseMap>>,
    /// `degens[n][j]`, for `n < n_max`.
    degens: Vec<Vec<SparseMap>>,
}

impl fmt::Debug for TruncatedSimplicialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSimplicialModule")
            .field("n_max", &self.n_max)
            .field("level_ranks", &self.level_ranks)
            .finish()
    }
}

/// Summands `(σ, P_k)` of `Γ(P)_n` with their offsets.
struct GammaLevel {
    surjections: Vec<Surjection>,
    offsets: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
    rank: usize,
}

impl GammaLevel {
    fn new(n: usize, p: &ChainComplex) -> Self {
        let surjections = Surjection::all(n);
        let mut offsets = Vec::with_capacity(surjections.len());
        let mut index = HashMap::new();
        let mut rank = 0;
        for (s, sigma) in surjections.iter().enumerate() {
            offsets.push(rank);
            index.insert(sigma.jumps().to_vec(), s);
            rank += p.rank(sigma.target());
        }
        GammaLevel {
            surjections,
            offsets,
            index,
            rank,
        }
    }
}

/// `Γ(α) : Γ(P)_n -> Γ(P)_m` for a monotone `α : [m] -> [n]` given by its
/// values.
fn gamma_structure_map(
    ring: &MonomialQuotientRing,
    p: &ChainComplex,
    alpha: &[usize],
    src: &GammaLevel,
    dst: &GammaLevel,
) -> SparseMap {
    let mut one = vec![0; ring.dim()];
    one[0] = 1;
    // per source summand: (target offset, Some(k) for ∂_k or None for identity)
    let mut plan: Vec<Option<(usize, Option<usize>)>> = Vec::with_capacity(src.surjections.len());
    let mut col_summand = Vec::with_capacity(src.rank);
    for (s, sigma) in src.surjections.iter().enumerate() {
        let k = sigma.target();
        let composite: Vec<usize> = alpha.iter().map(|&t| sigma.apply(t)).collect();
        let mut image = composite.clone();
        image.dedup();
        let tau_values: Vec<usize> = composite
            .iter()
            .map(|c| image.binary_search(c).expect("value is in the image"))
            .collect();
        let tau = Surjection::from_values(&tau_values).expect("monotone corestriction");
        let target = dst.offsets[dst.index[tau.jumps()]];
        let entry = if image.len() == k + 1 {
            Some((target, None))
        } else if image.len() == k && image.last() == Some(&(k - 1)) {
            Some((target, Some(k)))
        } else {
            None
        };
        plan.push(entry);
        col_summand.extend(std::iter::repeat_n((s, k), p.rank(k)));
    }
    SparseMap::build(ring, dst.rank, src.rank, |col, out| {
        let (s, k) = col_summand[col];
        let i = col - src.offsets[s];
        match plan[s] {
            None => {}
            Some((target, None)) => out.add(target + i, &one),
            Some((target, Some(k_diff))) => {
                debug_assert_eq!(k_diff, k);
                let d = p.diff(k).expect("k >= 1 when the top is omitted");
                for row in 0..d.rows() {
                    if !d.is_entry_zero(row, i) {
                        out.add(target + row, d.entry(row, i));
                    }
                }
            }
        }
    })
}

/// The simplicial module `Γ(P)`, truncated at `n_max`.
pub fn gamma(p: &ChainComplex, n_max: usize) -> Result<TruncatedSimplicialModule> {
    if n_max < p.top() {
        return Err(Error::InvalidRange(format!(
            "truncation level {n_max} is below the top degree {}",
            p.top()
        )));
    }
    let ring = p.ring().clone();
    let levels: Vec<GammaLevel> = (0..=n_max).map(|n| GammaLevel::new(n, p)).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=n_max {
        faces.push(
            (0..=n)
                .map(|i| {
                    let delta: Vec<usize> = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
                    gamma_structure_map(&ring, p, &delta, &levels[n], &levels[n - 1])
                })
                .collect(),
        );
    }
    let degens = (0..n_max)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let sigma: Vec<usize> = (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
                    gamma_structure_map(&ring, p, &sigma, &levels[n], &levels[n + 1])
                })
                .collect()
        })
        .collect();
    Ok(TruncatedSimplicialModule {
        ring,
        n_max,
        level_ranks: levels.iter().map(|l| l.rank).collect(),
        faces,
        degens,
    })
}

/// Index of `e_i · e_j` (`i <= j`) in the lexicographic basis of `S²(k^n)`.
pub(crate) fn sym_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Index of `e_i ∧ e_j` (`i < j`) in the lexicographic basis of `Λ²(k^n)`.
pub(crate) fn wedge_index(n: usize, i: usize, j: usize) -> usize {
    i * (n - 1) - i * i.saturating_sub(1) / 2 + (j - i - 1)
}

pub(crate) fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

pub(crate) fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// `G(f)` for a map `f : k^cols -> k^rows` of free modules.
pub(crate) fn functor_on_map(tag: FunctorTag, ring: &Arc<MonomialQuotientRing>, f: &SparseMap) -> SparseMap {
    let (r, c) = (f.rows, f.cols);
    let minus_one = ring.p() - 1;
    match tag {
        FunctorTag::T2 => SparseMap::build(ring, r * r, c * c, |col, out| {
            let (a, b) = (col / c, col % c);
            for (i, x) in f.column(a) {
                for (j, y) in f.column(b) {
                    out.add_product(i * r + j, x, y);
                }
            }
        }),
        FunctorTag::S2 => {
            let pairs = sym_pairs(c);
            SparseMap::build(ring, tag.rank_law(r), pairs.len(), |col, out| {
                let (a, b) = pairs[col];
                for (i, x) in f.column(a) {
                    for (j, y) in f.column(b) {
                        out.add_product(sym_index(r, i.min(j), i.max(j)), x, y);
                    }
                }
            })
        }
        FunctorTag::L2 => {
            let pairs = wedge_pairs(c);
            let d = ring.dim();
            SparseMap::build(ring, tag.rank_law(r), pairs.len(), |col, out| {
                let (a, b) = pairs[col];
                for (i, x) in f.column(a) {
                    for (j, y) in f.column(b) {
                        if i == j {
                            continue;
                        }
                        let mut v = vec![0; d];
                        ring.mul_acc(&mut v, x, y);
                        if i < j {
                            out.add(wedge_index(r, i, j), &v);
                        } else {
                            out.add_scaled(wedge_index(r, j, i), minus_one, &v);
                        }
                    }
                }
            })
        }
        FunctorTag::Frob => SparseMap::build(ring, r, c, |col, out| {
            for (i, x) in f.column(col) {
                let e = ring.element(x.to_vec()).expect("length matches").frobenius();
                out.add(i, e.coeffs());
            }
        }),
    }
}

/// Levelwise application `G_*`.
pub fn apply_functor(tag: FunctorTag, s: &TruncatedSimplicialModule) -> Result<TruncatedSimplicialModule> {
    let ring = &s.ring;
    let map = |m: &SparseMap| functor_on_map(tag, ring, m);
    Ok(TruncatedSimplicialModule {
        ring: ring.clone(),
        n_max: s.n_max,
        level_ranks: s.level_ranks.iter().map(|&r| tag.rank_law(r)).collect(),
        faces: s.faces.iter().map(|l| l.iter().map(map).collect()).collect(),
        degens: s.degens.iter().map(|l| l.iter().map(map).collect()).collect(),
    })
}

impl TruncatedSimplicialModule {
    pub fn ring(&self) -> &Arc<MonomialQuotientRing> {
        &self.ring
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn level_ranks(&self) -> &[usize] {
        &self.level_ranks
    }

    /// `d_i : X_n -> X_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> Option<FreeMap> {
        self.face_sparse(n, i).map(|m| m.to_freemap(&self.ring))
    }

    /// `s_j : X_n -> X_{n+1}`.
    pub fn degeneracy(&self, n: usize, j: usize) -> Option<FreeMap> {
        self.degen_sparse(n, j).map(|m| m.to_freemap(&self.ring))
    }

    pub(crate) fn face_sparse(&self, n: usize, i: usize) -> Option<&SparseMap> {
        self.faces.get(n).and_then(|l| l.get(i))
    }

    pub(crate) fn degen_sparse(&self, n: usize, j: usize) -> Option<&SparseMap> {
        self.degens.get(n).and_then(|l| l.get(j))
    }

    fn compare(&self, lhs: SparseMap, rhs: SparseMap, what: impl FnOnce() -> String) -> Result<()> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::SimplicialIdentity(what()))
        }
    }

    /// Checks the five families of simplicial identities at every index
    /// inside the truncation.
    pub fn check_identities(&self) -> Result<()> {
        let r = &*self.ring;
        let d = |n: usize, i: usize| &self.faces[n][i];
        let s = |n: usize, j: usize| &self.degens[n][j];
        for n in 2..=self.n_max {
            for j in 0..=n {
                for i in 0..j {
                    self.compare(
                        d(n - 1, i).compose(r, d(n, j)),
                        d(n - 1, j - 1).compose(r, d(n, i)),
                        || format!("d_{i} d_{j} = d_{} d_{i} at level {n}", j - 1),
                    )?;
                }
            }
        }
        for n in 0..self.n_max.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    self.compare(
                        s(n + 1, i).compose(r, s(n, j)),
                        s(n + 1, j + 1).compose(r, s(n, i)),
                        || format!("s_{i} s_{j} = s_{} s_{i} at level {n}", j + 1),
                    )?;
                }
            }
        }
        for n in 0..self.n_max {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = d(n + 1, i).compose(r, s(n, j));
                    let rhs = if i < j {
                        s(n - 1, j - 1).compose(r, d(n, i))
                    } else if i == j || i == j + 1 {
                        SparseMap::identity(r, self.level_ranks[n])
                    } else {
                        s(n - 1, j).compose(r, d(n, i - 1))
                    };
                    self.compare(lhs, rhs, || format!("d_{i} s_{j} at level {n}"))?;
                }
            }
        }
        Ok(())
    }

    /// Conjugates every level by a non-monomial automorphism.
    #[cfg(test)]
    pub(crate) fn scramble_for_tests(&mut self) {
        let ring = self.ring.clone();
        let autos: Vec<(SparseMap, SparseMap)> = self
            .level_ranks
            .iter()
            .map(|&n| {
                let a = FreeMap::from_fn(&ring, n, n, |i, j| {
                    if i == j || i == j + 1 {
                        ring.one()
                    } else if i == 0 && j + 1 == n {
                        ring.var(0)
                    } else {
                        ring.zero()
                    }
                });
                let inv = super::normalize::invert(&a).expect("unipotent");
                (SparseMap::from_freemap(&a), SparseMap::from_freemap(&inv))
            })
            .collect();
        for n in 1..=self.n_max {
            for f in &mut self.faces[n] {
                *f = autos[n - 1].0.compose(&ring, &f.compose(&ring, &autos[n].1));
            }
        }
        for n in 0..self.n_max {
            for s in &mut self.degens[n] {
                *s = autos[n + 1].0.compose(&ring, &s.compose(&ring, &autos[n].1));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{koszul, random_complex};

    fn two_term() -> ChainComplex {
        let r = MonomialQuotientRing::truncated(3, 3).unwrap();
        let x = r.var(0);
        let f = FreeMap::from_entries(&r, 1, 2, &[x.clone(), x.mul(&x).unwrap()]).unwrap();
        ChainComplex::two_term(f)
    }

    #[test]
    fn level_one_faces() {
        let p = two_term();
        let g = gamma(&p, 2).unwrap();
        assert_eq!(g.level_ranks(), &[1, 3, 5]);
        let r = p.ring();
        let d0 = g.face(1, 0).unwrap();
        let d1 = g.face(1, 1).unwrap();
        // d0(p0, p1) = p0, d1(p0, p1) = p0 + ∂p1
        assert_eq!(
            d0,
            FreeMap::from_entries(r, 1, 3, &[r.one(), r.zero(), r.zero()]).unwrap()
        );
        let mut expected = FreeMap::zeros(r, 1, 3);
        expected.set(0, 0, &r.one()).unwrap();
        expected.set(0, 1, &p.diffs()[0].get(0, 0)).unwrap();
        expected.set(0, 2, &p.diffs()[0].get(0, 1)).unwrap();
        assert_eq!(d1, expected);
        assert!(g.face(0, 0).is_none());
        assert!(gamma(&p, 0).is_err());
    }

    #[test]
    fn identities_hold_for_gamma_and_functors() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let k = koszul(&r, &[r.var(0), r.var(1)]).unwrap();
        let g = gamma(&k, 3).unwrap();
        g.check_identities().unwrap();
        for tag in FunctorTag::ALL {
            let h = apply_functor(tag, &g).unwrap();
            h.check_identities().unwrap();
        }
        let c = random_complex(&r, &[2, 2, 1], 5, false).unwrap();
        let g = gamma(&c, 3).unwrap();
        g.check_identities().unwrap();
        apply_functor(FunctorTag::L2, &g).unwrap().check_identities().unwrap();
    }

    #[test]
    fn broken_module_is_detected() {
        let p = two_term();
        let mut g = gamma(&p, 2).unwrap();
        g.faces[2].swap(0, 1);
        assert!(matches!(g.check_identities(), Err(Error::SimplicialIdentity(_))));
    }

    #[test]
    fn pair_indices() {
        for n in 1..6 {
            for (k, (i, j)) in sym_pairs(n).into_iter().enumerate() {
                assert_eq!(sym_index(n, i, j), k);
            }
            for (k, (i, j)) in wedge_pairs(n).into_iter().enumerate() {
                assert_eq!(wedge_index(n, i, j), k);
            }
        }
    }

    #[test]
    fn functors_on_small_maps() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let id3 = SparseMap::identity(&r, 3);
        assert_eq!(functor_on_map(FunctorTag::T2, &r, &id3), SparseMap::identity(&r, 9));
        assert_eq!(functor_on_map(FunctorTag::S2, &r, &id3), SparseMap::identity(&r, 6));
        assert_eq!(functor_on_map(FunctorTag::L2, &r, &id3), SparseMap::identity(&r, 3));
        let (a, b) = (r.var(0), r.var(1));
        let diag = FreeMap::from_entries(&r, 2, 2, &[a.clone(), r.zero(), r.zero(), b.clone()]).unwrap();
        let l2 = functor_on_map(FunctorTag::L2, &r, &SparseMap::from_freemap(&diag)).to_freemap(&r);
        assert_eq!(l2, FreeMap::from_entries(&r, 1, 1, &[a.mul(&b).unwrap()]).unwrap());
    }

    #[test]
    fn cross_effect_rank() {
        let (a, b) = (3, 4);
        let l2 = FunctorTag::L2;
        assert_eq!(l2.rank_law(a + b), l2.rank_law(a) + a * b + l2.rank_law(b));
    }
}
