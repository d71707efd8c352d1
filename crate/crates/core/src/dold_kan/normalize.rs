use std::sync::Arc;

use super::simplicial::{apply_functor, gamma, TruncatedSimplicialModule};
use super::FunctorTag;
use crate::algebra::{FreeMap, MonomialQuotientRing, RingElement};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

/// Reads coordinates of a vector of `N_n` in the extracted basis: the rows
/// `rows` of the vector, multiplied by `inv` when present.
#[derive(Clone, Debug)]
struct Coordinates {
    rows: Vec<usize>,
    inv: Option<FreeMap>,
}

impl Coordinates {
    fn apply(&self, y: &FreeMap) -> Result<FreeMap> {
        let cols: Vec<usize> = (0..y.cols()).collect();
        let picked = y.submatrix(&self.rows, &cols);
        match &self.inv {
            None => Ok(picked),
            Some(inv) => inv.compose(&picked),
        }
    }
}

/// A normalized complex together with the free bases it was expressed in.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub complex: ChainComplex,
    /// `bases[n]` is `X_n`-rank by `N_n`-rank; its columns are the extracted
    /// basis of `N_n` inside level `n`.
    pub bases: Vec<FreeMap>,
    coords: Vec<Coordinates>,
}

impl Normalized {
    /// Coordinates in the basis of `N_n` of the columns of `y`, which must
    /// lie in `N_n`.
    pub fn coordinates(&self, n: usize, y: &FreeMap) -> Result<FreeMap> {
        self.coords[n].apply(y)
    }
}

/// Inverse of a square map over the local ring, by Gauss-Jordan elimination
/// with unit pivots. `None` when the reduction is singular.
pub fn invert(f: &FreeMap) -> Option<FreeMap> {
    let n = f.rows();
    if f.cols() != n {
        return None;
    }
    let ring = f.ring();
    let mut a: Vec<Vec<RingElement>> = (0..n).map(|i| (0..n).map(|j| f.get(i, j)).collect()).collect();
    let mut b: Vec<Vec<RingElement>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c].is_unit())?;
        a.swap(c, piv);
        b.swap(c, piv);
        let u = a[c][c].inverse()?;
        a[c] = a[c].iter().map(|x| x.mul(&u).expect("same ring")).collect();
        b[c] = b[c].iter().map(|x| x.mul(&u).expect("same ring")).collect();
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let factor = a[r][c].clone();
            for j in 0..n {
                let t = factor.mul(&a[c][j]).expect("same ring");
                a[r][j] = a[r][j].sub(&t).expect("same ring");
                let t = factor.mul(&b[c][j]).expect("same ring");
                b[r][j] = b[r][j].sub(&t).expect("same ring");
            }
        }
    }
    Some(FreeMap::from_fn(ring, n, n, |i, j| b[i][j].clone()))
}

fn unit_columns(ring: &Arc<MonomialQuotientRing>, rows: usize, picks: &[usize]) -> FreeMap {
    let mut x = FreeMap::zeros(ring, rows, picks.len());
    for (c, &r) in picks.iter().enumerate() {
        x.entry_mut(r, c)[0] = 1;
    }
    x
}

/// `k`-dimension of `∩_{i<n} ker d_i` computed on underlying matrices.
pub fn normalized_k_dimension(s: &TruncatedSimplicialModule, n: usize) -> Result<usize> {
    let d = s.ring().dim();
    let p = s.ring().p();
    let cols = s.level_ranks()[n] * d;
    let mut stacked = FpMatrix::zeros(p, 0, cols);
    for i in 0..n {
        let face = s.face(n, i).expect("face inside truncation");
        stacked = stacked.vstack(&face.underlying_k_matrix())?;
    }
    Ok(stacked.kernel().dim())
}

impl TruncatedSimplicialModule {
    /// The idempotent `(1 - s_{n-1} d_{n-1}) ∘ ... ∘ (1 - s_0 d_0)` with
    /// image `∩_{i<n} ker d_i`, applied to the columns of `x`.
    fn project(&self, n: usize, x: &FreeMap) -> Result<FreeMap> {
        let mut x = x.clone();
        for i in 0..n {
            let d = self.face_sparse(n, i).expect("inside truncation");
            let s = self.degen_sparse(n - 1, i).expect("inside truncation");
            x = x.sub(&s.apply(&d.apply(&x)))?;
        }
        Ok(x)
    }

    /// Basis vectors of level `n` outside every degeneracy image, or `None`
    /// when some degeneracy does not send basis vectors to unit multiples of
    /// basis vectors.
    fn nondegenerate(&self, n: usize) -> Option<Vec<usize>> {
        let mut degenerate = vec![false; self.level_ranks()[n]];
        for j in 0..n {
            for t in self.degen_sparse(n - 1, j)?.monomial_targets()? {
                degenerate[t] = true;
            }
        }
        Some((0..degenerate.len()).filter(|&i| !degenerate[i]).collect())
    }

    fn extract_basis(&self, n: usize) -> Result<(FreeMap, Coordinates)> {
        let ring = self.ring();
        let rank = self.level_ranks()[n];
        if n == 0 {
            let all: Vec<usize> = (0..rank).collect();
            return Ok((FreeMap::identity(ring, rank), Coordinates { rows: all, inv: None }));
        }
        let (basis, coords) = if let Some(j) = self.nondegenerate(n) {
            // X_n = N_n ⊕ D_n with D_n spanned by the degenerate basis
            // vectors; the projector fixes nondegenerate coordinates.
            let b = self.project(n, &unit_columns(ring, rank, &j))?;
            (b, Coordinates { rows: j, inv: None })
        } else {
            let full = self.project(n, &FreeMap::identity(ring, rank))?;
            let pivots = full.reduction().rref().pivots;
            let b = full.columns(&pivots);
            let rows = b.reduction().transpose().rref().pivots;
            let all: Vec<usize> = (0..pivots.len()).collect();
            let inv = invert(&b.submatrix(&rows, &all)).ok_or_else(|| Error::BasisExtraction {
                degree: n,
                msg: "selected block is not invertible".into(),
            })?;
            let kdim = normalized_k_dimension(self, n)?;
            if kdim != ring.dim() * pivots.len() {
                return Err(Error::BasisExtraction {
                    degree: n,
                    msg: format!(
                        "dim_k N_n = {kdim} but {} basis elements over a ring of dimension {}",
                        pivots.len(),
                        ring.dim()
                    ),
                });
            }
            (b, Coordinates { rows, inv: Some(inv) })
        };
        for i in 0..n {
            let d = self.face_sparse(n, i).expect("inside truncation");
            if !d.apply(&basis).is_zero() {
                return Err(Error::BasisExtraction {
                    degree: n,
                    msg: format!("extracted basis is not killed by d_{i}"),
                });
            }
        }
        if basis.reduction().rank() != basis.cols() {
            return Err(Error::BasisExtraction {
                degree: n,
                msg: "extracted basis is not independent modulo the maximal ideal".into(),
            });
        }
        Ok((basis, coords))
    }
}

/// Normalized complex `N(S)` in degrees `0..=out_top`, with the extracted
/// bases.
pub fn normalize_with_bases(s: &TruncatedSimplicialModule, out_top: usize) -> Result<Normalized> {
    if out_top > s.n_max() {
        return Err(Error::InvalidRange(format!(
            "output degree {out_top} exceeds the truncation level {}",
            s.n_max()
        )));
    }
    let ring = s.ring().clone();
    let mut bases: Vec<FreeMap> = Vec::with_capacity(out_top + 1);
    let mut coords: Vec<Coordinates> = Vec::with_capacity(out_top + 1);
    let mut diffs = Vec::with_capacity(out_top);
    for n in 0..=out_top {
        let (b, c) = s.extract_basis(n)?;
        if n > 0 {
            let y = s.face_sparse(n, n).expect("inside truncation").apply(&b);
            let mut dn = coords[n - 1].apply(&y)?;
            if coords[n - 1].inv.is_some() && bases[n - 1].compose(&dn)? != y {
                return Err(Error::BasisExtraction {
                    degree: n - 1,
                    msg: "image of d_n is not in the span of the basis".into(),
                });
            }
            if n % 2 == 1 {
                dn = dn.neg();
            }
            diffs.push(dn);
        }
        bases.push(b);
        coords.push(c);
    }
    let ranks: Vec<usize> = bases.iter().map(FreeMap::cols).collect();
    let complex = ChainComplex::new(&ring, ranks, diffs)?;
    Ok(Normalized { complex, bases, coords })
}

/// Normalized complex with differential `(-1)^n d_n` restricted to
/// `N_n = ∩_{i<n} ker d_i`.
pub fn normalize(s: &TruncatedSimplicialModule, out_top: usize) -> Result<ChainComplex> {
    normalize_with_bases(s, out_top).map(|n| n.complex)
}

/// `G̃(P) = N G_* Γ(P)` through degree `out_top`.
pub fn extend_to(tag: FunctorTag, p: &ChainComplex, out_top: usize) -> Result<Normalized> {
    let g = gamma(p, out_top.max(p.top()))?;
    let s = apply_functor(tag, &g)?;
    normalize_with_bases(&s, out_top)
}

/// `G̃(P)`, concentrated in degrees `[0, deg(G)·top(P)]`.
pub fn extend(tag: FunctorTag, p: &ChainComplex) -> Result<ChainComplex> {
    extend_to(tag, p, tag.degree() * p.top()).map(|n| n.complex)
}

/// Comparison of `F̃(P)` with the entrywise Frobenius of `P`.
#[derive(Clone, Debug)]
pub struct FrobeniusComparison {
    pub extended: ChainComplex,
    pub direct: ChainComplex,
    /// `transforms[n] : N_n -> F(P)_n`, the top-summand projection with the
    /// sign `(-1)^{n(n+1)/2}` absorbed from the normalization convention.
    pub transforms: Vec<FreeMap>,
    pub ranks_agree: bool,
    pub homology_agree: bool,
    pub transforms_invertible: bool,
    pub matrices_agree: bool,
}

impl FrobeniusComparison {
    pub fn passed(&self) -> bool {
        self.ranks_agree && self.homology_agree && self.transforms_invertible && self.matrices_agree
    }
}

pub fn compare_frobenius(p: &ChainComplex) -> Result<FrobeniusComparison> {
    let top = p.top();
    let norm = extend_to(FunctorTag::Frob, p, top)?;
    let direct = p.frobenius();
    let mut transforms = Vec::with_capacity(top + 1);
    for (n, b) in norm.bases.iter().enumerate() {
        // Γ(P)_n ends with the summand of the identity surjection, i.e. P_n
        let r = p.rank(n);
        let start = b.rows() - r;
        let rows: Vec<usize> = (start..b.rows()).collect();
        let cols: Vec<usize> = (0..b.cols()).collect();
        let t = b.submatrix(&rows, &cols);
        let sign = (n * (n + 1) / 2) % 2 == 1;
        transforms.push(if sign { t.neg() } else { t });
    }
    let ext = &norm.complex;
    let ranks_agree = ext.ranks() == direct.ranks();
    let homology_agree = ranks_agree && ext.homology() == direct.homology();
    let transforms_invertible = ranks_agree && transforms.iter().all(|t| invert(t).is_some());
    let mut matrices_agree = ranks_agree;
    if ranks_agree {
        for n in 1..=top {
            let lhs = transforms[n - 1].compose(&ext.diffs()[n - 1])?;
            let rhs = direct.diffs()[n - 1].compose(&transforms[n])?;
            if lhs != rhs {
                matrices_agree = false;
            }
        }
    }
    Ok(FrobeniusComparison {
        extended: norm.complex,
        direct,
        transforms,
        ranks_agree,
        homology_agree,
        transforms_invertible,
        matrices_agree,
    })
}
