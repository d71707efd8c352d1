use super::bitmat::BitMatrix;
use super::field;
use super::matrix::{rref_in_place, FpMatrix};
use crate::error::{Error, Result};

/// A subspace of F_p^n stored by its reduced row echelon basis.
///
/// The echelon basis of a subspace is unique, so two `Subspace` values are
/// equal exactly when they describe the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: u32, ambient_dim: usize) -> Self {
        Subspace {
            p,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient_dim: usize) -> Self {
        Self::from_matrix_rows(&FpMatrix::identity(p, ambient_dim))
    }

    pub(crate) fn from_canonical(p: u32, ambient_dim: usize, basis: Vec<Vec<u32>>) -> Self {
        Subspace { p, ambient_dim, basis }
    }

    /// Span of arbitrary vectors.
    pub fn from_vectors(p: u32, ambient_dim: usize, vectors: Vec<Vec<u32>>) -> Self {
        if p == 2 {
            BitMatrix::from_rows(ambient_dim, &vectors).into_subspace()
        } else {
            Self::from_vectors_generic(p, ambient_dim, vectors)
        }
    }

    pub(crate) fn from_vectors_generic(p: u32, ambient_dim: usize, vectors: Vec<Vec<u32>>) -> Self {
        let rows = vectors.len();
        let mut data: Vec<u32> = vectors.into_iter().flatten().map(|x| x % p).collect();
        let rank = rref_in_place(p, rows, ambient_dim, &mut data).len();
        let basis = data
            .chunks_exact(ambient_dim.max(1))
            .take(rank)
            .map(|r| r[..ambient_dim].to_vec())
            .collect();
        Subspace { p, ambient_dim, basis }
    }

    pub fn from_matrix_rows(m: &FpMatrix) -> Self {
        let vectors = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        Self::from_vectors(m.p(), m.cols(), vectors)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Pivot column of each basis vector, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).expect("basis vectors are nonzero"))
            .collect()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> FpMatrix {
        let data = self.basis.iter().flatten().copied().collect();
        FpMatrix::from_vec(self.p, self.basis.len(), self.ambient_dim, data).expect("basis rows have ambient length")
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p || self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.p, self.ambient_dim, other.p, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        // Reduce v against the echelon basis.
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|x| x % p).collect();
        for (b, piv) in self.basis.iter().zip(self.pivots()) {
            let f = w[piv];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = field::sub(*x, field::mul(f, y, p), p);
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_vectors(self.p, self.ambient_dim, vectors))
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn perp(&self) -> Subspace {
        if self.basis.is_empty() {
            return Self::full(self.p, self.ambient_dim);
        }
        self.to_matrix().kernel()
    }

    /// `A ∩ B`, computed as `(A^⊥ + B^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.p == other.p && self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(p: u32, n: usize, vs: &[&[u32]]) -> Subspace {
        Subspace::from_vectors(p, n, vs.iter().map(|v| v.to_vec()).collect())
    }

    #[test]
    fn intersect_examples() {
        let a = span(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(a.intersect(&a).unwrap(), a);

        let l1 = span(2, 2, &[&[1, 0]]);
        let l2 = span(2, 2, &[&[0, 1]]);
        assert_eq!(l1.intersect(&l2).unwrap().dim(), 0);

        let b = span(2, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab.dim(), 1);
        assert_eq!(ab.basis(), &[vec![0, 1, 0]]);
        assert_eq!(ab.dim(), a.dim() + b.dim() - a.sum(&b).unwrap().dim());

        let c = span(2, 4, &[&[1, 0, 0, 0]]);
        assert!(a.intersect(&c).is_err());
    }

    #[test]
    fn brute_force_intersection_of_planes_in_f2_cubed() {
        // enumerate all vectors of F_2^3 lying in both planes
        let a = span(2, 3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = span(2, 3, &[&[1, 0, 1], &[0, 1, 1]]);
        let common = (0u32..8)
            .map(|m| vec![m & 1, (m >> 1) & 1, (m >> 2) & 1])
            .filter(|v| a.contains(v) && b.contains(v))
            .count();
        assert_eq!(common, 2); // a line has two points
        assert_eq!(a.intersect(&b).unwrap().dim(), 1);
    }

    #[test]
    fn canonical_form_is_unique() {
        let s1 = span(3, 3, &[&[1, 2, 0], &[0, 1, 1]]);
        let s2 = span(3, 3, &[&[1, 0, 1], &[2, 1, 0], &[1, 2, 0]]);
        assert_eq!(s1, s2);
        let piv = s1.pivots();
        assert!(piv.windows(2).all(|w| w[0] < w[1]));
    }
}
