use std::fmt;
use std::sync::Arc;

use super::element::RingElement;
use super::ring::MonomialQuotientRing;
use crate::error::{Error, Result};
use crate::linalg::{field, FpMatrix};

/// A map of free modules `R^cols -> R^rows`, stored as a `rows x cols` matrix
/// of ring elements acting on column vectors.
///
/// Coefficients are kept in one flat buffer: entry `(i, j)` occupies
/// `data[(i * cols + j) * D .. + D]` where `D = dim_k R`.
#[derive(Clone)]
pub struct FreeMap {
    ring: Arc<MonomialQuotientRing>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FreeMap {
    pub fn zeros(ring: &Arc<MonomialQuotientRing>, rows: usize, cols: usize) -> Self {
        FreeMap {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![0; rows * cols * ring.dim()],
        }
    }

    pub fn identity(ring: &Arc<MonomialQuotientRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entry_mut(i, i)[0] = 1;
        }
        m
    }

    /// Row-major list of entries.
    pub fn from_entries(
        ring: &Arc<MonomialQuotientRing>,
        rows: usize,
        cols: usize,
        entries: &[RingElement],
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} map",
                entries.len()
            )));
        }
        let mut m = Self::zeros(ring, rows, cols);
        for (k, e) in entries.iter().enumerate() {
            if !MonomialQuotientRing::same(ring, e.ring()) {
                return Err(Error::RingMismatch);
            }
            m.entry_mut(k / cols, k % cols).copy_from_slice(e.coeffs());
        }
        Ok(m)
    }

    pub fn from_fn(
        ring: &Arc<MonomialQuotientRing>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                m.entry_mut(i, j).copy_from_slice(e.coeffs());
            }
        }
        m
    }

    /// A map with constant entries given by an F_p matrix.
    pub fn from_scalars(ring: &Arc<MonomialQuotientRing>, m: &FpMatrix) -> Result<Self> {
        if m.p() != ring.p() {
            return Err(Error::Characteristic(format!(
                "F_{} matrix over a ring of characteristic {}",
                m.p(),
                ring.p()
            )));
        }
        let mut out = Self::zeros(ring, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.entry_mut(i, j)[0] = m.get(i, j);
            }
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<MonomialQuotientRing> {
        &self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[u32] {
        let d = self.ring.dim();
        let o = (i * self.cols + j) * d;
        &self.data[o..o + d]
    }

    #[inline]
    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [u32] {
        let d = self.ring.dim();
        let o = (i * self.cols + j) * d;
        &mut self.data[o..o + d]
    }

    #[inline]
    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        self.entry(i, j).iter().all(|&c| c == 0)
    }

    pub fn get(&self, i: usize, j: usize) -> RingElement {
        RingElement::from_coeffs_unchecked(self.ring.clone(), self.entry(i, j).to_vec())
    }

    pub fn set(&mut self, i: usize, j: usize, e: &RingElement) -> Result<()> {
        if !MonomialQuotientRing::same(&self.ring, e.ring()) {
            return Err(Error::RingMismatch);
        }
        self.entry_mut(i, j).copy_from_slice(e.coeffs());
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Every entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        let d = self.ring.dim();
        self.data.chunks_exact(d.max(1)).all(|e| e[0] == 0)
    }

    fn check_ring(&self, other: &FreeMap) -> Result<()> {
        if MonomialQuotientRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Nonzero positions of each row.
    pub(crate) fn row_support(&self) -> Vec<Vec<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| !self.is_entry_zero(i, j)).collect())
            .collect()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &FreeMap) -> Result<FreeMap> {
        self.check_ring(g)?;
        if self.cols != g.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, g.rows, g.cols
            )));
        }
        let d = self.ring.dim();
        let gsupport = g.row_support();
        let mut out = FreeMap::zeros(&self.ring, self.rows, g.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.iter().all(|&c| c == 0) {
                    continue;
                }
                for &j in &gsupport[k] {
                    let o = (i * g.cols + j) * d;
                    let b = g.entry(k, j);
                    self.ring.mul_acc(&mut out.data[o..o + d], a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FreeMap) -> Result<FreeMap> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("adding maps of different shapes".into()));
        }
        let p = self.ring.p();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field::add(a, b, p))
            .collect();
        Ok(FreeMap {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: u32) -> FreeMap {
        let p = self.ring.p();
        FreeMap {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field::mul(a, c % p, p)).collect(),
        }
    }

    pub fn neg(&self) -> FreeMap {
        self.scale(self.ring.p() - 1)
    }

    pub fn sub(&self, other: &FreeMap) -> Result<FreeMap> {
        self.add(&other.neg())
    }

    pub fn transpose(&self) -> FreeMap {
        let mut t = FreeMap::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entry_mut(j, i).copy_from_slice(self.entry(i, j));
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FreeMap {
        let mut out = FreeMap::zeros(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.entry_mut(a, b).copy_from_slice(self.entry(i, j));
            }
        }
        out
    }

    pub fn columns(&self, cols: &[usize]) -> FreeMap {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &FreeMap) -> Result<FreeMap> {
        self.check_ring(other)?;
        let mut out = FreeMap::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entry_mut(i, j).copy_from_slice(self.entry(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.entry_mut(self.rows + i, self.cols + j)
                    .copy_from_slice(other.entry(i, j));
            }
        }
        Ok(out)
    }

    /// Kronecker product, indices `(i, k) -> i * other.rows + k`.
    pub fn kronecker(&self, other: &FreeMap) -> Result<FreeMap> {
        self.check_ring(other)?;
        let d = self.ring.dim();
        let (r2, c2) = (other.rows, other.cols);
        let mut out = FreeMap::zeros(&self.ring, self.rows * r2, self.cols * c2);
        let a_nz = self.nonzeros();
        let b_nz = other.nonzeros();
        for &(i, j) in &a_nz {
            for &(k, l) in &b_nz {
                let (row, col) = (i * r2 + k, j * c2 + l);
                let o = (row * out.cols + col) * d;
                self.ring
                    .mul_acc(&mut out.data[o..o + d], self.entry(i, j), other.entry(k, l));
            }
        }
        Ok(out)
    }

    /// Positions of the nonzero entries in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize)> {
        let mut nz = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_entry_zero(i, j) {
                    nz.push((i, j));
                }
            }
        }
        nz
    }

    /// The k-linear matrix of this map in the basis
    /// `{ e_j * m_c }` (free basis vector times standard monomial), of shape
    /// `(rows·D) x (cols·D)`.
    pub fn underlying_k_matrix(&self) -> FpMatrix {
        let d = self.ring.dim();
        let p = self.ring.p();
        let ncols = self.cols * d;
        let mut data = vec![0u32; self.rows * d * ncols];
        for (i, j) in self.nonzeros() {
            let e = self.entry(i, j);
            for (a, &coef) in e.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                for c in 0..d {
                    if let Some(t) = self.ring.mul_basis(a, c) {
                        let slot = &mut data[(i * d + t) * ncols + j * d + c];
                        *slot = field::add(*slot, coef, p);
                    }
                }
            }
        }
        FpMatrix::from_vec(p, self.rows * d, ncols, data).expect("shape is consistent")
    }

    /// Constant terms of the entries: the map `self ⊗_R k`.
    pub fn reduction(&self) -> FpMatrix {
        let d = self.ring.dim();
        let data = self.data.chunks_exact(d.max(1)).map(|e| e[0]).collect();
        FpMatrix::from_vec(self.ring.p(), self.rows, self.cols, data).expect("shape is consistent")
    }

    /// Entrywise Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> FreeMap {
        self.frobenius_iter(1)
    }

    /// Entrywise `a -> a^{p^e}`.
    pub fn frobenius_iter(&self, e: u32) -> FreeMap {
        let mut out = FreeMap::zeros(&self.ring, self.rows, self.cols);
        for (i, j) in self.nonzeros() {
            let v = self.get(i, j).frobenius_iter(e);
            out.entry_mut(i, j).copy_from_slice(v.coeffs());
        }
        out
    }

    /// Canonical text block: `rows cols` then one line per row.
    pub fn to_text(&self) -> String {
        super::text::freemap_to_text(self)
    }

    pub fn from_text(ring: &Arc<MonomialQuotientRing>, s: &str) -> Result<FreeMap> {
        let mut lines = super::text::Lines::new(s);
        super::text::read_freemap(ring, &mut lines)
    }
}

impl PartialEq for FreeMap {
    fn eq(&self, other: &Self) -> bool {
        MonomialQuotientRing::same(&self.ring, &other.ring)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for FreeMap {}

impl fmt::Debug for FreeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FreeMap({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.format_coeffs(self.entry(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
