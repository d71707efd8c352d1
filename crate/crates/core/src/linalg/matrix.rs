//! Dense matrices over F_p.
//!
//! Every entry is stored reduced into `[0, p)`. Elimination-based queries
//! (`rank`, `kernel`, `image`) dispatch to the bit-packed path in
//! [`super::bitmat`] when `p == 2`; the `*_generic` variants always run the
//! word-per-entry elimination and exist so the two paths can be checked
//! against each other.

use std::fmt;

use super::bitmat::BitMatrix;
use super::field;
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_vec(p: u32, rows: usize, cols: usize, mut data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        for x in data.iter_mut() {
            *x %= p;
        }
        Ok(FpMatrix { p, rows, cols, data })
    }

    /// Builds a matrix from signed rows; entries are reduced into `[0, p)`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(r.iter().map(|&v| field::reduce_i64(v, p)));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
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
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product; skips zero entries of the left factor.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let n = other.cols;
        let mut acc = vec![0u64; n];
        let mut out = Self::zeros(self.p, self.rows, n);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * n + j] = v as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.p as u64;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p) as u32
            })
            .collect())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p || self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut out = Self::zeros(self.p, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.data[a * cols.len() + b] = self.get(i, j);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.p == 2 {
            BitMatrix::from_fp(self).rank()
        } else {
            self.rank_generic()
        }
    }

    pub fn rank_generic(&self) -> usize {
        self.rref_generic().pivots.len()
    }

    /// Reduced row echelon form computed entrywise.
    pub fn rref_generic(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = rref_in_place(m.p, m.rows, m.cols, &mut m.data);
        Echelon { matrix: m, pivots }
    }

    /// Reduced row echelon form, bit-packed when `p == 2`.
    pub fn rref(&self) -> Echelon {
        if self.p == 2 {
            let mut b = BitMatrix::from_fp(self);
            let pivots = b.rref();
            Echelon {
                matrix: b.to_fp(),
                pivots,
            }
        } else {
            self.rref_generic()
        }
    }

    /// Basis of `{v : Mv = 0}` in canonical (reduced echelon) form.
    pub fn kernel(&self) -> Subspace {
        if self.p == 2 {
            BitMatrix::from_fp(self).kernel()
        } else {
            self.kernel_generic()
        }
    }

    pub fn kernel_generic(&self) -> Subspace {
        let ech = self.rref_generic();
        let vectors = kernel_vectors(&ech, self.cols);
        Subspace::from_vectors_generic(self.p, self.cols, vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_matrix_rows(&self.transpose())
    }

    /// Some `x` with `Mx = b`, or `None` when `b` is outside the image.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let w = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * w);
        for i in 0..self.rows {
            aug.extend_from_slice(self.row(i));
            aug.push(b[i] % self.p);
        }
        let pivots = rref_in_place(self.p, self.rows, w, &mut aug);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r * w + self.cols];
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// In-place reduced row echelon form of a row-major `rows x cols` block.
/// Returns the pivot columns in increasing order.
pub(crate) fn rref_in_place(p: u32, rows: usize, cols: usize, data: &mut [u32]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let pm = p as u64;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if i != r {
            for j in c..cols {
                data.swap(i * cols + j, r * cols + j);
            }
        }
        let s = field::inv(data[r * cols + c], p) as u64;
        if s != 1 {
            for j in c..cols {
                data[r * cols + j] = ((data[r * cols + j] as u64 * s) % pm) as u32;
            }
        }
        let (head, tail) = data.split_at_mut(r * cols);
        let (prow, rest) = tail.split_at_mut(cols);
        let mut clear = |row: &mut [u32]| {
            let f = row[c];
            if f != 0 {
                let f = pm - f as u64;
                for j in c..cols {
                    let v = prow[j];
                    if v != 0 {
                        row[j] = ((row[j] as u64 + f * v as u64) % pm) as u32;
                    }
                }
            }
        };
        head.chunks_exact_mut(cols).for_each(&mut clear);
        rest.chunks_exact_mut(cols).for_each(&mut clear);
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel vectors read off an echelon form: one per free column.
pub(crate) fn kernel_vectors(ech: &Echelon, cols: usize) -> Vec<Vec<u32>> {
    let p = ech.matrix.p;
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u32; cols];
            v[f] = 1 % p;
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = field::neg(ech.matrix.get(r, f), p);
            }
            v
        })
        .collect()
}
