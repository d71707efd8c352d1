use std::sync::Arc;

use crate::algebra::{FreeMap, MonomialQuotientRing};

/// Column-compressed map of free modules. Rows in each column are sorted and
/// every stored entry is nonzero, so structural equality is map equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SparseMap {
    pub rows: usize,
    pub cols: usize,
    d: usize,
    colptr: Vec<usize>,
    rowidx: Vec<usize>,
    vals: Vec<u32>,
}

/// Accumulator for one column.
pub(crate) struct Column<'a> {
    ring: &'a MonomialQuotientRing,
    entries: Vec<(usize, Vec<u32>)>,
}

impl Column<'_> {
    pub fn add(&mut self, row: usize, coeffs: &[u32]) {
        self.entries.push((row, coeffs.to_vec()));
    }

    pub fn add_product(&mut self, row: usize, a: &[u32], b: &[u32]) {
        let mut v = vec![0; self.ring.dim()];
        self.ring.mul_acc(&mut v, a, b);
        self.entries.push((row, v));
    }

    pub fn add_scaled(&mut self, row: usize, c: u32, a: &[u32]) {
        let p = self.ring.p();
        let v = a.iter().map(|&x| ((x as u64 * c as u64) % p as u64) as u32).collect();
        self.entries.push((row, v));
    }
}

impl SparseMap {
    pub fn build(
        ring: &MonomialQuotientRing,
        rows: usize,
        cols: usize,
        mut fill: impl FnMut(usize, &mut Column),
    ) -> Self {
        let d = ring.dim();
        let p = ring.p();
        let mut m = SparseMap {
            rows,
            cols,
            d,
            colptr: Vec::with_capacity(cols + 1),
            rowidx: Vec::new(),
            vals: Vec::new(),
        };
        m.colptr.push(0);
        for j in 0..cols {
            let mut col = Column {
                ring,
                entries: Vec::new(),
            };
            fill(j, &mut col);
            let mut entries = col.entries;
            entries.sort_by_key(|e| e.0);
            let mut i = 0;
            while i < entries.len() {
                let row = entries[i].0;
                let mut acc = std::mem::take(&mut entries[i].1);
                i += 1;
                while i < entries.len() && entries[i].0 == row {
                    for (a, &b) in acc.iter_mut().zip(&entries[i].1) {
                        *a = (*a + b) % p;
                    }
                    i += 1;
                }
                debug_assert!(row < rows);
                if acc.iter().any(|&c| c != 0) {
                    m.rowidx.push(row);
                    m.vals.extend_from_slice(&acc);
                }
            }
            m.colptr.push(m.rowidx.len());
        }
        m
    }

    #[cfg(test)]
    pub fn from_freemap(f: &FreeMap) -> Self {
        let ring = f.ring().clone();
        Self::build(&ring, f.rows(), f.cols(), |j, col| {
            for i in 0..f.rows() {
                if !f.is_entry_zero(i, j) {
                    col.add(i, f.entry(i, j));
                }
            }
        })
    }

    pub fn to_freemap(&self, ring: &Arc<MonomialQuotientRing>) -> FreeMap {
        let mut f = FreeMap::zeros(ring, self.rows, self.cols);
        for j in 0..self.cols {
            for (i, v) in self.column(j) {
                f.entry_mut(i, j).copy_from_slice(v);
            }
        }
        f
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &[u32])> + '_ {
        (self.colptr[j]..self.colptr[j + 1]).map(move |k| (self.rowidx[k], &self.vals[k * self.d..(k + 1) * self.d]))
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &MonomialQuotientRing, other: &SparseMap) -> SparseMap {
        assert_eq!(self.cols, other.rows, "sparse compose shape");
        SparseMap::build(ring, self.rows, other.cols, |j, col| {
            for (k, y) in other.column(j) {
                for (i, x) in self.column(k) {
                    col.add_product(i, x, y);
                }
            }
        })
    }

    pub fn identity(ring: &MonomialQuotientRing, n: usize) -> SparseMap {
        let mut one = vec![0; ring.dim()];
        one[0] = 1;
        SparseMap::build(ring, n, n, |j, col| col.add(j, &one))
    }

    /// `self · x` for a dense matrix `x`.
    pub fn apply(&self, x: &FreeMap) -> FreeMap {
        assert_eq!(self.cols, x.rows(), "sparse apply shape");
        let ring = x.ring();
        let mut out = FreeMap::zeros(ring, self.rows, x.cols());
        for k in 0..self.cols {
            for c in 0..x.cols() {
                let xv = x.entry(k, c);
                if xv.iter().all(|&v| v == 0) {
                    continue;
                }
                for (i, s) in self.column(k) {
                    ring.mul_acc(out.entry_mut(i, c), s, xv);
                }
            }
        }
        out
    }

    /// When every column is a single entry `±1`, the target row of each
    /// column.
    pub fn monomial_targets(&self) -> Option<Vec<usize>> {
        (0..self.cols)
            .map(|j| {
                let mut it = self.column(j);
                match (it.next(), it.next()) {
                    (Some((i, v)), None) if v[0] != 0 && v[1..].iter().all(|&c| c == 0) => Some(i),
                    _ => None,
                }
            })
            .collect()
    }
}
