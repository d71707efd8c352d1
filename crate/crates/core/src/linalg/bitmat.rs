//! Bit-packed matrices over F_2: 64 entries per word, row operations are
//! word-wide XORs.

use super::matrix::FpMatrix;
use super::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_fp(m: &FpMatrix) -> Self {
        debug_assert_eq!(m.p(), 2);
        let mut b = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v & 1 == 1 {
                    b.data[i * b.words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        b
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut b = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v & 1 == 1 {
                    b.data[i * b.words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        b
    }

    pub fn to_fp(&self) -> FpMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            data.extend((0..self.cols).map(|j| self.get(i, j) as u32));
        }
        FpMatrix::from_vec(2, self.rows, self.cols, data).expect("shape is consistent")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row_vec(&self, i: usize) -> Vec<u32> {
        (0..self.cols).map(|j| self.get(i, j) as u32).collect()
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let words = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(i) = (r..self.rows).find(|&i| self.data[i * words + w] & bit != 0) else {
                continue;
            };
            if i != r {
                for k in w..words {
                    self.data.swap(i * words + k, r * words + k);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * words);
            let (prow, rest) = tail.split_at_mut(words);
            let prow = &prow[w..];
            let mut clear = |row: &mut [u64]| {
                if row[w] & bit != 0 {
                    for (a, b) in row[w..].iter_mut().zip(prow) {
                        *a ^= b;
                    }
                }
            };
            head.chunks_exact_mut(words).for_each(&mut clear);
            rest.chunks_exact_mut(words).for_each(&mut clear);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&f| !is_pivot[f]).collect();
        let mut k = BitMatrix::zeros(free.len(), self.cols);
        for (t, &f) in free.iter().enumerate() {
            k.set(t, f, true);
            for (r, &c) in pivots.iter().enumerate() {
                if m.get(r, f) {
                    k.set(t, c, true);
                }
            }
        }
        k.into_subspace()
    }

    /// Canonical span of the rows.
    pub fn into_subspace(mut self) -> Subspace {
        let rank = self.rref().len();
        let basis = (0..rank).map(|i| self.row_vec(i)).collect();
        Subspace::from_canonical(2, self.cols, basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_generic_on_a_fixed_matrix() {
        let m = FpMatrix::from_rows(2, &[[1, 0, 1, 1, 0], [0, 1, 1, 0, 1], [1, 1, 0, 1, 1], [0, 0, 0, 0, 0]]).unwrap();
        let b = BitMatrix::from_fp(&m);
        assert_eq!(b.rank(), m.rank_generic());
        assert_eq!(b.kernel(), m.kernel_generic());
        assert_eq!(b.to_fp(), m);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 130;
        let mut m = FpMatrix::zeros(2, n, n);
        for i in 0..n {
            m.set(i, i, 1);
            m.set(i, (i + 1) % n, 1);
        }
        // cyclic x + x^{i+1}: rank n - 1
        assert_eq!(BitMatrix::from_fp(&m).rank(), n - 1);
        assert_eq!(m.rank_generic(), n - 1);
        assert_eq!(m.kernel().basis(), &[vec![1u32; n]]);
    }
}
