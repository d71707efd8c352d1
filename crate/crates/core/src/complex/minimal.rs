use super::ChainComplex;
use crate::algebra::FreeMap;
use crate::error::Result;

fn unit_entry(f: &FreeMap) -> Option<(usize, usize)> {
    (0..f.rows())
        .flat_map(|i| (0..f.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| f.entry(i, j)[0] != 0)
}

fn except(n: usize, skip: usize) -> Vec<usize> {
    (0..n).filter(|&i| i != skip).collect()
}

impl ChainComplex {
    /// Minimal complex homotopy equivalent to `self`, obtained by repeatedly
    /// splitting off `0 -> R --u--> R -> 0` for a unit entry `u`.
    ///
    /// If `∂_j` has a unit `u` at `(a, b)`, the new complex drops row `a` of
    /// `P_{j-1}` and column `b` of `P_j`, with
    /// `∂_j' = ∂[¬a, ¬b] - ∂[¬a, b] u^{-1} ∂[a, ¬b]`.
    pub fn minimalize(&self) -> Result<ChainComplex> {
        let ring = self.ring().clone();
        let mut ranks = self.ranks().to_vec();
        let mut diffs = self.diffs().to_vec();
        loop {
            let found = diffs
                .iter()
                .enumerate()
                .find_map(|(k, f)| unit_entry(f).map(|pos| (k + 1, pos)));
            let Some((j, (a, b))) = found else { break };
            let f = &diffs[j - 1];
            let u_inv = f.get(a, b).inverse().expect("unit entry");
            let keep_rows = except(f.rows(), a);
            let keep_cols = except(f.cols(), b);
            let col = f.submatrix(&keep_rows, &[b]);
            let row = FreeMap::from_entries(&ring, 1, 1, &[u_inv])?.compose(&f.submatrix(&[a], &keep_cols))?;
            let new_f = f.submatrix(&keep_rows, &keep_cols).sub(&col.compose(&row)?)?;
            diffs[j - 1] = new_f;
            if j < diffs.len() {
                let g = &diffs[j];
                diffs[j] = g.submatrix(&keep_cols, &(0..g.cols()).collect::<Vec<_>>());
            }
            if j >= 2 {
                let h = &diffs[j - 2];
                diffs[j - 2] = h.columns(&keep_rows);
            }
            ranks[j - 1] -= 1;
            ranks[j] -= 1;
        }
        ChainComplex::new(&ring, ranks, diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialQuotientRing;
    use crate::complex::random_complex;

    #[test]
    fn contractible_pieces_vanish() {
        let r = MonomialQuotientRing::truncated(3, 3).unwrap();
        let iso = ChainComplex::two_term(FreeMap::identity(&r, 2));
        let m = iso.minimalize().unwrap();
        assert_eq!(m.ranks(), &[0, 0]);
    }

    #[test]
    fn minimalize_preserves_homology() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        for seed in 0..10 {
            let c = random_complex(&r, &[2, 3, 2], seed, false).unwrap();
            let m = c.minimalize().unwrap();
            assert!(m.is_minimal());
            assert_eq!(m.homology().h, c.homology().h);
            assert_eq!(m.homology().betti, c.homology().betti);
            assert_eq!(m.ranks(), &m.homology().betti[..]);
        }
    }
}
