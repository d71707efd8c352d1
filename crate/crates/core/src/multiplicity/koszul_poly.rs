use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

use super::MonomialIdeal;

const MAX_ELEMENTS: usize = 6;

/// Homology lengths `h_i` of the Koszul complex on the monomials `elems` over
/// `F_p[x_1..x_n]`.
///
/// The complex is multigraded. In degree `α` its basis is the set of subsets
/// `T` with `Σ_{t∈T} a_t <= α`, which is closed under taking subsets, and the
/// differential has the Koszul signs with unit coefficients. When the
/// elements generate an ideal of finite colength the homology is supported in
/// the box `0 <= α <= Σ_t a_t`, which is enumerated here; degrees with the
/// same subset family are computed once.
pub fn polynomial_koszul_homology(p: u32, elems: &[Vec<u32>]) -> Result<Vec<u64>> {
    let c = elems.len();
    if c > MAX_ELEMENTS {
        return Err(Error::OutOfFragment(format!(
            "Koszul complexes on more than {MAX_ELEMENTS} elements"
        )));
    }
    let n = elems.first().map_or(0, Vec::len);
    let ideal = MonomialIdeal::new(n, elems.to_vec())?;
    if !ideal.is_artinian() {
        return Err(Error::OutOfFragment(
            "the elements do not generate an ideal of finite colength, so the homology has infinite length".into(),
        ));
    }
    let subset_deg: Vec<Vec<u32>> = (0..1usize << c)
        .map(|mask| {
            (0..n)
                .map(|v| (0..c).filter(|t| mask >> t & 1 == 1).map(|t| elems[t][v]).sum())
                .collect()
        })
        .collect();
    let top = &subset_deg[(1 << c) - 1];
    let mut memo: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut h = vec![0u64; c + 1];
    let mut alpha = vec![0u32; n];
    loop {
        let family: u64 = (0..1usize << c)
            .filter(|&m| subset_deg[m].iter().zip(&alpha).all(|(d, a)| d <= a))
            .fold(0, |acc, m| acc | 1 << m);
        let local = memo.entry(family).or_insert_with(|| family_homology(p, c, family));
        for (x, y) in h.iter_mut().zip(local.iter()) {
            *x += y;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(h);
            }
            alpha[i] += 1;
            if alpha[i] <= top[i] {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
    }
}

fn family_homology(p: u32, c: usize, family: u64) -> Vec<u64> {
    let by_size: Vec<Vec<usize>> = (0..=c)
        .map(|j| {
            (0..1usize << c)
                .filter(|&m| family >> m & 1 == 1 && m.count_ones() as usize == j)
                .collect()
        })
        .collect();
    let mut ranks = vec![0usize; c + 2];
    for j in 1..=c {
        let (src, dst) = (&by_size[j], &by_size[j - 1]);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let mut m = FpMatrix::zeros(p, dst.len(), src.len());
        for (col, &t) in src.iter().enumerate() {
            let mut pos = 0;
            for b in 0..c {
                if t >> b & 1 == 0 {
                    continue;
                }
                let face = t & !(1 << b);
                let row = dst.binary_search(&face).expect("families are closed under subsets");
                m.set(row, col, if pos % 2 == 0 { 1 } else { p - 1 });
                pos += 1;
            }
        }
        ranks[j] = m.rank();
    }
    (0..=c)
        .map(|j| (by_size[j].len() - ranks[j] - ranks[j + 1]) as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_sequences_are_acyclic() {
        assert_eq!(
            polynomial_koszul_homology(2, &[vec![1, 0], vec![0, 1]]).unwrap(),
            vec![1, 0, 0]
        );
        assert_eq!(
            polynomial_koszul_homology(2, &[vec![2, 0], vec![0, 3]]).unwrap(),
            vec![6, 0, 0]
        );
        assert_eq!(polynomial_koszul_homology(3, &[vec![3]]).unwrap(), vec![3, 0]);
    }

    #[test]
    fn non_regular_sequence_has_higher_homology() {
        // (x², xy, y²): H_0 has length 3 and χ = 0
        let h = polynomial_koszul_homology(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(h[0], 3);
        let chi: i64 = h
            .iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum();
        assert_eq!(chi, 0);
        assert!(h[1] > 0);
    }

    #[test]
    fn rejects_infinite_length() {
        assert!(matches!(
            polynomial_koszul_homology(2, &[vec![1, 1]]),
            Err(Error::OutOfFragment(_))
        ));
    }
}
