use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ChainComplex;
use crate::algebra::{FreeMap, MonomialQuotientRing, RingElement};
use crate::error::{Error, Result};
use crate::linalg::{field, FpMatrix};

/// Subsets of `{0..n-1}` of size `k` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Koszul complex on `elements`: `K_j = Λ^j R^c` with basis the `j`-subsets
/// in lexicographic order and
/// `∂(e_S) = Σ_t (-1)^t a_{s_t} e_{S \ s_t}` for `S = {s_0 < s_1 < ...}`.
pub fn koszul(ring: &Arc<MonomialQuotientRing>, elements: &[RingElement]) -> Result<ChainComplex> {
    for a in elements {
        if !MonomialQuotientRing::same(ring, a.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let c = elements.len();
    let p = ring.p();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=c).map(|j| combinations(c, j)).collect();
    let ranks: Vec<usize> = subsets.iter().map(Vec::len).collect();
    let mut diffs = Vec::with_capacity(c);
    for j in 1..=c {
        let target = &subsets[j - 1];
        let mut f = FreeMap::zeros(ring, target.len(), subsets[j].len());
        for (col, s) in subsets[j].iter().enumerate() {
            for t in 0..s.len() {
                let mut face = s.clone();
                face.remove(t);
                let row = target.binary_search(&face).expect("faces are subsets");
                let a = &elements[s[t]];
                let a = if t % 2 == 0 { a.clone() } else { a.scale(p - 1) };
                f.set(row, col, &a)?;
            }
        }
        diffs.push(f);
    }
    ChainComplex::new(ring, ranks, diffs)
}

/// Totalization of `P_s ⊗ Q_t`. Degree `n` lists the blocks `s = 0, 1, ...`
/// with `s + t = n`; inside a block the basis is `e_i ⊗ f_j` in lexicographic
/// order. The differential is `∂x ⊗ y + (-1)^s x ⊗ ∂y`.
pub fn tensor(p: &ChainComplex, q: &ChainComplex) -> Result<ChainComplex> {
    if !MonomialQuotientRing::same(p.ring(), q.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = p.ring();
    let (mp, mq) = (p.top(), q.top());
    let top = mp + mq;
    // offsets[n][s] = start of block (s, n - s) inside degree n
    let mut offsets = vec![vec![usize::MAX; mp + 1]; top + 1];
    let mut ranks = vec![0usize; top + 1];
    for (n, offs) in offsets.iter_mut().enumerate() {
        for s in 0..=mp.min(n) {
            let t = n - s;
            if t > mq {
                continue;
            }
            offs[s] = ranks[n];
            ranks[n] += p.rank(s) * q.rank(t);
        }
    }
    let minus_one = ring.p() - 1;
    let mut diffs = Vec::with_capacity(top);
    for n in 1..=top {
        let mut f = FreeMap::zeros(ring, ranks[n - 1], ranks[n]);
        for s in 0..=mp.min(n) {
            let t = n - s;
            if t > mq {
                continue;
            }
            let (rs, rt) = (p.rank(s), q.rank(t));
            let src = offsets[n][s];
            // ∂P ⊗ 1 into block (s-1, t)
            if s >= 1 {
                let dp = p.diff(s).expect("1 <= s <= mp");
                let dst = offsets[n - 1][s - 1];
                for (k, i) in dp.nonzeros() {
                    for j in 0..rt {
                        f.entry_mut(dst + k * rt + j, src + i * rt + j)
                            .copy_from_slice(dp.entry(k, i));
                    }
                }
            }
            // (-1)^s 1 ⊗ ∂Q into block (s, t-1)
            if t >= 1 {
                let dq = q.diff(t).expect("1 <= t <= mq");
                let rt1 = q.rank(t - 1);
                let dst = offsets[n - 1][s];
                for (l, j) in dq.nonzeros() {
                    for i in 0..rs {
                        let e = f.entry_mut(dst + i * rt1 + l, src + i * rt + j);
                        for (slot, &c) in e.iter_mut().zip(dq.entry(l, j)) {
                            *slot = if s % 2 == 0 {
                                c
                            } else {
                                field::mul(c, minus_one, ring.p())
                            };
                        }
                    }
                }
            }
        }
        diffs.push(f);
    }
    ChainComplex::new(ring, ranks, diffs)
}

fn random_element(ring: &Arc<MonomialQuotientRing>, rng: &mut impl Rng, in_max_ideal: bool) -> RingElement {
    let p = ring.p();
    let mut coeffs: Vec<u32> = (0..ring.dim()).map(|_| rng.gen_range(0..p)).collect();
    if in_max_ideal {
        coeffs[0] = 0;
    }
    ring.element(coeffs).expect("length matches")
}

/// Seeded random complex with the given ranks.
pub fn random_complex(
    ring: &Arc<MonomialQuotientRing>,
    ranks: &[usize],
    seed: u64,
    minimal: bool,
) -> Result<ChainComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_complex_with(ring, ranks, &mut rng, minimal)
}

const MAX_ATTEMPTS: usize = 8;

/// Random complex built right to left: `∂_1` has independent random entries,
/// and every column of `∂_{j+1}` is a random vector of the k-subspace
/// `ker ∂_j` (intersected with `m·R^{r_j}` when `minimal` is set), read back
/// as a column of ring elements. `∂² = 0` therefore holds by construction.
pub fn random_complex_with(
    ring: &Arc<MonomialQuotientRing>,
    ranks: &[usize],
    rng: &mut impl Rng,
    minimal: bool,
) -> Result<ChainComplex> {
    if ranks.is_empty() {
        return Err(Error::Precondition("rank profile is empty".into()));
    }
    let d = ring.dim();
    let p = ring.p();
    for _ in 0..MAX_ATTEMPTS {
        let mut diffs: Vec<FreeMap> = Vec::with_capacity(ranks.len() - 1);
        for j in 1..ranks.len() {
            let (rows, cols) = (ranks[j - 1], ranks[j]);
            let f = if j == 1 {
                FreeMap::from_fn(ring, rows, cols, |_, _| random_element(ring, rng, minimal))
            } else {
                let prev = &diffs[j - 2];
                let mut constraint = prev.underlying_k_matrix();
                if minimal {
                    let mut sel = FpMatrix::zeros(p, rows, rows * d);
                    for i in 0..rows {
                        sel.set(i, i * d, 1);
                    }
                    constraint = constraint.vstack(&sel)?;
                }
                let kernel = constraint.kernel();
                let mut f = FreeMap::zeros(ring, rows, cols);
                for col in 0..cols {
                    let mut v = vec![0u32; rows * d];
                    for b in kernel.basis() {
                        let c = rng.gen_range(0..p);
                        if c == 0 {
                            continue;
                        }
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = field::add(*x, field::mul(c, y, p), p);
                        }
                    }
                    for i in 0..rows {
                        f.entry_mut(i, col).copy_from_slice(&v[i * d..(i + 1) * d]);
                    }
                }
                f
            };
            diffs.push(f);
        }
        match ChainComplex::new(ring, ranks.to_vec(), diffs) {
            Ok(c) => return Ok(c),
            Err(Error::NotAComplex { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Exhausted {
        attempts: MAX_ATTEMPTS,
        msg: "could not assemble a complex".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn koszul_ranks_and_homology() {
        let r = MonomialQuotientRing::truncated(2, 2).unwrap();
        let k = koszul(&r, &[r.var(0)]).unwrap();
        assert_eq!(
            k,
            ChainComplex::two_term(FreeMap::from_entries(&r, 1, 1, &[r.var(0)]).unwrap())
        );

        let c = MonomialQuotientRing::carlsson(2).unwrap();
        let k = koszul(&c, &[c.var(0), c.var(1)]).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert!(k.is_minimal());
        let rep = k.homology();
        assert_eq!(rep.h[0], 1);
        assert_eq!(rep.chi, 0);
        assert_eq!(rep.total_h, 4);

        let c3 = MonomialQuotientRing::carlsson(3).unwrap();
        let k3 = koszul(&c3, &[c3.var(0), c3.var(1), c3.var(2)]).unwrap();
        assert_eq!(k3.total_rank(), 8);
        assert_eq!(k3.homology().betti, vec![1, 3, 3, 1]);
    }

    #[test]
    fn tensor_with_unit_complex() {
        let r = MonomialQuotientRing::truncated(3, 3).unwrap();
        let p = koszul(&r, &[r.var(0)]).unwrap();
        let unit = ChainComplex::free_module(&r, 1);
        assert_eq!(tensor(&p, &unit).unwrap(), p);
        let pp = tensor(&p, &p).unwrap();
        assert_eq!(pp.ranks(), &[1, 2, 1]);
    }

    #[test]
    fn random_complexes_are_deterministic_complexes() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let a = random_complex(&r, &[2, 3, 2], 7, true).unwrap();
        let b = random_complex(&r, &[2, 3, 2], 7, true).unwrap();
        assert_eq!(a, b);
        assert!(a.is_minimal());
        let c = random_complex(&r, &[2, 3, 2], 8, false).unwrap();
        assert_eq!(c.ranks(), &[2, 3, 2]);
        assert!(random_complex(&r, &[], 0, true).is_err());
    }
}
