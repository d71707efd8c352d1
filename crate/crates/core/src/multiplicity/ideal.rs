use log::info;

use crate::algebra::MonomialQuotientRing;
use crate::error::{Error, Result};

/// Boxes with more lattice points than this are counted by
/// inclusion-exclusion instead of enumeration.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

const MAX_INCLUSION_EXCLUSION_GENS: usize = 24;

/// A monomial ideal of `F_p[x_1..x_n]`, kept with a minimal, sorted
/// generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n_vars: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn is_pure(g: &[u32]) -> Option<usize> {
    let mut nz = g.iter().enumerate().filter(|(_, &e)| e > 0);
    match (nz.next(), nz.next()) {
        (Some((i, _)), None) => Some(i),
        _ => None,
    }
}

impl MonomialIdeal {
    pub fn new(n_vars: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != n_vars) {
            return Err(Error::DimensionMismatch(format!(
                "generator has {} exponents, expected {n_vars}",
                g.len()
            )));
        }
        let mut pruned: Vec<Vec<u32>> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let redundant = gens
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && divides(h, g) && (h != g || j < i));
            if !redundant {
                pruned.push(g.clone());
            }
        }
        pruned.sort();
        Ok(MonomialIdeal { n_vars, gens: pruned })
    }

    /// Parses `"2 0; 0 3"`: generators separated by `;`, exponents by
    /// whitespace.
    pub fn parse(s: &str) -> Result<Self> {
        let gens: Vec<Vec<u32>> = s
            .split(';')
            .filter(|g| !g.trim().is_empty())
            .map(|g| {
                g.split_whitespace()
                    .map(|t| {
                        t.parse::<u32>().map_err(|_| Error::Parse {
                            line: 1,
                            msg: format!("bad exponent `{t}`"),
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        let n = gens.first().map(Vec::len).ok_or_else(|| Error::Parse {
            line: 1,
            msg: "no generators".into(),
        })?;
        Self::new(n, gens)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    /// Smallest pure-power exponent of each variable, if all exist.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut b: Vec<Option<u32>> = vec![None; self.n_vars];
        for g in &self.gens {
            if g.iter().all(|&a| a == 0) {
                return Some(vec![0; self.n_vars]);
            }
            if let Some(i) = is_pure(g) {
                b[i] = Some(b[i].map_or(g[i], |x| x.min(g[i])));
            }
        }
        b.into_iter().collect()
    }

    pub fn is_artinian(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    pub fn contains(&self, monomial: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, monomial))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// `I^{[p^e]}`: every generator exponent multiplied by `p^e`.
    pub fn bracket_power(&self, p: u32, e: u32) -> Result<MonomialIdeal> {
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidRange(format!("{p}^{e} overflows")))? as u32;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&x| {
                        x.checked_mul(q)
                            .ok_or_else(|| Error::InvalidRange(format!("exponent {x}·{q} overflows")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        MonomialIdeal::new(self.n_vars, gens)
    }

    fn nonartinian_var(&self) -> Error {
        let bounds: Vec<bool> = (0..self.n_vars)
            .map(|v| self.gens.iter().any(|g| is_pure(g) == Some(v)))
            .collect();
        let var = bounds.iter().position(|&b| !b).unwrap_or(0) + 1;
        Error::NonArtinian { var }
    }

    /// Number of standard monomials.
    pub fn colength(&self) -> Result<u64> {
        let b = self.pure_power_bounds().ok_or_else(|| self.nonartinian_var())?;
        let points: u128 = b.iter().map(|&x| x as u128).product();
        if points > ENUMERATION_LIMIT {
            info!("colength: box has {points} points, above {ENUMERATION_LIMIT}; using inclusion-exclusion");
            return self.colength_inclusion_exclusion(&b);
        }
        Ok(self.colength_enumerate(&b))
    }

    /// Walks the box of the first `n - 1` coordinates; along the last axis the
    /// standard monomials form an initial segment.
    fn colength_enumerate(&self, b: &[u32]) -> u64 {
        let n = self.n_vars;
        if n == 0 {
            return if self.gens.is_empty() { 1 } else { 0 };
        }
        let last = n - 1;
        let mut point = vec![0u32; last];
        let mut total = 0u64;
        loop {
            let mut fiber = b[last];
            for g in &self.gens {
                if divides(&g[..last], &point) {
                    fiber = fiber.min(g[last]);
                }
            }
            total += fiber as u64;
            // odometer
            let mut i = 0;
            loop {
                if i == last {
                    return total;
                }
                point[i] += 1;
                if point[i] < b[i] {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }

    /// `Σ_S (-1)^{|S|} #{box points divisible by lcm(S)}` over subsets of the
    /// generators that are not pure powers.
    fn colength_inclusion_exclusion(&self, b: &[u32]) -> Result<u64> {
        let mixed: Vec<&Vec<u32>> = self.gens.iter().filter(|g| is_pure(g).is_none()).collect();
        if mixed.len() > MAX_INCLUSION_EXCLUSION_GENS {
            return Err(Error::OutOfFragment(format!(
                "{} mixed generators on a box too large to enumerate",
                mixed.len()
            )));
        }
        let mut total: i128 = 0;
        for mask in 0u64..(1 << mixed.len()) {
            let mut lcm = vec![0u32; self.n_vars];
            for (i, g) in mixed.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (l, &x) in lcm.iter_mut().zip(g.iter()) {
                        *l = (*l).max(x);
                    }
                }
            }
            let count: i128 = b
                .iter()
                .zip(&lcm)
                .map(|(&bi, &li)| bi.saturating_sub(li) as i128)
                .product();
            if mask.count_ones() % 2 == 0 {
                total += count;
            } else {
                total -= count;
            }
        }
        Ok(total as u64)
    }

    /// The quotient `F_p[x]/I` as a ring, when small enough.
    pub fn quotient_ring(&self, p: u32) -> Result<std::sync::Arc<MonomialQuotientRing>> {
        MonomialQuotientRing::new(p, self.n_vars, self.gens.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(g: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(g[0].len(), g.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn colengths() {
        assert_eq!(ideal(&[&[1, 0], &[0, 1]]).colength().unwrap(), 1);
        assert_eq!(ideal(&[&[2, 0], &[0, 3]]).colength().unwrap(), 6);
        assert_eq!(ideal(&[&[2, 0], &[1, 1], &[0, 2]]).colength().unwrap(), 3);
        assert_eq!(ideal(&[&[0, 0], &[3, 0]]).colength().unwrap(), 0);
        assert!(matches!(
            ideal(&[&[2, 0], &[1, 1]]).colength(),
            Err(Error::NonArtinian { var: 2 })
        ));
    }

    #[test]
    fn pruning_and_parsing() {
        let i = MonomialIdeal::parse("2 0; 0 3; 2 1; 2 0").unwrap();
        assert_eq!(i.gens(), &[vec![0, 3], vec![2, 0]]);
        assert!(MonomialIdeal::parse("2 0; 1").is_err());
        assert!(MonomialIdeal::parse("").is_err());
    }

    #[test]
    fn bracket_powers() {
        let i = ideal(&[&[2, 0], &[0, 3]]);
        assert_eq!(i.bracket_power(2, 0).unwrap(), i);
        assert_eq!(i.bracket_power(2, 1).unwrap(), ideal(&[&[4, 0], &[0, 6]]));
        let m = ideal(&[&[1, 0], &[0, 1]]);
        for e in 0..6 {
            assert_eq!(m.bracket_power(2, e).unwrap().colength().unwrap(), 4u64.pow(e));
        }
    }

    #[test]
    fn both_counting_methods_agree() {
        let i = ideal(&[&[5, 0, 0], &[0, 7, 0], &[0, 0, 4], &[2, 3, 0], &[1, 1, 1], &[0, 2, 2]]);
        let b = i.pure_power_bounds().unwrap();
        assert_eq!(i.colength_enumerate(&b), i.colength_inclusion_exclusion(&b).unwrap());
        assert_eq!(i.colength().unwrap() as usize, i.quotient_ring(2).unwrap().dim());
        let big = ideal(&[&[1000, 0, 0], &[0, 1000, 0], &[0, 0, 1000], &[500, 500, 0]]);
        assert_eq!(big.colength().unwrap(), 1_000_000_000 - 500 * 500 * 1000);
    }
}
