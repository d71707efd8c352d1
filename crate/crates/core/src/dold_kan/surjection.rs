use crate::complex::combinations;

/// A nondecreasing surjection `[n] ↠ [k]`, stored as its jump positions: the
/// `t ∈ {1..n}` with `σ(t) = σ(t-1) + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    n: usize,
    jumps: Vec<usize>,
}

impl Surjection {
    pub fn identity(n: usize) -> Self {
        Surjection {
            n,
            jumps: (1..=n).collect(),
        }
    }

    /// `jumps` must be a strictly increasing subset of `{1..n}`.
    pub fn from_jumps(n: usize, jumps: Vec<usize>) -> Option<Self> {
        let ok = jumps.windows(2).all(|w| w[0] < w[1]) && jumps.iter().all(|&t| (1..=n).contains(&t));
        ok.then_some(Surjection { n, jumps })
    }

    /// From the value list `σ(0), ..., σ(n)`; `None` unless it is
    /// nondecreasing, starts at 0 and has steps of 0 or 1.
    pub fn from_values(values: &[usize]) -> Option<Self> {
        if values.first() != Some(&0) {
            return None;
        }
        let mut jumps = Vec::new();
        for t in 1..values.len() {
            match values[t].checked_sub(values[t - 1]) {
                Some(0) => {}
                Some(1) => jumps.push(t),
                _ => return None,
            }
        }
        Some(Surjection {
            n: values.len() - 1,
            jumps,
        })
    }

    /// All surjections out of `[n]`, ordered by target `k` and then
    /// lexicographically by jump set.
    pub fn all(n: usize) -> Vec<Surjection> {
        (0..=n)
            .flat_map(|k| {
                combinations(n, k).into_iter().map(move |c| Surjection {
                    n,
                    jumps: c.into_iter().map(|t| t + 1).collect(),
                })
            })
            .collect()
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.jumps.len()
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    pub fn apply(&self, t: usize) -> usize {
        self.jumps.partition_point(|&j| j <= t)
    }

    pub fn values(&self) -> Vec<usize> {
        (0..=self.n).map(|t| self.apply(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_binomials() {
        for n in 0..6 {
            let all = Surjection::all(n);
            assert_eq!(all.len(), 1 << n);
            for k in 0..=n {
                let c = all.iter().filter(|s| s.target() == k).count();
                let binom = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(c, binom);
            }
        }
    }

    #[test]
    fn values_round_trip() {
        for s in Surjection::all(4) {
            let v = s.values();
            assert_eq!(*v.last().unwrap(), s.target());
            assert_eq!(Surjection::from_values(&v).unwrap(), s);
        }
        assert_eq!(Surjection::identity(3).values(), vec![0, 1, 2, 3]);
        assert!(Surjection::from_values(&[0, 2]).is_none());
        assert!(Surjection::from_jumps(2, vec![2, 1]).is_none());
    }
}
