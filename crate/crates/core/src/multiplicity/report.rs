use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::koszul_poly::polynomial_koszul_homology;
use super::MonomialIdeal;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};

/// Exact rational, serialized as `"a/b"` or `"a"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(pub Ratio<i128>);

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DuttaRoute {
    /// `ℓ(R/I^{[q]})` for a monomial ideal.
    HilbertKunz,
    /// Homology of `F^e(P)` over an Artinian ring.
    Artinian,
    /// Koszul complex on monomials over a polynomial ring.
    Koszul,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuttaRow {
    pub e: u32,
    pub q: u64,
    /// `p^{de}`
    pub divisor: u128,
    /// `ℓ(R/J^{[q]})` when the route has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<u64>,
    /// `h_i(F^e P)`; empty for the Hilbert-Kunz route.
    pub h: Vec<u64>,
    pub chi: i64,
    pub normalized: Rational,
    pub normalized_h: Vec<Rational>,
}

/// Table of normalized lengths for `e = 0..=e_max`. The limit is marked exact
/// only when the last two normalized values agree; otherwise `limit` is the
/// last value and `first_differences` shows the trend.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuttaReport {
    pub route: DuttaRoute,
    pub p: u32,
    pub d: usize,
    pub rows: Vec<DuttaRow>,
    pub limit: Rational,
    pub exact: bool,
    pub first_differences: Vec<Rational>,
}

impl DuttaReport {
    fn finish(route: DuttaRoute, p: u32, d: usize, rows: Vec<DuttaRow>) -> Self {
        let values: Vec<Rational> = rows.iter().map(|r| r.normalized).collect();
        let first_differences: Vec<Rational> = values.windows(2).map(|w| Rational(w[1].0 - w[0].0)).collect();
        let exact = values.len() >= 2 && values[values.len() - 1] == values[values.len() - 2];
        DuttaReport {
            route,
            p,
            d,
            limit: values.last().copied().unwrap_or(Rational::integer(0)),
            exact,
            first_differences,
            rows,
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    crate::linalg::field::check_prime(p)
}

fn powers(p: u32, d: usize, e: u32) -> Result<(u64, u128)> {
    let q = (p as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::InvalidRange(format!("{p}^{e} overflows")))?;
    let divisor = (q as u128)
        .checked_pow(d as u32)
        .filter(|&v| v <= i128::MAX as u128)
        .ok_or_else(|| Error::InvalidRange(format!("{q}^{d} overflows")))?;
    Ok((q, divisor))
}

fn alternating(h: &[u64]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// `ℓ(R/I^{[p^e]}) / p^{de}` for `e = 0..=e_max`, over `F_p[x_1..x_d]`.
pub fn hilbert_kunz(ideal: &MonomialIdeal, p: u32, e_max: u32) -> Result<DuttaReport> {
    check_prime(p)?;
    let d = ideal.n_vars();
    let rows = (0..=e_max)
        .map(|e| {
            let (q, divisor) = powers(p, d, e)?;
            let length = ideal.bracket_power(p, e)?.colength()?;
            Ok(DuttaRow {
                e,
                q,
                divisor,
                length: Some(length),
                h: Vec::new(),
                chi: length as i64,
                normalized: Rational::new(length as i128, divisor as i128),
                normalized_h: Vec::new(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DuttaReport::finish(DuttaRoute::HilbertKunz, p, d, rows))
}

/// `h_i(F^e P)` for a complex over an Artinian ring, where the normalizing
/// divisor is `p^0 = 1`.
pub fn dutta_sequence(p: &ChainComplex, e_max: u32) -> Result<DuttaReport> {
    let char_p = p.ring().p();
    let rows = (0..=e_max)
        .map(|e| {
            let (q, _) = powers(char_p, 0, e)?;
            let rep = p.frobenius_iter(e).homology();
            let h: Vec<u64> = rep.h.iter().map(|&x| x as u64).collect();
            Ok(DuttaRow {
                e,
                q,
                divisor: 1,
                length: None,
                normalized_h: h.iter().map(|&x| Rational::integer(x as i128)).collect(),
                normalized: Rational::integer(rep.chi as i128),
                chi: rep.chi,
                h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DuttaReport::finish(DuttaRoute::Artinian, char_p, 0, rows))
}

/// Koszul complex `K` on monomials `a_1..a_c` over `F_p[x_1..x_d]`:
/// `F^e K` is the Koszul complex on `a_i^{p^e}`, its homology is computed
/// degree by degree, and `ℓ(R/(a^{[p^e]}))` is recorded next to it.
pub fn dutta_koszul(p: u32, elems: &[Vec<u32>], e_max: u32) -> Result<DuttaReport> {
    check_prime(p)?;
    let d = elems.first().map_or(0, Vec::len);
    let ideal = MonomialIdeal::new(d, elems.to_vec())?;
    let rows = (0..=e_max)
        .map(|e| {
            let (q, divisor) = powers(p, d, e)?;
            let q32 = u32::try_from(q).map_err(|_| Error::InvalidRange(format!("{p}^{e} overflows")))?;
            let powered: Vec<Vec<u32>> = elems.iter().map(|a| a.iter().map(|&x| x * q32).collect()).collect();
            let h = polynomial_koszul_homology(p, &powered)?;
            let chi = alternating(&h);
            let length = ideal.bracket_power(p, e)?.colength()?;
            Ok(DuttaRow {
                e,
                q,
                divisor,
                length: Some(length),
                normalized_h: h.iter().map(|&x| Rational::new(x as i128, divisor as i128)).collect(),
                normalized: Rational::new(chi as i128, divisor as i128),
                chi,
                h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DuttaReport::finish(DuttaRoute::Koszul, p, d, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialQuotientRing;
    use crate::complex::{koszul, random_complex};

    #[test]
    fn pure_powers_are_exact() {
        let i = MonomialIdeal::parse("2 0; 0 3").unwrap();
        let r = hilbert_kunz(&i, 2, 6).unwrap();
        assert!(r.exact);
        assert!(r.rows.iter().all(|row| row.normalized == Rational::integer(6)));
        assert_eq!(r.rows[3].length, Some(6 * 64));
        let m = MonomialIdeal::parse("1 0 0; 0 1 0; 0 0 1").unwrap();
        assert_eq!(hilbert_kunz(&m, 3, 3).unwrap().limit, Rational::integer(1));
    }

    #[test]
    fn mixed_ideal_reports_differences() {
        let i = MonomialIdeal::parse("2 0; 1 1; 0 2").unwrap();
        let r = hilbert_kunz(&i, 2, 4).unwrap();
        assert_eq!(r.first_differences.len(), 4);
        for row in &r.rows {
            // (x², xy, y²)^{[q]} has colength 3q²
            assert_eq!(row.length, Some(3 * row.q * row.q));
        }
        assert!(r.exact);
        assert_eq!(serde_json::to_value(r.limit).unwrap(), "3");
        assert!(hilbert_kunz(&i, 4, 1).is_err());
    }

    #[test]
    fn koszul_route() {
        let r = dutta_koszul(2, &[vec![2, 0], vec![0, 3]], 3).unwrap();
        assert!(r.exact);
        assert_eq!(r.limit, Rational::integer(6));
        for row in &r.rows {
            assert!(row.h[1..].iter().all(|&x| x == 0));
            assert_eq!(row.length, Some(row.h[0]));
        }
        let m = dutta_koszul(2, &[vec![1, 0], vec![0, 1]], 4).unwrap();
        assert!(m.rows.iter().all(|row| row.normalized == Rational::integer(1)));
    }

    #[test]
    fn artinian_route() {
        let c = MonomialQuotientRing::carlsson(2).unwrap();
        let k = koszul(&c, &[c.var(0), c.var(1)]).unwrap();
        let r = dutta_sequence(&k, 2).unwrap();
        assert_eq!(r.rows[0].h, vec![1, 2, 1]);
        // F kills minimal differentials over the Carlsson ring
        assert_eq!(r.rows[1].h, vec![4, 8, 4]);
        assert!(r.rows.iter().all(|row| row.chi == k.euler_from_ranks()));
        let t = MonomialQuotientRing::truncated(3, 3).unwrap();
        let p = random_complex(&t, &[1, 2, 1], 3, true).unwrap();
        let r = dutta_sequence(&p, 2).unwrap();
        assert!(r.exact);
    }
}
