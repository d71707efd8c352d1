//! Text formats for rings, ring elements and free maps.
//!
//! Ring description: a line `p n_vars`, then one generator exponent vector per
//! line. The generator list ends at the first blank line or at end of input.
//!
//! Free map: a line `rows cols`, then `rows` lines of `cols` whitespace
//! separated polynomial entries such as `1+x1*x2^2` or `2*x1`.

use std::sync::Arc;

use super::element::RingElement;
use super::freemap::FreeMap;
use super::ring::MonomialQuotientRing;
use crate::error::{Error, Result};
use crate::linalg::field;

/// Line cursor that keeps 1-based line numbers for diagnostics.
pub(crate) struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(s: &'a str) -> Self {
        Lines {
            lines: s.lines().collect(),
            pos: 0,
        }
    }

    fn at_blank_or_end(&self) -> bool {
        self.lines.get(self.pos).is_none_or(|l| l.trim().is_empty())
    }

    /// Next line that is not blank.
    pub(crate) fn next_nonblank(&mut self) -> Option<&'a str> {
        while let Some(l) = self.lines.get(self.pos) {
            self.pos += 1;
            if !l.trim().is_empty() {
                return Some(l);
            }
        }
        None
    }

    pub(crate) fn expect(&mut self, what: &str) -> Result<&'a str> {
        self.next_nonblank().ok_or_else(|| Error::Parse {
            line: self.pos + 1,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }

    pub(crate) fn rest_is_blank(&self) -> bool {
        self.lines[self.pos.min(self.lines.len())..]
            .iter()
            .all(|l| l.trim().is_empty())
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.pos,
            msg: msg.into(),
        }
    }
}

pub(crate) fn parse_uints<T: std::str::FromStr>(lines: &Lines, s: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| lines.err(format!("expected a non-negative integer, found `{t}`")))
        })
        .collect()
}

pub(crate) fn ring_to_text(r: &MonomialQuotientRing) -> String {
    let mut s = format!("{} {}\n", r.p(), r.n_vars());
    for g in r.gens() {
        let g: Vec<String> = g.iter().map(|e| e.to_string()).collect();
        s.push_str(&g.join(" "));
        s.push('\n');
    }
    s
}

pub(crate) fn ring_from_text(s: &str) -> Result<Arc<MonomialQuotientRing>> {
    let mut lines = Lines::new(s);
    let ring = read_ring(&mut lines)?;
    if !lines.rest_is_blank() {
        return Err(lines.err("trailing content after the generator list"));
    }
    Ok(ring)
}

pub(crate) fn read_ring(lines: &mut Lines) -> Result<Arc<MonomialQuotientRing>> {
    let header = lines.expect("`p n_vars`")?;
    let h: Vec<u64> = parse_uints(lines, header)?;
    if h.len() != 2 {
        return Err(lines.err("ring header must be `p n_vars`"));
    }
    let (p, n_vars) = (h[0] as u32, h[1] as usize);
    let mut gens = Vec::new();
    while !lines.at_blank_or_end() {
        let l = lines.next_nonblank().expect("checked non-blank");
        let g: Vec<u32> = parse_uints(lines, l)?;
        if g.len() != n_vars {
            return Err(lines.err(format!("generator has {} exponents, expected {n_vars}", g.len())));
        }
        gens.push(g);
    }
    MonomialQuotientRing::new(p, n_vars, gens)
}

pub(crate) fn format_polynomial(r: &MonomialQuotientRing, coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (mono, &c) in r.basis().iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let factors: Vec<String> = mono
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        let term = match (c, factors.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => factors.join("*"),
            (_, false) => format!("{c}*{}", factors.join("*")),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub(crate) fn parse_polynomial(r: &Arc<MonomialQuotientRing>, s: &str) -> Result<RingElement> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let p = r.p();
    let mut coeffs = vec![0u32; r.dim()];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push((negative, &s[start..i]));
            start = i + 1;
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == start {
            if i > 0 {
                return Err(bad(format!("empty term in `{s}`")));
            }
            negative = ch == '-';
            start = i + 1;
        }
    }
    if start >= s.len() {
        return Err(bad(format!("dangling sign in `{s}`")));
    }
    terms.push((negative, &s[start..]));

    for (neg, term) in terms {
        let mut c: u32 = 1 % p;
        let mut exp = vec![0u32; r.n_vars()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(bad(format!("empty factor in `{term}`")));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let (var, e) = match rest.split_once('^') {
                    Some((v, e)) => (v, e),
                    None => (rest, "1"),
                };
                let var: usize = var.parse().map_err(|_| bad(format!("bad variable in `{factor}`")))?;
                let e: u32 = e.parse().map_err(|_| bad(format!("bad exponent in `{factor}`")))?;
                if var == 0 || var > r.n_vars() {
                    return Err(bad(format!(
                        "variable x{var} out of range for {} variables",
                        r.n_vars()
                    )));
                }
                exp[var - 1] += e;
            } else {
                let v: u64 = factor.parse().map_err(|_| bad(format!("bad coefficient `{factor}`")))?;
                c = field::mul(c, (v % p as u64) as u32, p);
            }
        }
        if neg {
            c = field::neg(c, p);
        }
        if let Some(i) = r.monomial_index(&exp) {
            coeffs[i] = field::add(coeffs[i], c, p);
        }
    }
    r.element(coeffs)
}

pub(crate) fn freemap_to_text(f: &FreeMap) -> String {
    let mut s = format!("{} {}\n", f.rows(), f.cols());
    if f.cols() > 0 {
        for i in 0..f.rows() {
            let row: Vec<String> = (0..f.cols()).map(|j| f.ring().format_coeffs(f.entry(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}

pub(crate) fn read_freemap(r: &Arc<MonomialQuotientRing>, lines: &mut Lines) -> Result<FreeMap> {
    let header = lines.expect("`rows cols`")?;
    let h: Vec<usize> = parse_uints(lines, header)?;
    if h.len() != 2 {
        return Err(lines.err("map header must be `rows cols`"));
    }
    let (rows, cols) = (h[0], h[1]);
    let mut m = FreeMap::zeros(r, rows, cols);
    if cols == 0 {
        return Ok(m);
    }
    for i in 0..rows {
        let l = lines.expect("a row of entries")?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != cols {
            return Err(lines.err(format!("row has {} entries, expected {cols}", toks.len())));
        }
        for (j, t) in toks.iter().enumerate() {
            let e = parse_polynomial(r, t).map_err(|e| match e {
                Error::Parse { msg, .. } => lines.err(msg),
                other => other,
            })?;
            m.entry_mut(i, j).copy_from_slice(e.coeffs());
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_text() {
        let r = MonomialQuotientRing::new(3, 2, vec![vec![3, 0], vec![0, 2]]).unwrap();
        let e = r.parse_element("1+x1*x2").unwrap();
        assert_eq!(e.to_string(), "1+x1*x2");
        let e = r.parse_element("x2 + 2*x1^2 - x1*x1").unwrap();
        assert_eq!(e.to_string(), "x2+x1^2");
        assert_eq!(r.parse_element("x1^3").unwrap().to_string(), "0");
        assert_eq!(r.parse_element("-1").unwrap().to_string(), "2");
        assert!(r.parse_element("x3").is_err());
        assert!(r.parse_element("1++x1").is_err());
        assert!(r.parse_element("").is_err());
    }

    #[test]
    fn ring_text_round_trip() {
        let text = "2 2\n2 0\n1 1\n0 3\n";
        let r = MonomialQuotientRing::from_text(text).unwrap();
        assert_eq!(r.to_text(), text);
        assert!(MonomialQuotientRing::from_text("2 2\n2 0\n").is_err());
        assert!(MonomialQuotientRing::from_text("2 1\n2 0\n").is_err());
    }

    #[test]
    fn freemap_text_round_trip() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let text = "2 3\nx1 0 1+x1*x2\nx2 x1+x2 0\n";
        let f = FreeMap::from_text(&r, text).unwrap();
        assert_eq!(f.to_text(), text);
        assert_eq!(f.get(0, 2), r.parse_element("1+x1*x2").unwrap());
        assert!(FreeMap::from_text(&r, "2 2\nx1 0\n").is_err());
        let empty = FreeMap::zeros(&r, 3, 0);
        assert_eq!(FreeMap::from_text(&r, &empty.to_text()).unwrap(), empty);
    }
}
