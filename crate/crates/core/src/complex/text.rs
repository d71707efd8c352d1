//! Complex file format: the ring description, a blank line, the top degree
//! `m`, a line of `m + 1` ranks, then `∂_1, ..., ∂_m` as free maps separated
//! by blank lines.

use super::ChainComplex;
use crate::algebra::text::{freemap_to_text, parse_uints, read_freemap, read_ring, ring_to_text, Lines};
use crate::error::Result;

pub(crate) fn complex_to_text(c: &ChainComplex) -> String {
    let mut s = ring_to_text(c.ring());
    s.push('\n');
    s.push_str(&format!("{}\n", c.top()));
    let ranks: Vec<String> = c.ranks().iter().map(|r| r.to_string()).collect();
    s.push_str(&ranks.join(" "));
    s.push('\n');
    for d in c.diffs() {
        s.push('\n');
        s.push_str(&freemap_to_text(d));
    }
    s
}

pub(crate) fn complex_from_text(s: &str) -> Result<ChainComplex> {
    let mut lines = Lines::new(s);
    let ring = read_ring(&mut lines)?;
    let top_line = lines.expect("the top degree")?;
    let top: Vec<usize> = parse_uints(&lines, top_line)?;
    if top.len() != 1 {
        return Err(lines.err("expected a single top degree"));
    }
    let ranks_line = lines.expect("the rank line")?;
    let ranks: Vec<usize> = parse_uints(&lines, ranks_line)?;
    if ranks.len() != top[0] + 1 {
        return Err(lines.err(format!("expected {} ranks, found {}", top[0] + 1, ranks.len())));
    }
    let mut diffs = Vec::with_capacity(top[0]);
    for j in 1..=top[0] {
        let f = read_freemap(&ring, &mut lines)?;
        if f.rows() != ranks[j - 1] || f.cols() != ranks[j] {
            return Err(lines.err(format!(
                "∂_{j} is {}x{}, ranks require {}x{}",
                f.rows(),
                f.cols(),
                ranks[j - 1],
                ranks[j]
            )));
        }
        diffs.push(f);
    }
    if !lines.rest_is_blank() {
        return Err(lines.err("trailing content after the last differential"));
    }
    ChainComplex::new(&ring, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialQuotientRing;
    use crate::complex::{koszul, random_complex};
    use crate::error::Error;

    #[test]
    fn round_trip() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let k = koszul(&r, &[r.var(0), r.var(1)]).unwrap();
        let text = k.to_text();
        assert_eq!(ChainComplex::from_text(&text).unwrap(), k);
        let c = random_complex(&r, &[1, 0, 2], 3, false).unwrap();
        assert_eq!(ChainComplex::from_text(&c.to_text()).unwrap(), c);
        let one_var = MonomialQuotientRing::truncated(5, 4).unwrap();
        let c = random_complex(&one_var, &[2, 2], 1, true).unwrap();
        assert_eq!(ChainComplex::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_files() {
        let bad = "2 1\n2\n\n2\n1 1 1\n\n1 1\nx1\n\n1 1\n1\n";
        assert!(matches!(ChainComplex::from_text(bad), Err(Error::NotAComplex { .. })));
        let short = "2 1\n2\n\n1\n1 1\n";
        assert!(matches!(ChainComplex::from_text(short), Err(Error::Parse { .. })));
    }
}
