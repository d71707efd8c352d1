//! Command implementations behind the `dkh` binary. Each returns a JSON
//! certificate plus the exit code it implies.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{
    check_e47, check_thma, check_total_rank_koszul, exit_code, CheckName, ComplexSource, Outcome, VerificationCase,
    SCHEMA,
};
use crate::algebra::{MonomialQuotientRing, RingElement};
use crate::complex::{koszul, tensor, ChainComplex};
use crate::dold_kan::{extend, ses_maps, FunctorTag, ShortExactSequence};
use crate::error::{Error, Result};
use crate::multiplicity::DuttaReport;

/// JSON result of a command.
pub struct Certificate {
    pub json: Value,
    pub code: i32,
}

impl Certificate {
    fn new(command: &str, mut body: Value, code: i32) -> Self {
        if let Value::Object(m) = &mut body {
            m.insert("schema".into(), json!(SCHEMA));
            m.insert("command".into(), json!(command));
        }
        Certificate { json: body, code }
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Ring from a description file, the Carlsson ring on `d` variables, or
/// `F_p[x]/(x^a)` given as `"p,a"`.
pub fn resolve_ring(
    file: Option<&Path>,
    carlsson: Option<usize>,
    truncated: Option<&str>,
) -> Result<Arc<MonomialQuotientRing>> {
    match (file, carlsson, truncated) {
        (Some(f), None, None) => MonomialQuotientRing::from_text(&read_file(f)?),
        (None, Some(d), None) => MonomialQuotientRing::carlsson(d),
        (None, None, Some(s)) => {
            let parts: Vec<u32> = s
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("expected `p,a`, got `{s}`"),
                })?;
            match parts[..] {
                [p, a] => MonomialQuotientRing::truncated(p, a),
                _ => Err(Error::Parse {
                    line: 1,
                    msg: format!("expected `p,a`, got `{s}`"),
                }),
            }
        }
        (None, None, None) => Err(Error::Precondition("no ring given".into())),
        _ => Err(Error::Precondition("give exactly one ring source".into())),
    }
}

/// Comma separated ring elements, e.g. `"x1, x2+x1*x2"`.
pub fn parse_elements(ring: &Arc<MonomialQuotientRing>, s: &str) -> Result<Vec<RingElement>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| ring.parse_element(t.trim()))
        .collect()
}

pub fn ring_info(ring: &MonomialQuotientRing) -> Certificate {
    let basis: Vec<String> = (0..ring.dim())
        .map(|i| {
            let mut c = vec![0; ring.dim()];
            c[i] = 1;
            ring.format_coeffs(&c)
        })
        .collect();
    Certificate::new(
        "ring",
        json!({
            "p": ring.p(), "n_vars": ring.n_vars(), "gens": ring.gens(), "dim": ring.dim(),
            "carlsson": ring.is_carlsson(), "basis": basis, "text": ring.to_text(),
        }),
        0,
    )
}

pub fn koszul_command(
    ring: &Arc<MonomialQuotientRing>,
    elements: &[RingElement],
) -> Result<(ChainComplex, Certificate)> {
    let k = koszul(ring, elements)?;
    let check = check_total_rank_koszul(ring, elements)?;
    let code = exit_code([&check]);
    let names: Vec<String> = elements.iter().map(ToString::to_string).collect();
    let body = json!({ "elements": names, "ranks": k.ranks(), "homology": k.homology(), "check": check });
    Ok((k, Certificate::new("koszul", body, code)))
}

pub fn extend_command(tag: FunctorTag, p: &ChainComplex) -> Result<(ChainComplex, Certificate)> {
    let g = extend(tag, p)?;
    let mut body = json!({
        "functor": tag, "input_ranks": p.ranks(), "ranks": g.ranks(), "homology": g.homology(),
    });
    if tag == FunctorTag::T2 {
        body["tensor_homology"] = json!(tensor(p, p)?.homology().h);
    }
    Ok((g, Certificate::new("dk extend", body, 0)))
}

fn ses_json(s: &ShortExactSequence) -> Value {
    json!({
        "functors": s.functors, "homology": s.homology, "certificates": s.certificates,
        "exact": s.exact(), "euler_additive": s.euler_additive(),
    })
}

pub fn verify_ses_command(p: &ChainComplex, char2: bool) -> Result<Certificate> {
    let ses = ses_maps(p, char2)?;
    let mut ok = ses.main.exact() && ses.main.euler_additive();
    let mut body = json!({ "main": ses_json(&ses.main) });
    if let Some(c2) = &ses.char2 {
        ok &= c2.exact() && c2.euler_additive();
        body["char2"] = ses_json(c2);
    }
    body["exact"] = json!(ok);
    Ok(Certificate::new("dk verify-ses", body, if ok { 0 } else { 1 }))
}

pub fn dutta_certificate(command: &str, report: &DuttaReport) -> Certificate {
    Certificate::new(command, json!({ "report": report }), 0)
}

/// One row per `e`.
pub fn dutta_csv(report: &DuttaReport) -> String {
    let mut out = String::from("e,q,divisor,length,h,chi,normalized\n");
    for r in &report.rows {
        let h = r.h.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        let length = r.length.map(|l| l.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.e, r.q, r.divisor, length, h, r.chi, r.normalized
        ));
    }
    out
}

pub fn e47_command(p: &ChainComplex, source: ComplexSource, research: bool) -> Result<VerificationCase> {
    check_e47(p, research)?;
    Ok(VerificationCase::evaluate(
        "e47".into(),
        source,
        p,
        &[CheckName::E47],
        research,
    ))
}

pub fn thma_command(ring: &Arc<MonomialQuotientRing>, gens: &[RingElement], raw: bool) -> Result<Outcome> {
    check_thma(ring, gens, raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_sources() {
        assert_eq!(resolve_ring(None, Some(2), None).unwrap().dim(), 4);
        assert_eq!(resolve_ring(None, None, Some("3,3")).unwrap().dim(), 3);
        assert!(resolve_ring(None, Some(2), Some("3,3")).is_err());
        assert!(resolve_ring(None, None, Some("3")).is_err());
    }

    #[test]
    fn koszul_and_ses() {
        let r = MonomialQuotientRing::carlsson(2).unwrap();
        let elems = parse_elements(&r, "x1, x2").unwrap();
        let (k, cert) = koszul_command(&r, &elems).unwrap();
        assert_eq!(cert.code, 0);
        assert_eq!(cert.json["homology"]["total_h"], json!(4));
        let ses = verify_ses_command(&k.truncate(0, 1).unwrap(), true).unwrap();
        assert_eq!(ses.code, 0);
        assert_eq!(ses.json["schema"], json!(1));
    }
}
