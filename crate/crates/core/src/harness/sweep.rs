use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CheckName, Outcome, Status, SCHEMA};
use crate::algebra::{FreeMap, MonomialQuotientRing};
use crate::complex::{random_complex, ChainComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingFamily {
    /// `F_2[x_1..x_d]/(x_i^2)` for `d` in `[d_min, d_max]`.
    Carlsson { d_min: usize, d_max: usize },
    /// `F_p[x]/(x^a)` for `a` in `[a_min, a_max]`.
    Truncated { p: u32, a_min: u32, a_max: u32 },
}

impl RingFamily {
    fn members(&self) -> Result<Vec<(String, Arc<MonomialQuotientRing>)>> {
        match *self {
            RingFamily::Carlsson { d_min, d_max } => (d_min..=d_max)
                .map(|d| Ok((format!("c{d}"), MonomialQuotientRing::carlsson(d)?)))
                .collect(),
            RingFamily::Truncated { p, a_min, a_max } => (a_min..=a_max)
                .map(|a| Ok((format!("t{p}_{a}"), MonomialQuotientRing::truncated(p, a)?)))
                .collect(),
        }
    }
}

fn default_schema() -> u32 {
    SCHEMA
}

fn default_true() -> bool {
    true
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

/// Up-front description of a sweep. The same JSON schema is accepted as a
/// config file by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default)]
    pub families: Vec<RingFamily>,
    #[serde(default)]
    pub profiles: Vec<Vec<usize>>,
    #[serde(default)]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Worker threads; 0 picks one per core. Never affects the output.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub jobs: usize,
    #[serde(default)]
    pub checks: Vec<CheckName>,
    #[serde(default = "default_true")]
    pub minimal: bool,
    /// Adds every minimal complex over `F_2[x]/(x^2)` with rank sum at most 4.
    #[serde(default)]
    pub exhaustive_d1: bool,
    #[serde(default)]
    pub research: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            schema: SCHEMA,
            families: Vec::new(),
            profiles: Vec::new(),
            trials: 0,
            seed: 0,
            jobs: 0,
            checks: Vec::new(),
            minimal: true,
            exhaustive_d1: false,
            research: false,
        }
    }
}

impl SweepConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        if cfg.schema != SCHEMA {
            return Err(Error::Precondition(format!("unsupported schema {}", cfg.schema)));
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexSource {
    Random {
        ranks: Vec<usize>,
        seed: u64,
        minimal: bool,
    },
    Exhaustive {
        ranks: Vec<usize>,
        index: u64,
    },
    Koszul {
        elements: Vec<String>,
    },
    File {
        path: String,
    },
}

/// Everything needed to rerun a case standalone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Repro {
    pub ring: String,
    pub complex: String,
    pub checks: Vec<CheckName>,
    pub research: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub id: String,
    pub ring: String,
    pub source: ComplexSource,
    pub ranks: Vec<usize>,
    pub checks: Vec<CheckName>,
    pub outcomes: Vec<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub repro: Option<Repro>,
}

impl VerificationCase {
    pub fn failed(&self) -> bool {
        self.outcomes
            .iter()
            .any(|o| matches!(o.status, Status::Fail | Status::Error))
    }

    /// Runs `checks` on `p` and attaches a reproduction bundle on failure.
    pub fn evaluate(id: String, source: ComplexSource, p: &ChainComplex, checks: &[CheckName], research: bool) -> Self {
        let outcomes = run_checks(p, checks, research);
        let mut case = VerificationCase {
            id,
            ring: p.ring().to_text(),
            source,
            ranks: p.ranks().to_vec(),
            checks: checks.to_vec(),
            outcomes,
            repro: None,
        };
        if case.failed() {
            case.repro = Some(Repro {
                ring: p.ring().to_text(),
                complex: p.to_text(),
                checks: checks.to_vec(),
                research,
            });
        }
        case
    }
}

fn run_checks(p: &ChainComplex, checks: &[CheckName], research: bool) -> Vec<Outcome> {
    checks
        .iter()
        .map(|&c| match c.run(p, research) {
            Ok(mut o) => {
                if research && o.status == Status::Fail && p.ring().p() == 2 {
                    o.status = Status::Archived;
                }
                o
            }
            Err(e) if e.is_internal() => Outcome::error(c.name(), e.to_string()),
            Err(e) => Outcome::skipped(c.name(), e.to_string()),
        })
        .collect()
}

/// Reruns a reproduction bundle.
pub fn rerun_bundle(repro: &Repro) -> Result<Vec<Outcome>> {
    let p = ChainComplex::from_text(&repro.complex)?;
    if p.ring().to_text() != repro.ring {
        return Err(Error::RingMismatch);
    }
    Ok(run_checks(&p, &repro.checks, repro.research))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cases: usize,
    pub outcomes: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub archived: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: u32,
    pub config: SweepConfig,
    pub summary: SweepSummary,
    pub cases: Vec<VerificationCase>,
}

impl SweepReport {
    pub fn exit_code(&self) -> i32 {
        super::exit_code(self.cases.iter().flat_map(|c| &c.outcomes))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationCase> {
        self.cases.iter().filter(|c| c.failed())
    }
}

/// SplitMix64 chained over `parts`.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(master), |acc, &x| mix(acc ^ mix(x)))
}

/// Compositions of every `n <= max_sum` into positive parts.
fn profiles_up_to(max_sum: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for part in 1..=left {
            cur.push(part);
            rec(left - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_sum, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum()).then(a.cmp(b)));
    out
}

fn exhaustive_complex(ring: &Arc<MonomialQuotientRing>, ranks: &[usize], index: u64) -> Result<ChainComplex> {
    let x = ring.var(0);
    let zero = ring.zero();
    let mut bit = 0;
    let mut diffs = Vec::with_capacity(ranks.len().saturating_sub(1));
    for j in 1..ranks.len() {
        let n = ranks[j - 1] * ranks[j];
        let entries: Vec<_> = (0..n)
            .map(|k| {
                if index >> (bit + k) & 1 == 1 {
                    x.clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        bit += n;
        diffs.push(FreeMap::from_entries(ring, ranks[j - 1], ranks[j], &entries)?);
    }
    ChainComplex::new(ring, ranks.to_vec(), diffs)
}

/// Every minimal complex over `F_2[x]/(x^2)` with rank sum at most 4, in a
/// fixed order. Entries range over `{0, x}`; since `x^2 = 0` every choice
/// squares to zero.
pub fn exhaustive_d1() -> Result<Vec<(String, ComplexSource, ChainComplex)>> {
    let ring = MonomialQuotientRing::carlsson(1)?;
    let mut out = Vec::new();
    for (pi, ranks) in profiles_up_to(4).into_iter().enumerate() {
        let entries: usize = ranks.windows(2).map(|w| w[0] * w[1]).sum();
        for index in 0..1u64 << entries {
            let p = exhaustive_complex(&ring, &ranks, index)?;
            let source = ComplexSource::Exhaustive {
                ranks: ranks.clone(),
                index,
            };
            out.push((format!("exh-p{pi:02}-i{index:04}"), source, p));
        }
    }
    Ok(out)
}

enum Pending {
    Ready(String, ComplexSource, ChainComplex),
    Random {
        id: String,
        ring: Arc<MonomialQuotientRing>,
        ranks: Vec<usize>,
        seed: u64,
        minimal: bool,
    },
}

/// Runs the sweep. Output is ordered by case id and does not depend on
/// `cfg.jobs`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut pending = Vec::new();
    if cfg.exhaustive_d1 {
        pending.extend(exhaustive_d1()?.into_iter().map(|(id, s, p)| Pending::Ready(id, s, p)));
    }
    for (fi, family) in cfg.families.iter().enumerate() {
        for (tag, ring) in family.members()? {
            for (pi, ranks) in cfg.profiles.iter().enumerate() {
                for t in 0..cfg.trials {
                    let seed = derive_seed(cfg.seed, &[fi as u64, ring.dim() as u64, pi as u64, t as u64]);
                    pending.push(Pending::Random {
                        id: format!("{tag}-p{pi:02}-t{t:05}"),
                        ring: ring.clone(),
                        ranks: ranks.clone(),
                        seed,
                        minimal: cfg.minimal,
                    });
                }
            }
        }
    }
    log::info!("sweep: {} cases", pending.len());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let evaluate = |job: Pending| -> VerificationCase {
        match job {
            Pending::Ready(id, source, p) => VerificationCase::evaluate(id, source, &p, &cfg.checks, cfg.research),
            Pending::Random {
                id,
                ring,
                ranks,
                seed,
                minimal,
            } => {
                let source = ComplexSource::Random {
                    ranks: ranks.clone(),
                    seed,
                    minimal,
                };
                match random_complex(&ring, &ranks, seed, minimal) {
                    Ok(p) => VerificationCase::evaluate(id, source, &p, &cfg.checks, cfg.research),
                    Err(e) => {
                        let status = if e.is_internal() {
                            Outcome::error
                        } else {
                            Outcome::skipped
                        };
                        VerificationCase {
                            id,
                            ring: ring.to_text(),
                            source,
                            ranks,
                            checks: cfg.checks.clone(),
                            outcomes: vec![status("construct", e.to_string())],
                            repro: None,
                        }
                    }
                }
            }
        }
    };
    let mut cases: Vec<VerificationCase> = pool.install(|| pending.into_par_iter().map(evaluate).collect());
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let mut summary = SweepSummary {
        cases: cases.len(),
        ..Default::default()
    };
    for o in cases.iter().flat_map(|c| &c.outcomes) {
        summary.outcomes += 1;
        match o.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Archived => summary.archived += 1,
            Status::Error => summary.error += 1,
        }
    }
    let mut config = cfg.clone();
    config.jobs = 0;
    Ok(SweepReport {
        schema: SCHEMA,
        config,
        summary,
        cases,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per outcome; quantities are flattened to `key=value` pairs.
pub fn to_csv(cases: &[VerificationCase]) -> String {
    let mut out = String::from("id,ranks,check,status,quantities,note\n");
    for c in cases {
        let ranks = c.ranks.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        for o in &c.outcomes {
            let q = o
                .quantities
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            let status = serde_json::to_value(o.status).expect("status serializes");
            let row = [
                c.id.clone(),
                ranks.clone(),
                o.check.clone(),
                status.as_str().unwrap_or_default().to_string(),
                q,
                o.note.clone().unwrap_or_default(),
            ];
            out.push_str(&row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_empty_report() {
        let r = run_sweep(&SweepConfig::default()).unwrap();
        assert!(r.cases.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn profiles_enumerated() {
        let p = profiles_up_to(4);
        assert_eq!(p.len(), 1 + 2 + 4 + 8);
        assert_eq!(p[0], vec![1]);
    }

    #[test]
    fn exhaustive_counts() {
        let all = exhaustive_d1().unwrap();
        let expected: usize = profiles_up_to(4)
            .iter()
            .map(|r| 1usize << r.windows(2).map(|w| w[0] * w[1]).sum::<usize>())
            .sum();
        assert_eq!(all.len(), expected);
        assert!(all.iter().all(|(_, _, p)| p.is_minimal()));
    }

    #[test]
    fn small_sweep_is_deterministic_and_passes() {
        let cfg = SweepConfig {
            families: vec![RingFamily::Carlsson { d_min: 1, d_max: 2 }],
            profiles: vec![vec![1, 1], vec![1, 2, 1]],
            trials: 3,
            seed: 11,
            jobs: 2,
            checks: vec![CheckName::Carlsson, CheckName::E47, CheckName::Ses],
            ..Default::default()
        };
        let a = run_sweep(&cfg).unwrap();
        let b = run_sweep(&SweepConfig { jobs: 1, ..cfg.clone() }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.exit_code(), 0);
        assert_eq!(a.summary.fail, 0);
        let back = SweepConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn bundle_reruns() {
        let ring = MonomialQuotientRing::carlsson(2).unwrap();
        let p = random_complex(&ring, &[1, 2], 5, true).unwrap();
        let checks = vec![CheckName::Carlsson, CheckName::E47];
        let case = VerificationCase::evaluate("x".into(), ComplexSource::File { path: "-".into() }, &p, &checks, false);
        let repro = Repro {
            ring: ring.to_text(),
            complex: p.to_text(),
            checks,
            research: false,
        };
        assert_eq!(rerun_bundle(&repro).unwrap(), case.outcomes);
    }
}
