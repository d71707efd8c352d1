use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dkh::complex::ChainComplex;
use dkh::dold_kan::FunctorTag;
use dkh::harness::commands::{self, Certificate};
use dkh::harness::{run_sweep, to_csv, CheckName, ComplexSource, RingFamily, SweepConfig, SCHEMA};
use dkh::multiplicity::{dutta_koszul, dutta_sequence, hilbert_kunz, DuttaReport, MonomialIdeal};
use dkh::{Error, Result};

#[derive(Parser)]
#[command(
    name = "dkh",
    version,
    about = "Dold-Kan extensions, homology lengths and verification sweeps"
)]
struct Cli {
    /// Master seed for sweeps (overrides the config file).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output format on stdout.
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
    /// Archive theorem violations instead of failing, and evaluate open cases.
    #[arg(long)]
    research: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct RingArg {
    /// Ring description file.
    #[arg(long, conflicts_with_all = ["carlsson", "truncated"])]
    ring: Option<PathBuf>,
    /// Carlsson ring F_2[x_1..x_d]/(x_i^2).
    #[arg(long, conflicts_with = "truncated")]
    carlsson: Option<usize>,
    /// F_p[x]/(x^a), given as `p,a`.
    #[arg(long)]
    truncated: Option<String>,
}

impl RingArg {
    fn resolve(&self) -> Result<std::sync::Arc<dkh::MonomialQuotientRing>> {
        commands::resolve_ring(self.ring.as_deref(), self.carlsson, self.truncated.as_deref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Describe a ring, optionally writing its description file.
    Ring {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Koszul complex on a list of ring elements.
    Koszul {
        #[command(flatten)]
        ring: RingArg,
        /// Comma separated elements, e.g. `x1,x2`.
        #[arg(long)]
        elements: String,
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Dold-Kan extensions.
    #[command(subcommand)]
    Dk(Dk),
    /// Hilbert-Kunz table of a monomial ideal.
    Hk {
        #[arg(long)]
        p: u32,
        /// Exponent vectors, e.g. `2 0; 0 3`.
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 4)]
        emax: u32,
    },
    /// Dutta multiplicity table of a complex or of a Koszul complex on monomials.
    Dutta {
        #[arg(long, conflicts_with = "koszul_gens")]
        complex: Option<PathBuf>,
        #[arg(long, requires = "p")]
        koszul_gens: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 4)]
        emax: u32,
    },
    /// Carlsson bound sweeps.
    #[command(subcommand)]
    Carlsson(Carlsson),
    /// Single checks.
    #[command(subcommand)]
    Check(Check),
}

#[derive(Subcommand)]
enum Dk {
    /// Write the normalized extension G̃(P).
    Extend {
        #[arg(long)]
        functor: FunctorTag,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Certify the fundamental short exact sequences.
    VerifySes {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        char2: bool,
    },
}

#[derive(Subcommand)]
enum Carlsson {
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// SweepConfig JSON; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    d_min: Option<usize>,
    #[arg(long)]
    d_max: Option<usize>,
    /// Rank profiles, e.g. `1,1;1,2,1`.
    #[arg(long)]
    profiles: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma separated check names.
    #[arg(long)]
    checks: Option<String>,
    /// Add the exhaustive d = 1 enumeration.
    #[arg(long)]
    exhaustive: bool,
    /// Directory for reproduction bundles of failing cases.
    #[arg(long)]
    bundle_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Check {
    E47 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    Thma {
        #[command(flatten)]
        ring: RingArg,
        /// Generators of the ideal presenting M = R/(gens).
        #[arg(long, default_value = "")]
        gens: String,
        /// Evaluate the inequality even when the presentation is not a resolution.
        #[arg(long)]
        raw: bool,
    },
}

fn read_complex(path: &Path) -> Result<ChainComplex> {
    ChainComplex::from_text(&commands::read_file(path)?)
}

fn parse_profiles(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad rank profile `{t}`"),
                })
        })
        .collect()
}

fn sweep_config(cli: &Cli, a: &SweepArgs) -> Result<SweepConfig> {
    let mut cfg = match &a.config {
        Some(p) => SweepConfig::from_json(&commands::read_file(p)?)?,
        None => SweepConfig {
            families: vec![RingFamily::Carlsson { d_min: 1, d_max: 2 }],
            profiles: vec![vec![1, 1], vec![2, 2], vec![1, 2, 1], vec![2, 3, 1]],
            trials: 100,
            checks: vec![CheckName::Carlsson, CheckName::E47, CheckName::Ses],
            ..Default::default()
        },
    };
    if a.d_min.is_some() || a.d_max.is_some() {
        let d_min = a.d_min.unwrap_or(1);
        cfg.families = vec![RingFamily::Carlsson {
            d_min,
            d_max: a.d_max.unwrap_or(d_min),
        }];
    }
    if let Some(p) = &a.profiles {
        cfg.profiles = parse_profiles(p)?;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    if let Some(c) = &a.checks {
        cfg.checks = c.split(',').map(CheckName::parse).collect::<Result<_>>()?;
    }
    cfg.exhaustive_d1 |= a.exhaustive;
    cfg.research |= cli.research;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    Ok(cfg)
}

fn write_bundles(dir: &Path, report: &dkh::harness::SweepReport) -> Result<()> {
    for case in report.failures() {
        if let Some(r) = &case.repro {
            let d = dir.join(&case.id);
            std::fs::create_dir_all(&d)?;
            std::fs::write(d.join("ring.txt"), &r.ring)?;
            std::fs::write(d.join("complex.txt"), &r.complex)?;
            let names: Vec<&str> = r.checks.iter().map(|c| c.name()).collect();
            std::fs::write(d.join("checks.txt"), names.join("\n") + "\n")?;
        }
    }
    Ok(())
}

enum Output {
    Cert(Certificate),
    Table(Certificate, String),
}

fn dutta_output(command: &str, report: &DuttaReport) -> Output {
    Output::Table(
        commands::dutta_certificate(command, report),
        commands::dutta_csv(report),
    )
}

fn run(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Ring { ring, write } => {
            let r = ring.resolve()?;
            if let Some(w) = write {
                std::fs::write(w, r.to_text())?;
            }
            Output::Cert(commands::ring_info(&r))
        }
        Command::Koszul { ring, elements, write } => {
            let r = ring.resolve()?;
            let elems = commands::parse_elements(&r, elements)?;
            let (k, cert) = commands::koszul_command(&r, &elems)?;
            if let Some(w) = write {
                std::fs::write(w, k.to_text())?;
            }
            Output::Cert(cert)
        }
        Command::Dk(Dk::Extend { functor, input, output }) => {
            let (g, cert) = commands::extend_command(*functor, &read_complex(input)?)?;
            if let Some(o) = output {
                std::fs::write(o, g.to_text())?;
            }
            Output::Cert(cert)
        }
        Command::Dk(Dk::VerifySes { input, char2 }) => {
            Output::Cert(commands::verify_ses_command(&read_complex(input)?, *char2)?)
        }
        Command::Hk { p, gens, emax } => dutta_output("hk", &hilbert_kunz(&MonomialIdeal::parse(gens)?, *p, *emax)?),
        Command::Dutta {
            complex,
            koszul_gens,
            p,
            emax,
        } => match (complex, koszul_gens, p) {
            (Some(c), None, _) => dutta_output("dutta", &dutta_sequence(&read_complex(c)?, *emax)?),
            (None, Some(g), Some(p)) => {
                let ideal = MonomialIdeal::parse(g)?;
                dutta_output("dutta", &dutta_koszul(*p, ideal.gens(), *emax)?)
            }
            _ => return Err(Error::Precondition("give --complex or --koszul-gens with --p".into())),
        },
        Command::Carlsson(Carlsson::Sweep(a)) => {
            let cfg = sweep_config(cli, a)?;
            let report = run_sweep(&cfg)?;
            if let Some(dir) = &a.bundle_dir {
                write_bundles(dir, &report)?;
            }
            let code = report.exit_code();
            let csv = to_csv(&report.cases);
            let json = serde_json::to_value(&report).expect("report serializes");
            Output::Table(Certificate { json, code }, csv)
        }
        Command::Check(Check::E47 { input }) => {
            let p = read_complex(input)?;
            let source = ComplexSource::File {
                path: input.display().to_string(),
            };
            let case = commands::e47_command(&p, source, cli.research)?;
            let code = dkh::harness::exit_code(&case.outcomes);
            let csv = to_csv(std::slice::from_ref(&case));
            let json = serde_json::json!({ "schema": SCHEMA, "command": "check e47", "case": case });
            Output::Table(Certificate { json, code }, csv)
        }
        Command::Check(Check::Thma { ring, gens, raw }) => {
            let r = ring.resolve()?;
            let gens = commands::parse_elements(&r, gens)?;
            let o = commands::thma_command(&r, &gens, *raw)?;
            let code = dkh::harness::exit_code([&o]);
            let json = serde_json::json!({ "schema": SCHEMA, "command": "check thma", "outcome": o });
            Output::Cert(Certificate { json, code })
        }
    })
}

fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("dkh: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let (cert, csv) = match out {
        Output::Cert(c) => (c, None),
        Output::Table(c, csv) => (c, Some(csv)),
    };
    match (cli.out, csv) {
        (Format::Csv, Some(csv)) => emit(&csv),
        (Format::Csv, None) => {
            eprintln!("dkh: this command has no CSV view");
            return ExitCode::from(2);
        }
        (Format::Json, _) => emit(&(serde_json::to_string_pretty(&cert.json).expect("json") + "\n")),
    }
    ExitCode::from(cert.code as u8)
}
