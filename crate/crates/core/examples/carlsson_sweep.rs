//! A seeded sweep of the Carlsson bounds with JSON and CSV output.

use dkh::harness::{run_sweep, to_csv, CheckName, RingFamily, SweepConfig};

fn main() -> dkh::Result<()> {
    let cfg = SweepConfig {
        families: vec![RingFamily::Carlsson { d_min: 1, d_max: 2 }],
        profiles: vec![vec![1, 1], vec![1, 2, 1]],
        trials: 5,
        seed: 2024,
        checks: vec![CheckName::Carlsson, CheckName::E47, CheckName::Ses],
        exhaustive_d1: true,
        ..Default::default()
    };
    let report = run_sweep(&cfg)?;
    println!("{:?}", report.summary);
    let csv = to_csv(&report.cases);
    for line in csv.lines().take(6) {
        println!("{line}");
    }
    println!("exit code {}", report.exit_code());
    Ok(())
}
