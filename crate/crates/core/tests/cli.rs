use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dkh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkh")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn file_formats_roundtrip_through_commands() {
    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("r.ring");
    let p = dir.path().join("p.cplx");
    let g = dir.path().join("g.cplx");

    let out = dkh(&["ring", "--carlsson", "2", "--write", path(&ring)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dim"], 4);

    let out = dkh(&[
        "koszul",
        "--ring",
        path(&ring),
        "--elements",
        "x1,x2",
        "--write",
        path(&p),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["homology"]["total_h"], 4);

    let out = dkh(&["dk", "extend", "--functor", "t2", "--in", path(&p), "--out", path(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["homology"]["h"], v["tensor_homology"]);
    let ext = dkh::ChainComplex::from_text(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(serde_json::to_value(ext.homology()).unwrap(), v["homology"]);

    let out = dkh(&["dk", "verify-ses", "--in", path(&p), "--char2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["exact"], true);
    assert_eq!(json(&out)["schema"], 1);
}

#[test]
fn checks_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.cplx");
    dkh(&["koszul", "--carlsson", "1", "--elements", "x1", "--write", path(&p)]);

    let out = dkh(&["check", "e47", "--in", path(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let q = &json(&out)["case"]["outcomes"][0]["quantities"];
    assert_eq!((q["h_pp"].clone(), q["two_pow_d_beta"].clone()), (4.into(), 4.into()));

    assert_eq!(
        dkh(&["check", "thma", "--truncated", "2,2", "--gens", "x1"])
            .status
            .code(),
        Some(2)
    );
    let out = dkh(&["check", "thma", "--truncated", "2,2", "--gens", "x1", "--raw"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["quantities"]["tensor_bound"], true);

    let bad = dir.path().join("bad.cplx");
    std::fs::write(&bad, "2 1\n2\n\n2\n1 1 1\n\n1 1\n1\n\n1 1\n1\n").unwrap();
    assert_eq!(dkh(&["check", "e47", "--in", path(&bad)]).status.code(), Some(2));
    assert_eq!(dkh(&["carlsson", "sweep", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(dkh(&["hk", "--p", "2", "--gens", "2 1"]).status.code(), Some(2));
    assert_eq!(dkh(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tables_in_csv() {
    let out = dkh(&["--out", "csv", "hk", "--p", "2", "--gens", "2 0; 0 3", "--emax", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("e,q,divisor,length,h,chi,normalized"));
    assert_eq!(text.lines().nth(2), Some("1,2,4,24,,24,6"));

    let out = dkh(&[
        "--out",
        "csv",
        "dutta",
        "--koszul-gens",
        "2 0; 0 3",
        "--p",
        "2",
        "--emax",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("1,2,4,24,24 0 0,24,6"));
}

#[test]
fn sweeps_are_reproducible() {
    let args = ["--seed", "5", "carlsson", "sweep", "--trials", "3", "--exhaustive"];
    let a = dkh(&[&["--jobs", "1"], &args[..]].concat());
    let b = dkh(&[&["--jobs", "3"], &args[..]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["fail"], 0);
    let ids: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    std::fs::write(&cfg, serde_json::to_string(&v["config"]).unwrap()).unwrap();
    let c = dkh(&["--jobs", "2", "carlsson", "sweep", "--config", path(&cfg)]);
    assert_eq!(a.stdout, c.stdout);

    std::fs::write(&cfg, "{\"schema\": 1}").unwrap();
    let empty = dkh(&["carlsson", "sweep", "--config", path(&cfg)]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(json(&empty)["cases"], serde_json::json!([]));
}
