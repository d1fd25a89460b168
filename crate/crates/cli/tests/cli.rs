use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_framelab"));
    c.env_remove("FRAMELAB_BUDGET");
    c
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str, body: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("framelab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn table_matches_golden_and_triangular_numbers() {
    let out = run(&["table", "--p", "2", "--gamma-size", "1", "--t", "0..2", "--n", "1..10", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, std::fs::read_to_string(data("table_p2_g1.tsv")).unwrap());
    let row0: Vec<u64> = text.lines().nth(1).unwrap().split('\t').skip(1).map(|s| s.parse().unwrap()).collect();
    let tri: Vec<u64> = (1..=10u64).map(|n| n * (n + 1) / 2).collect();
    assert_eq!(row0, tri);
}

#[test]
fn table_json_skips_n_below_t() {
    let out = run(&["table", "--p", "3", "--gamma-size", "2", "--t", "2", "--n", "1..3"]);
    assert!(out.status.success());
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 2);
}

#[test]
fn witnesses_exit_zero() {
    for args in [
        &["verify", "techtwo", "--t", "1"][..],
        &["verify", "techthree", "--t", "0"],
        &["verify", "techodd", "--p", "5", "--t", "1"],
        &["verify", "primesubfield", "--p", "3", "--gamma", "1", "--n", "3"],
        &["verify", "heller-sweep"],
    ] {
        let out = run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(json(&out)["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == true));
    }
}

#[test]
fn dowling_extension_sampling_is_seeded() {
    let args = ["--seed", "4", "verify", "dowling-extension", "--p", "3", "--gamma", "1", "--m", "3", "--n", "30", "--samples", "40"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["checks"][0]["computed"]["replayed"], 40);
}

#[test]
fn k5_has_no_fano_minor() {
    let k5 = run(&["construct", "dowling", "--p", "2", "--n", "4"]);
    let fano = run(&["construct", "pg", "--p", "2", "--dim", "2"]);
    let (h, p) = (scratch("k5.json", &k5.stdout), scratch("fano.json", &fano.stdout));
    let out = run(&["minor", "--host", h.to_str().unwrap(), "--pattern", p.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "no minor (exhaustive)");

    let pg3 = run(&["construct", "pg", "--p", "2", "--dim", "3"]);
    let h = scratch("pg3.json", &pg3.stdout);
    let v = json(&run(&["minor", "--host", h.to_str().unwrap(), "--pattern", p.to_str().unwrap()]));
    assert_eq!(v["verdict"], "minor found");
    assert_eq!(v["replayed"], true);
}

#[test]
fn info_and_operations() {
    let k4 = run(&["construct", "dowling", "--p", "2", "--n", "3"]);
    let f = scratch("k4.json", &k4.stdout);
    let v = json(&run(&["info", f.to_str().unwrap()]));
    assert_eq!((v["size"].as_u64(), v["rank"].as_u64(), v["simple"].as_bool()), (Some(6), Some(3), Some(true)));

    let dual = run(&["op", "dual", f.to_str().unwrap()]);
    let d = scratch("k4d.json", &dual.stdout);
    assert_eq!(json(&run(&["info", d.to_str().unwrap()]))["rank"], 3);

    let tsv = run(&["info", f.to_str().unwrap(), "--format", "tsv"]);
    assert!(String::from_utf8(tsv.stdout).unwrap().starts_with("size\trank"));
}

#[test]
fn template_round_trip() {
    let t = data("ternary_template.json");
    let t = t.to_str().unwrap();
    let red = run(&["template", "reduce", t]);
    assert!(red.status.success());
    assert_eq!(json(&red)["reduced"], true);

    let e = run(&["template", "enumerate", t, "--max-ground", "5", "--max-rows", "3"]);
    assert!(e.status.success());
    let v = json(&e);
    assert_eq!(v["count"].as_u64().unwrap() as usize, v["members"].as_array().unwrap().len());

    let member = serde_json::to_vec(&v["members"][0]["matroid"]).unwrap();
    let m = scratch("member.json", &member);
    let d = run(&["template", "density", "--template", t, "--matroid", m.to_str().unwrap()]);
    assert!(d.status.success(), "{}", String::from_utf8_lossy(&d.stdout));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["table", "--p", "2"]), 2);
    assert_eq!(code(&["construct", "pg", "--p", "2", "--dim", "2", "--format", "tsv"]), 2);
    let t = data("ternary_template.json");
    assert_eq!(code(&["--budget", "10", "template", "enumerate", t.to_str().unwrap()]), 3);
    let bad = scratch("bad.json", b"{");
    assert_eq!(code(&["info", bad.to_str().unwrap()]), 4);
    assert_eq!(code(&["info", "/nonexistent/framelab.json"]), 4);
    let k4 = scratch("k4b.json", &run(&["construct", "dowling", "--p", "2", "--n", "3"]).stdout);
    assert_eq!(code(&["op", "delete", k4.to_str().unwrap(), "--labels", "nope"]), 5);
    assert_eq!(code(&["construct", "pg", "--p", "4", "--dim", "2"]), 5);
    assert_eq!(code(&["verify", "dowling-extension", "--p", "3", "--gamma", "1", "--m", "3", "--n", "6"]), 5);
}
