use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const F16: &str = r#"{"p":2,"e":1,"m":4,"top_modulus":[1,1,0,0,1]}"#;
const C1_SWEEP: &str = r#"{"n":4,"k":2,"h":0,"ts":[[0]],"etas":"all"}"#;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        let s = Sandbox {
            dir: tempfile::tempdir().unwrap(),
        };
        s.write("field.json", F16);
        s
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_twistgab"));
        cmd.current_dir(self.dir.path()).args(args);
        for key in [
            "TWISTGAB_BUDGET_SUBSPACES",
            "TWISTGAB_BUDGET_CODEWORDS",
            "TWISTGAB_BUDGET_AMBIENT",
        ] {
            cmd.env_remove(key);
        }
        cmd.envs(env.iter().copied());
        cmd.output().unwrap()
    }
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad report ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn golden_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/c1_sweep_q2_m4_k2_h0.json")
}

#[test]
fn gabidulin_classifies_as_mrd() {
    let s = Sandbox::new();
    s.write("g.json", r#"{"alpha":[1,2,4,8],"k":2}"#);
    let out = s.run(&["classify", "--field", "field.json", "--code", "g.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "twistgab/1");
    assert_eq!(r["results"][0]["rank"]["is_mrd"], true);
    assert_eq!(r["results"][0]["label"], "MDS");
    assert_eq!(r["complete"], true);
}

/// The stored sweep must be reproduced byte for byte, and its MRD column
/// must match the norm rule: over F_2 every norm is 1 = (-1)^{mk}, so no eta
/// qualifies and none is MRD.
#[test]
fn c1_sweep_matches_golden_file() {
    let s = Sandbox::new();
    s.write("sweep.json", C1_SWEEP);
    let out = s.run(&["classify", "--field", "field.json", "--sweep", "sweep.json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    if std::env::var_os("TWISTGAB_UPDATE_GOLDEN").is_some() {
        std::fs::write(golden_path(), &out.stdout).unwrap();
    }
    let golden = std::fs::read(golden_path()).expect("golden file");
    assert!(
        golden == out.stdout,
        "sweep report differs from {}",
        golden_path().display()
    );
    let r = report(&out);
    let table = r["table"].as_array().unwrap();
    assert_eq!(table.len(), 15);
    for row in table {
        assert_eq!(row["is_mrd"], row["norm_condition"]);
        assert_eq!(row["is_mrd"], false);
    }
}

#[test]
fn malformed_json_is_an_input_error() {
    let s = Sandbox::new();
    s.write("bad.json", r#"{"alpha":[1,2,4,8],"k":"#);
    let out = s.run(&["classify", "--field", "field.json", "--code", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse"));
    assert!(out.stdout.is_empty());

    let out = s.run(&["classify", "--code", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    s.write("dep.json", r#"{"alpha":[1,2,3,8],"k":2}"#);
    assert_eq!(
        s.run(&["classify", "--field", "field.json", "--code", "dep.json"])
            .status
            .code(),
        Some(2)
    );
    s.write("red.json", r#"{"p":2,"m":4,"top_modulus":[1,0,1,0,1]}"#);
    assert_eq!(
        s.run(&["classify", "--field", "red.json", "--code", "dep.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(s.run(&["classify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        s.run(&[
            "classify",
            "--field",
            "field.json",
            "--budget-ambient",
            "0",
            "--code",
            "dep.json"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn over_budget_gives_partial_report_and_exit_3() {
    let s = Sandbox::new();
    s.write(
        "c1.json",
        r#"{"alpha":[1,2,4,8],"k":2,"h":0,"twists":[{"t":0,"eta":2}]}"#,
    );
    let out = s.run(&[
        "covering",
        "--field",
        "field.json",
        "--code",
        "c1.json",
        "--budget-ambient",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["complete"], false);
    let res = &r["results"][0];
    assert!(res["rho"].is_null());
    assert_eq!(res["lower_bound"]["value"], 2);
    assert_eq!(res["lower_bound"]["provenance"], "theorem-bound");

    let out = s.run_env(
        &["classify", "--field", "field.json", "--code", "c1.json"],
        &[("TWISTGAB_BUDGET_CODEWORDS", "5")],
    );
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["budgets"]["codewords"], 5);
    assert_eq!(r["results"][0]["error"]["kind"], "budget");
    // An explicit flag wins over the environment.
    let out = s.run_env(
        &[
            "classify",
            "--field",
            "field.json",
            "--code",
            "c1.json",
            "--budget-codewords",
            "1000",
        ],
        &[("TWISTGAB_BUDGET_CODEWORDS", "5")],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oversized_sweep_is_refused() {
    let s = Sandbox::new();
    s.write("sweep.json", C1_SWEEP);
    let out = s.run(&[
        "classify",
        "--field",
        "field.json",
        "--sweep",
        "sweep.json",
        "--budget-codewords",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn construct_output_feeds_classify() {
    let s = Sandbox::new();
    s.write(
        "chain.json",
        r#"{"family":"chain","alpha":[1,6],"k":1,"h":0,"ts":[0],"chain":[2],"etas":[[0,1,0,0]]}"#,
    );
    let out = s.run(&[
        "construct",
        "--field",
        "field.json",
        "--code",
        "chain.json",
        "--out",
        "built.json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let built: Value =
        serde_json::from_str(&std::fs::read_to_string(s.path("built.json")).unwrap()).unwrap();
    assert_eq!(built["results"][0]["verification"]["is_mrd"], true);
    let out = s.run(&["classify", "--field", "field.json", "--code", "built.json"]);
    assert_eq!(report(&out)["results"][0]["rank"]["is_mrd"], true);

    s.write(
        "bad.json",
        r#"{"family":"chain","alpha":[1,6],"k":1,"ts":[0],"chain":[2],"etas":[6]}"#,
    );
    let out = s.run(&["construct", "--field", "field.json", "--code", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn covering_and_deephole_commands() {
    let s = Sandbox::new();
    s.write(
        "c1.json",
        r#"{"alpha":[1,2,4,8],"k":2,"h":1,"twists":[{"t":0,"eta":7}]}"#,
    );
    let r = report(&s.run(&["covering", "--field", "field.json", "--code", "c1.json"]));
    let res = &r["results"][0];
    assert_eq!(res["rho"]["value"], 2);
    assert_eq!(res["rho"]["provenance"], "exhaustive");
    assert!(!res["deepest_vectors"].as_array().unwrap().is_empty());

    let out = s.run(&[
        "deephole",
        "--flavor",
        "k",
        "--g",
        "1",
        "5",
        "--field",
        "field.json",
        "--code",
        "c1.json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let res = &report(&out)["results"][0];
    assert_eq!(res["verified"], true);
    assert_eq!(res["checked"], 2);
    assert_eq!(res["vectors"][0]["extension_mrd"], true);

    s.write("vs.json", r#"[[1,0,0,0], [0,0,0,0]]"#);
    let res = &report(&s.run(&[
        "deephole",
        "--vectors",
        "vs.json",
        "--field",
        "field.json",
        "--code",
        "c1.json",
    ]))["results"][0];
    assert_eq!(res["vectors"][1]["distance"]["value"], 0);
    assert!(res["vectors"][1]["extension_mrd"].is_null());
}

#[test]
fn forbidden_command_reports_sets() {
    let s = Sandbox::new();
    s.write(
        "c1.json",
        r#"{"alpha":[1,2,4,8],"k":2,"h":0,"twists":[{"t":0,"eta":1}]}"#,
    );
    let res =
        &report(&s.run(&["forbidden", "--field", "field.json", "--code", "c1.json"]))["results"][0];
    assert_eq!(res["mode"], "one-twist");
    assert_eq!(res["sets"]["forbidden_eta"]["provenance"], "exhaustive");
    assert_eq!(res["sets"]["omega_1"]["provenance"], "theorem");
    assert_eq!(res["mrd_eta_count"], 0);
    s.write(
        "c2.json",
        r#"{"alpha":[1,2,4,8],"k":1,"twists":[{"t":0,"eta":1},{"t":1,"eta":1}]}"#,
    );
    let res =
        &report(&s.run(&["forbidden", "--field", "field.json", "--code", "c2.json"]))["results"][0];
    assert_eq!(res["mode"], "multi-twist");
    assert!(res["omega_tuples"]["size"].as_u64().unwrap() > 0);
}

#[test]
fn reports_ignore_worker_count() {
    let s = Sandbox::new();
    s.write(
        "sweep.json",
        r#"{"n":4,"k":1,"ts":[[0,1]],"etas":[[1,2],[3,4],[5,6],[7,8]]}"#,
    );
    let runs: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|w| {
            s.run(&[
                "classify",
                "--field",
                "field.json",
                "--sweep",
                "sweep.json",
                "--workers",
                w,
                "--seed",
                "5",
            ])
            .stdout
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}
