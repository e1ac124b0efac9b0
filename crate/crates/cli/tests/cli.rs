use std::process::{Command, Output};

use serde_json::Value;

fn rigidmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn triple_classification() {
    let out = rigidmod(&["triple", "--traces", "x=[0]@12", "z=[-1]@12"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["triple"]["orders"], serde_json::json!([4, 1, 3]));
    assert_eq!(r["triple"]["n"], 12);
    assert_eq!(r["family"]["kind"], "j1728");
    assert!(r.get("counting").is_none());
}

#[test]
fn traces_with_separate_level() {
    let a = rigidmod(&["triple", "--traces", "x=[0]", "z=[-1]", "n=12"]);
    let b = rigidmod(&["triple", "--traces", "x=[0]@12", "z=[-1]@12"]);
    assert_eq!(json(&a)["triple"], json(&b)["triple"]);
}

#[test]
fn plan_rejects_eight() {
    let out = rigidmod(&["plan", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!(r["plan"]["rejected_reason"].as_str().unwrap().contains("8 does not divide n"));
    assert!(r.get("counting").is_none());
}

#[test]
fn analyze_ttv_even_five() {
    let out = rigidmod(&["analyze", "--family", "ttv-even:5", "--x0", "2", "--pmax", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let steps = r["plan"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["ell"], 5);
    assert_eq!(steps[0]["n_before"], 10);
    assert_eq!(steps[0]["n_after"], 2);
    let c = &r["congruence"][0];
    assert_eq!(c["target"], "legendre");
    assert_eq!(c["verdict"], "verified");
    assert_eq!(r["science_flag"], 0);
}

#[test]
fn count_single_prime() {
    let out = rigidmod(&["count", "--family", "legendre", "--x0", "-1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let row = &json(&out)["counting"][0]["rows"][0];
    assert_eq!(row["points"], 8);
    assert_eq!(row["l_polynomial"], serde_json::json!([1, 2, 5]));
}

#[test]
fn congruence_eisenstein() {
    let out = rigidmod(&[
        "congruence", "--family", "ttv-odd:5", "--target", "eisenstein", "--ell", "5", "--x0", "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["congruence"][0];
    assert_eq!(c["mode"], "eisenstein_target");
    assert_eq!(c["verdict"], "verified");
}

#[test]
fn exit_codes() {
    assert_eq!(rigidmod(&["--help"]).status.code(), Some(0));
    assert_eq!(rigidmod(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rigidmod(&["count", "--family", "legendre", "--x0", "1"]).status.code(), Some(1));
    assert_eq!(rigidmod(&["count", "--family", "legendre"]).status.code(), Some(1));
    assert_eq!(rigidmod(&["count", "--family", "nonsense", "--x0", "2"]).status.code(), Some(1));
    assert_eq!(
        rigidmod(&["triple", "--family", "legendre", "--traces", "x=[0]@12", "z=[-1]@12"]).status.code(),
        Some(1)
    );
    // 3 divides the discriminant of X(X - 1)(X - 3)
    let bad = rigidmod(&["count", "--family", "legendre", "--x0", "3", "--p", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(json(&bad)["stages"]["counting"]["status"], "error");
    let mismatch = rigidmod(&[
        "congruence", "--family", "ttv-even:5", "--target", "eisenstein", "--ell", "5", "--x0", "2",
    ]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("rigidmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let args = ["curve", "--family", "ttv-odd:3", "--x0", "2", "--x0", "1/2"];
    let a = rigidmod(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let b = rigidmod(&with_out);
    assert_eq!(b.status.code(), Some(0));
    assert!(b.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_schedule_independent() {
    let args = ["analyze", "--family", "ttv-even:5", "--x0", "2", "--x0", "3", "--x0", "-1"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_rigidmod"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
}
