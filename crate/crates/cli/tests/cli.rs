use std::process::{Command, Output};

use serde_json::Value;

fn hgf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgf")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_instance_four_lines() {
    let out = hgf(&["verify-all", "--lambda", "1,1,1,1", "--r", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"]["h1"]["h1_rank"], 2);
    assert_eq!(v["reports"]["hr"]["result"]["all_hold"], true);
    assert_eq!(v["reports"]["hr"]["hr_rank"]["result"]["rank"], 1);
    assert_eq!(v["reports"]["charvar"]["trivial"], true);
}

#[test]
fn h1_single_block() {
    let out = hgf(&["h1", "--lambda", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h1_rank"], 1);
    assert_eq!(v["schema"], "hgf-report/1");
}

#[test]
fn charvar_degenerate_has_witness() {
    let out = hgf(&["charvar", "--lambda", "2,1,1", "--r", "1", "--degenerate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["trivial"], false);
    assert!(v["witness_xi"].is_array());
}

#[test]
fn explicit_alpha_in_either_mode() {
    let out = hgf(&["h1", "--lambda", "1,1,1", "--alpha", "1/2;1/3;-5/6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["h1_rank"], 1);
    let out = hgf(&["h1", "--lambda", "1,1,1", "--mode", "integral", "--alpha", "1/2;1/3;-17/6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["h1_rank"], 1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["h1", "--lambda", "1,0"][..],
        &["h1", "--lambda", "1,1,1", "--alpha", "1/2;1/2;0"],
        &["h1", "--lambda", "1,1,1", "--alpha", "1/2;1/3"],
        &["hr", "--lambda", "1,1,1", "--r", "2"],
        &["hr", "--lambda", "1,1,1,1,1", "--r", "3", "--rank", "1"],
        &["schur", "--n", "3", "--r", "2"],
        &["verify-all", "--criterion", "12"],
        &["frobnicate"],
    ] {
        let out = hgf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn output_is_deterministic_and_appended() {
    let args = ["sample", "--lambda", "2,1,1", "--r", "1", "--seed", "9"];
    assert_eq!(hgf(&args).stdout, hgf(&args).stdout);
    let dir = std::env::temp_dir().join(format!("hgf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reports.jsonl");
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        let mut a = args.to_vec();
        a.extend(["--output", p]);
        assert_eq!(hgf(&a).status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
    let v: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["kind"], "sample");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schur_and_veronese_reports() {
    let v = json(&hgf(&["schur", "--n", "6", "--r", "2"]));
    assert_eq!(v["count"], 6);
    let out = hgf(&["veronese", "--lambda", "2,1", "--r", "2", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["image_generic"], true);
}

#[test]
fn suite_single_criterion() {
    let out = hgf(&["verify-all", "--criterion", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "verify_all");
    assert_eq!(v["criteria"][0]["passed"], true);
}
