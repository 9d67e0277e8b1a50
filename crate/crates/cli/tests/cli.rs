use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfoundry"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify-all"));
}

#[test]
fn no_subcommand_is_a_usage_error() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["ks", "check", "--seed", "zzz"]).status.code(), Some(2));
}

#[test]
fn json_and_csv_conflict() {
    assert_eq!(run(&["--json", "--csv", "logic", "popper"]).status.code(), Some(2));
}

#[test]
fn ks_check_peres_is_uncolorable() {
    let out = run(&["ks", "check", "--set", "peres33"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], "qfoundry/1");
    assert_eq!(v["colorable"], false);
    assert_eq!(v["vectors"], 33);
}

#[test]
fn ks_check_corrupted_set_is_colorable() {
    let out = run(&["ks", "check", "--set", &fixture("peres33_corrupted.json")]);
    assert!(out.status.success());
    assert_eq!(json(&out)["colorable"], true);
}

#[test]
fn ks_count_after_removal() {
    let out = run(&["ks", "count", "--set", "peres33", "--without", "g_2^3,g_2^2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["colorings"], "48");
}

#[test]
fn ks_count_unknown_label_is_usage_error() {
    let out = run(&["ks", "count", "--without", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_dataset_exits_two() {
    let out = run(&["ks", "check", "--set", "peres34"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown dataset"));
}

#[test]
fn malformed_dataset_exits_two() {
    let out = run(&["ks", "check", "--set", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed dataset"));
    let out = run(&["verify-all", "--peres33", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chsh_example_angles() {
    let out = run(&["bell", "chsh", "--angles", "0,1.5707963,5.4977871,3.9269908"]);
    assert!(out.status.success());
    let value = json(&out)["value"].as_f64().unwrap();
    assert!((value - 2.8284271).abs() < 1e-7, "{value}");
}

#[test]
fn chsh_wrong_angle_count() {
    assert_eq!(run(&["bell", "chsh", "--angles", "0,1,2"]).status.code(), Some(2));
}

#[test]
fn lhv_mixture_within_local_bound() {
    let out = run(&["bell", "lhv", "--strategy", "mixture", "--shots", "20000"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["best_deterministic"], 2.0);
    assert_eq!(v["estimate"]["shots"], 20000);
}

#[test]
fn logical_bell_default_angles() {
    let out = run(&["bell", "logical"]);
    let v = json(&out);
    assert!((v["result"]["lhs"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["result"]["rhs"].as_f64().unwrap() - 0.375).abs() < 1e-12);
    assert_eq!(v["result"]["violated"], true);
}

#[test]
fn fwt_counts_and_bounds() {
    let v = json(&run(&["fwt", "counts"]));
    assert_eq!(v["counts"]["coefficient"], "4/55");
    assert_eq!(v["counts"]["with_three"], 16);
    let v = json(&run(&["fwt", "bounds", "--eps-s", "1e-7", "--eps-t", "1e-7"]));
    assert_eq!(v["bounds"]["satisfied"], true);
    let out = run(&["fwt", "bounds", "--eps-s", "2", "--eps-t", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fwt_counts_rejects_other_sets() {
    assert_eq!(run(&["fwt", "counts", "--set", "cabello18"]).status.code(), Some(1));
}

#[test]
fn mkc_simulate_with_program() {
    let program = fixture("program_qutrit.json");
    let args = [
        "mkc", "simulate", "--dim", "3", "--bases", "16", "--seed", "7", "--shots", "4000", "--program", &program,
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let stats = &v["stats"];
    assert_eq!(stats["shots"], 4000);
    let rows = stats["outcomes"].as_array().unwrap();
    let total: u64 = rows.iter().map(|r| r["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 4000);
    let exact: f64 = rows.iter().map(|r| r["exact"].as_f64().unwrap()).sum();
    assert!((exact - 1.0).abs() < 1e-9);
    let tv = stats["total_variation"].as_f64().unwrap();
    assert!((0.0..0.1).contains(&tv), "{tv}");
    assert_eq!(run(&args).stdout, out.stdout);
}

#[test]
fn mkc_program_dimension_mismatch() {
    let program = fixture("program_qutrit.json");
    let out = run(&["mkc", "simulate", "--dim", "2", "--program", &program]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed program"));
}

#[test]
fn logic_commands() {
    let v = json(&run(&["logic", "heyting", "--exhaustive"]));
    assert_eq!(v["report"]["elements"], 17);
    assert_eq!(v["report"]["failure_count"], 0);
    let v = json(&run(&["logic", "popper"]));
    assert_eq!(v["popper"]["distributive"], false);
}

#[test]
fn data_export_round_trips() {
    let dir = std::env::temp_dir().join(format!("qfoundry-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cabello18.json");
    let p = path.to_string_lossy().into_owned();
    assert!(run(&["data", "export", "--set", "cabello18", "--out", &p]).status.success());
    let out = run(&["ks", "check", "--set", &p]);
    assert_eq!(json(&out)["colorable"], false);
    let angles = json(&run(&["data", "export", "--set", "angles"]));
    assert!((angles["data"]["chsh_maximal"]["first_alt"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn csv_output_is_flat() {
    let out = run(&["--csv", "fwt", "counts"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.lines().any(|l| l == "counts.coefficient,4/55"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let run_with = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qfoundry"))
            .env("QFOUNDRY_THREADS", threads)
            .args(["mkc", "frequencies", "--shots", "5000"])
            .output()
            .unwrap()
    };
    let one = run_with("1");
    let four = run_with("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run_with("0").status.code(), Some(2));
}

#[test]
fn verify_all_detects_corrupted_dataset() {
    let out = run(&["verify-all", "--peres33", &fixture("peres33_corrupted.json")]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("ks_uncolorability"), "{stderr}");
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"ks_uncolorability"), "{failed:?}");
}
