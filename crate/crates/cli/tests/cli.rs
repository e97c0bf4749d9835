use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn conelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(args)
        .env_remove("CONELAB_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

const CONFIG: &str = r#"
[groups.swap]
matrices = [[["2", "0"], ["0", "1/2"]], [[0, 1], [1, 0]]]

[functions.starts_a]
kind = "prefix"
word = "a"
"#;

fn write_config(dir: &TempDir) -> String {
    let p = path(dir, "conelab.toml");
    fs::write(&p, CONFIG).unwrap();
    p
}

#[test]
fn free_group_alternative_is_a_structural_violation() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "v.json");
    let o = conelab(&[
        "alternative", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a^-1,b^-1", "--window", "4", "--out", &out,
    ]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    let json = fs::read_to_string(&out).unwrap();
    assert!(json.contains("\"kind\": \"translate_violation\""));
    assert!(json.contains("\"level\": \"structural\""));
    assert_eq!(code(&conelab(&["verify", "--cert", &out])), 2);
    assert_eq!(code(&conelab(&["violation-verify", "--cert", &out, "--structural"])), 2);
}

#[test]
fn integer_alternative_is_a_witness() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "w.json");
    let o = conelab(&[
        "alternative", "--group", "Z", "--f", "half:Z^1:1", "--set", "e,x,x^-1", "--window", "10", "--out", &out,
    ]);
    assert_eq!(code(&o), 0);
    assert!(fs::read_to_string(&out).unwrap().contains("\"kind\": \"ratio_witness\""));
    assert_eq!(code(&conelab(&["verify", "--cert", &out])), 0);
}

#[test]
fn growth_table_ends_with_the_free_ball() {
    let o = conelab(&["growth", "--group", "F2", "--radius", "8"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("13121/4373"));
    assert!(text.contains("label: exponential-like"));
    assert!(text.trim_end().ends_with("|B_8| = 13121"));
}

#[test]
fn ball_lists_every_element_once() {
    let o = conelab(&["ball", "--group", "Z^2", "--radius", "2"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 14);
    assert!(text.trim_end().ends_with("|B_2| = 13"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let runs: Vec<Vec<String>> = vec![
        vec!["alternative", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a^-1,b^-1", "--window", "4"],
        vec!["ratio", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a^-1,b^-1", "--window", "3", "--epsilon", "1/2"],
        vec!["reiter", "--group", "Z", "--f", "const:1", "--set", "e,x,x^-1", "--window", "3", "--epsilon", "1/2"],
        vec!["jenkins", "--group", "Z^2", "--epsilon", "1/10", "--radius", "6"],
        vec!["moore-gap", "--group", "Z", "--f", "half:Z^1:1", "--translates", "x", "--window", "3"],
        vec!["freeness", "--group", "F2", "--pair", "a,b", "--depth", "6"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for mut args in runs {
        args.push("--json".into());
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = conelab(&args);
        let second = conelab(&args);
        assert!(matches!(code(&first), 0 | 2 | 3), "{args:?}");
        assert!(!first.stdout.is_empty());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn every_emitted_certificate_reverifies() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir);
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["alternative", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a,b", "--window", "4"], 0),
        (vec!["ratio", "--group", "Z", "--f", "half:Z^1:1", "--set", "e,x,x^-1", "--window", "4", "--epsilon", "1/10"], 0),
        (vec!["reiter", "--group", "Z", "--f", "const:1", "--set", "e,x,x^-1", "--window", "4", "--epsilon", "1/2"], 0),
        (vec!["jenkins", "--group", "Z", "--epsilon", "1/2", "--radius", "12"], 0),
        (vec!["moore-gap", "--group", "Z", "--f", "half:Z^1:1", "--translates", "x", "--window", "3"], 0),
        (
            vec![
                "moore-gap", "--config", &config, "--group", "F2", "--f", "custom:starts_a", "--translates",
                "a,b,a^-1,b^-1,a^2,a*b,b*a^-1,b^-1*a^-1", "--window", "3",
            ],
            2,
        ),
        (vec!["freeness", "--group", "LL", "--pair", "t,a*t", "--depth", "8"], 2),
        (vec!["alternative", "--group", "swap", "--config", &config, "--f", "const:1", "--set", "e,g1", "--window", "2"], 0),
    ];
    for (i, (args, expected)) in cases.into_iter().enumerate() {
        let out = path(&dir, &format!("c{i}.json"));
        let mut full = args.clone();
        full.extend(["--out", out.as_str()]);
        let o = conelab(&full);
        assert_eq!(code(&o), expected, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = conelab(&["verify", "--config", &config, "--cert", &out]);
        assert_eq!(code(&v), expected, "verify {args:?}: {}", stdout(&v));
    }
}

#[test]
fn trace_sidecar_records_the_lps() {
    let dir = TempDir::new().unwrap();
    let trace = path(&dir, "t.txt");
    let o = conelab(&[
        "alternative", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a^-1,b^-1", "--window", "2", "--trace", &trace,
    ]);
    assert_eq!(code(&o), 2);
    let text = fs::read_to_string(&trace).unwrap();
    assert!(text.starts_with("# membership"));
    assert!(text.contains("infeasible") || text.contains("Infeasible"));
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "w.json");
    conelab(&[
        "alternative", "--group", "Z", "--f", "half:Z^1:1", "--set", "e,x,x^-1", "--window", "10", "--out", &out,
    ]);
    let json = fs::read_to_string(&out).unwrap();
    let tampered = json.replacen("\"value\": \"1/1\"", "\"value\": \"1001/1000\"", 1);
    assert_ne!(json, tampered);
    fs::write(&out, tampered).unwrap();
    assert_eq!(code(&conelab(&["verify", "--cert", &out])), 3);
}

#[test]
fn transport_moves_witnesses_and_violations() {
    let dir = TempDir::new().unwrap();
    let w = path(&dir, "w.json");
    conelab(&[
        "alternative", "--group", "Z", "--f", "half:Z^1:1", "--set", "e,x,x^-1", "--window", "10", "--out", &w,
    ]);
    let moved = path(&dir, "m.json");
    let o = conelab(&["transport", "--cert", &w, "--target", "Z^2", "--embedding", "lattice:2:1", "--out", &moved]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let json = fs::read_to_string(&moved).unwrap();
    assert!(json.contains("transport_subgroup:lattice:2:1"));
    assert!(json.contains("zext:lattice:2:1:half:Z^1:1"));
    assert_eq!(code(&conelab(&["verify", "--cert", &moved])), 0);

    let v = path(&dir, "v.json");
    conelab(&["alternative", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a^-1,b^-1", "--window", "3", "--out", &v]);
    let mv = path(&dir, "mv.json");
    let o = conelab(&["transport", "--cert", &v, "--target", "prod(F2,Z)", "--embedding", "left", "--out", &mv]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&conelab(&["verify", "--cert", &mv])), 2);
    assert_eq!(code(&conelab(&["transport", "--cert", &v, "--target", "Z^2", "--embedding", "left"])), 1);
}

#[test]
fn abelian_scan_finds_no_free_pair() {
    let o = conelab(&["freeness", "--group", "Z^2", "--depth", "2"]);
    assert_eq!(code(&o), 3);
    let o = conelab(&["freeness", "--group", "Z", "--pair", "x,x^2", "--depth", "2"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("collision"));
    let o = conelab(&["freeness", "--group", "BS1_2", "--depth", "6", "--limit", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ratio_above_tolerance_is_inconclusive() {
    let o = conelab(&[
        "ratio", "--group", "F2", "--f", "semigroup:a,b", "--set", "e,a^-1,b^-1", "--window", "3", "--epsilon", "1/10",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("defect exceeds epsilon"));
}

#[test]
fn usage_errors_exit_one_with_positions() {
    let o = conelab(&["growth", "--group", "prod(F2,", "--radius", "3"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at"));
    assert_eq!(code(&conelab(&["alternative", "--group", "F2"])), 1);
    assert_eq!(code(&conelab(&["frobnicate"])), 1);
    let o = conelab(&["alternative", "--group", "F2", "--f", "semigroup:a,b", "--set", "a,e", "--window", "2"]);
    assert_eq!(code(&o), 1);
    assert!(!Path::new("nonexistent.json").exists());
    assert_eq!(code(&conelab(&["verify", "--cert", "nonexistent.json"])), 1);
}

#[test]
fn element_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(["growth", "--group", "F2", "--radius", "8"])
        .env("CONELAB_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("partial"));
    let o = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(["ball", "--group", "F2", "--radius", "8"])
        .env("CONELAB_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn groups_lists_catalog_and_config() {
    let dir = TempDir::new().unwrap();
    let config = write_config(&dir);
    let o = conelab(&["groups", "--config", &config]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for needle in ["Z^d", "F<k>", "H3", "LL", "BS1_<m>", "Dinf", "prod(", "mat:", "swap"] {
        assert!(text.contains(needle), "{needle}");
    }
}
