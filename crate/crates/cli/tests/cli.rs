use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn cordalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cordalg"))
        .args(args)
        .env_remove("CORDALG_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn unknot_profile_ranks() {
    let v = json(&cordalg(&[
        "invariant",
        "--pd",
        "PD[]",
        "--groups",
        "cyc:2,cyc:3",
        "--primes",
        "5",
    ]));
    assert_eq!(v["knot"], "custom");
    let ranks: Vec<u64> = v["quotients"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|q| q["surjective"] == true)
        .map(|q| q["z_rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, vec![3, 4, 4]);
}

#[test]
fn catalog_and_gauss_agree_up_to_name() {
    let a = json(&cordalg(&[
        "invariant",
        "--catalog",
        "trefoil",
        "--groups",
        "sym:3",
        "--primes",
        "3",
    ]));
    let b = json(&cordalg(&[
        "invariant",
        "--gauss",
        "O1+ U2+ O3+ U1+ O2+ U3+",
        "--groups",
        "sym:3",
        "--primes",
        "3",
    ]));
    assert_eq!(a["knot"], "trefoil");
    assert_eq!(a["quotients"], b["quotients"]);
}

#[test]
fn input_arity_errors_exit_1() {
    assert_eq!(cordalg(&["invariant"]).status.code(), Some(1));
    assert_eq!(
        cordalg(&["invariant", "--pd", "PD[]", "--catalog", "unknot"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cordalg(&["invariant", "--catalog", "no-such-knot"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cordalg(&["invariant", "--pd", "X[1,2,3]"]).status.code(),
        Some(1)
    );
    assert_eq!(
        cordalg(&["invariant", "--catalog", "unknot", "--primes", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(cordalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_group_spec_exits_1() {
    let out = cordalg(&["invariant", "--catalog", "unknot", "--groups", "cyc:0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = [
        "invariant",
        "--catalog",
        "figure8",
        "--groups",
        "cyc:2,sym:3",
        "--primes",
        "3,5",
        "--cache",
        cache.to_str().unwrap(),
    ];
    let first = cordalg(&args);
    assert!(first.status.success());
    let files: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = cordalg(&args);
    assert_eq!(first.stdout, second.stdout);

    // a planted entry proves the second run read the cache
    let path = files[0].as_ref().unwrap().path();
    fs::write(&path, "{\"planted\":true}").unwrap();
    assert_eq!(cordalg(&args).stdout, b"{\"planted\":true}\n");
}

#[test]
fn cache_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cordalg"))
        .args([
            "invariant",
            "--catalog",
            "unknot",
            "--groups",
            "cyc:1",
            "--primes",
            "3",
        ])
        .env("CORDALG_CACHE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn json_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = cordalg(&[
        "invariant",
        "--catalog",
        "unknot",
        "--groups",
        "cyc:1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["framing"], 0);
}

#[test]
fn trefoil_sym3_quotients() {
    let v = json(&cordalg(&[
        "quotients",
        "--catalog",
        "trefoil",
        "--groups",
        "sym:3",
        "--class",
        "1",
    ]));
    let entry = &v[0];
    // six transposition colorings plus the three constant ones
    assert_eq!(entry["homs"].as_array().unwrap().len(), 9);
    let surjective: Vec<_> = entry["deduped"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["surjective"] == true)
        .collect();
    assert_eq!(surjective.len(), 1);
    assert_eq!(surjective[0]["orbit_size"], 6);
}

#[test]
fn present_prints_relators() {
    let out = cordalg(&["present", "--catalog", "trefoil", "--framing", "-2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("gens: 3;"));
    assert_eq!(text.matches("rel:").count(), 3);
    assert!(text.trim_end().ends_with("framing: -2"));
}

#[test]
fn verify_small_matrix_passes() {
    let out = cordalg(&[
        "verify",
        "--groups",
        "cyc:3",
        "--primes",
        "5",
        "--samples",
        "200",
        "--max-degree",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn split_sign_mutation_exits_2() {
    let out = cordalg(&[
        "verify",
        "--groups",
        "cyc:2",
        "--samples",
        "50",
        "--max-degree",
        "2",
        "--mutate",
        "split-sign",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL square-to-zero")));
}

#[test]
fn empty_groups_warn_and_pass() {
    let out = cordalg(&["verify", "--groups", ""]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
