use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn pslab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pslab"))
        .args(args)
        .current_dir(cwd)
        .env_remove("PSLAB_CACHE_DIR")
        .output()
        .expect("spawn pslab")
}

fn run_ok(args: &[&str], cwd: &Path) {
    let out = pslab(args, cwd);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn parse_csv(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn ap_count_matches_oracle_fixture() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["ap-count", "--k", "3", "--x", "100", "--weight", "lambda", "--out", "ap.csv"], dir.path());
    let got = parse_csv(&std::fs::read_to_string(dir.path().join("ap.csv")).unwrap());
    let want = parse_csv(&std::fs::read_to_string(fixture("ap_count_k3_x100_lambda.csv")).unwrap());
    assert_eq!(got[0], want[0]);
    assert_eq!(got.len(), 2);
    for (g, w) in got[1].iter().zip(&want[1]) {
        match (g.parse::<f64>(), w.parse::<f64>()) {
            (Ok(a), Ok(b)) => assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{a} vs {b}"),
            _ => assert_eq!(g, w),
        }
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(pslab(&["ps-count", "--no-such-flag", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(pslab(&["no-such-command"], dir.path()).status.code(), Some(2));
    assert_eq!(pslab(&["sawtooth-check", "--gamma", "1/2"], dir.path()).status.code(), Some(2));
    assert_eq!(pslab(&["ps-count", "--gamma", "3/2"], dir.path()).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.json"), r#"{"gama": "1/2"}"#).unwrap();
    assert_eq!(pslab(&["ps-count", "--config", "bad.json"], dir.path()).status.code(), Some(2));
    // Sieving beyond 2^50 is a capacity error.
    assert_eq!(
        pslab(&["ap-count", "--x", "2000000000000000", "--weight", "lambda"], dir.path()).status.code(),
        Some(4)
    );
    // ν halved below the majorization constant is an assertion failure.
    assert_eq!(pslab(&["majorant-check", "--x", "1009", "--c", "2"], dir.path()).status.code(), Some(5));
    assert_eq!(pslab(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn manifest_reruns_reproduce_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(
        &["lff-average", "--x", "1009", "--r", "5", "--samples", "20000", "--seed", "11", "--out", "a.csv"],
        dir.path(),
    );
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "lff-average");
    assert_eq!(manifest["gamma_path"], "exact");
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    run_ok(&["lff-average", "--config", "a.manifest.json", "--out", "b.csv"], dir.path());
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn decimal_gamma_takes_the_certified_path() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["ps-count", "--gamma", "0.9", "--x", "1e5", "--out", "d.csv"], dir.path());
    run_ok(&["ps-count", "--gamma", "9/10", "--x", "1e5", "--out", "e.csv"], dir.path());
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("d.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["gamma_path"], "certified");
    assert_eq!(
        std::fs::read(dir.path().join("d.csv")).unwrap(),
        std::fs::read(dir.path().join("e.csv")).unwrap()
    );
}

#[test]
fn sieve_cache_is_used_and_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |out: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_pslab"))
            .args(["ps-count", "--x", "2e5", "--out", out])
            .current_dir(dir.path())
            .env("PSLAB_CACHE_DIR", &cache)
            .output()
            .unwrap();
        assert!(o.status.success());
    };
    run("c1.csv");
    let files: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(files.len(), 1);
    run("c2.csv");
    run_ok(&["ps-count", "--x", "2e5", "--out", "c3.csv"], dir.path());
    let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();
    assert_eq!(read("c1.csv"), read("c2.csv"));
    assert_eq!(read("c1.csv"), read("c3.csv"));
}
