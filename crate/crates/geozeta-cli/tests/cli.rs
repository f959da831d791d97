use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geozeta")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn gen(dir: &Path, xmax: &str, name: &str) -> std::path::PathBuf {
    let out = dir.join(name);
    let o = run(&["gen", "--xmax", xmax, "--seed", "7", "--constant", "2", "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn gen_then_count_matches_floor_of_two_li() {
    let d = tempfile::tempdir().unwrap();
    let sp = gen(d.path(), "100", "s.jsonl");
    let csv_path = d.path().join("c.csv");
    let o = run(&["count", "--spectrum", p(&sp), "--grid", "2:100:25", "--out", p(&csv_path)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(rd.headers().unwrap().iter().collect::<Vec<_>>(), ["x", "psi", "psi_tilde", "psi1", "pi", "pi_tilde", "pi1", "li2"]);
    let mut rows = 0;
    for rec in rd.records() {
        let rec = rec.unwrap();
        let pi: f64 = rec[4].parse().unwrap();
        let li2: f64 = rec[7].parse().unwrap();
        assert_eq!(pi, li2.floor().max(0.0), "x = {}", &rec[0]);
        rows += 1;
    }
    assert_eq!(rows, 25);
}

#[test]
fn zeta_factorization_check() {
    let d = tempfile::tempdir().unwrap();
    let sp = gen(d.path(), "5000", "s.jsonl");
    let out = d.path().join("z.csv");
    let o = run(&[
        "zeta", "--spectrum", p(&sp), "--sigma", "tilde", "--grid", "2:4:0.5,3", "--lmax", "30", "--out", p(&out),
        "--check-factorization",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    let line = stdout.lines().find(|l| l.starts_with("max |residual| = ")).unwrap();
    let v: f64 = line.trim_start_matches("max |residual| = ").parse().unwrap();
    assert!(v < 1e-8);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("s_re,s_im,logZ_re,logZ_im,residual_abs\n"));
    assert_eq!(text.lines().count(), 6);

    let o = run(&["zeta", "--spectrum", p(&sp), "--kind", "ruelle", "--sigma", "wedge-nbar:1", "--grid", "3:3:1", "--lmax", "30", "--out", p(&out)]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("s_re,s_im,logR_re,logR_im\n"));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let d = tempfile::tempdir().unwrap();
    let a = gen(d.path(), "3000", "a.jsonl");
    let b = gen(d.path(), "3000", "b.jsonl");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let mut outs = Vec::new();
    for name in ["z1.csv", "z2.csv"] {
        let out = d.path().join(name);
        let o = run(&["zeta", "--spectrum", p(&a), "--grid", "2:3:0.5", "--lmax", "20", "--out", p(&out)]);
        assert!(o.status.success());
        outs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn fit_reports_json() {
    let d = tempfile::tempdir().unwrap();
    let sp = gen(d.path(), "100000", "s.jsonl");
    let table = d.path().join("c.csv");
    assert!(run(&["count", "--spectrum", p(&sp), "--grid", "1000:100000:20", "--out", p(&table)]).status.success());
    let o = run(&["fit", "--table", p(&table), "--model", "linear"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["model"], "x");
    let c = v["c"].as_f64().unwrap();
    assert!((1.9..2.1).contains(&c), "{c}");
    let o = run(&["fit", "--table", p(&table), "--model", "li", "--column", "pi"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["c"].as_f64().unwrap() - 2.0).abs() < 0.01);
}

#[test]
fn verify_reports_every_item() {
    let o = run(&["verify"]);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS ") || l.starts_with("FAIL ")).count(), 7);
    // the sigma-tilde double sum evaluates to 18, so this item fails and the exit code is 2
    assert!(stdout.contains("FAIL vanishing order, sigma-tilde: 18"));
    assert_eq!(stdout.matches("FAIL").count(), 1);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_one_with_a_message() {
    let d = tempfile::tempdir().unwrap();
    let missing = d.path().join("nope.jsonl");
    let out = d.path().join("o.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["gen", "--xmax", "100", "--bogus", "1", "--out", p(&out)],
        vec!["count", "--spectrum", p(&missing), "--grid", "2:100:5", "--out", p(&out)],
        vec!["gen", "--xmax", "100", "--angles", "fixed:1/3", "--out", p(&out)],
        vec!["gen", "--xmax", "100", "--out", "/nonexistent/dir/s.jsonl"],
        vec!["gen", "--xmax", "1.5", "--out", p(&out)],
    ];
    for args in &cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let sp = gen(d.path(), "100", "s.jsonl");
    let o = run(&["count", "--spectrum", p(&sp), "--window", "0,1,0", "--grid", "2:100:5", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("--window"));
    let o = run(&["zeta", "--spectrum", p(&sp), "--grid", "0.5:2:0.5", "--lmax", "10", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(1));
}
