use std::io::Write;
use std::process::Command;

use wittloc_cli::{run_args, EXIT_COMPUTE, EXIT_USAGE};

fn run(args: &[&str]) -> wittloc_cli::Outcome {
    run_args(std::iter::once("wittloc").chain(args.iter().copied()))
}

#[test]
fn projective_space_degree() {
    let out = run(&["localize", "--builder", "p", "2n", "--n", "1", "--field", "Q"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.lines().any(|l| l == "degree_zero: <1>"), "{}", out.stdout);
}

#[test]
fn odd_projective_space_is_zero() {
    let out = run(&["localize", "--builder", "p", "2n-1", "--n", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("degree_zero: 0"), "{}", out.stdout);
}

#[test]
fn grassmannian_json() {
    let out = run(&["localize", "--builder", "gr", "--m", "2", "--ambient", "6", "--n", "3", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["degree_zero"], "3<1>");
    assert_eq!(v["components"].as_array().unwrap().len(), 3);
}

#[test]
fn witt_hyperbolic_is_zero() {
    let out = run(&["witt", "<1>+<-1>", "--field", "Q"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "0\n"));
    let out = run(&["witt", "<1>+<1>+<1>+<1>", "--field", "Fp:3"]);
    assert_eq!(out.stdout, "0\n");
}

#[test]
fn lam_over_f5() {
    let out = run(&["verify", "lam", "--field", "F5", "--a", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("0 failed"));
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn suite_flag_form() {
    let out = run(&["verify", "--suite", "witt-fp", "--max-p", "7", "--max-rank", "3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.starts_with("pass")).count(), 3);
}

#[test]
fn ring_normal_forms() {
    let out = run(&["ring", "x^2*e + x", "--presentation", "bn"]);
    assert_eq!(out.stdout, "x + e\n");
    let out = run(&["ring", "x*e^2 + x", "--presentation", "bn"]);
    assert_eq!(out.stdout, "x - e^2\n");
    let out = run(&["ring", "y^2*e", "--presentation", "twisted", "--a", "-1"]);
    assert_eq!(out.stdout, "4*e\n");
}

#[test]
fn euler_of_symmetric_power() {
    let out = run(&["euler", "Sym(3)@1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("euler: 3*e^4\n"), "{}", out.stdout);
}

#[test]
fn parse_errors_exit_two() {
    let out = run(&["witt", "<1", "--field", "Q"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("byte"));
    let out = run(&["ring", "x*e + e2", "--presentation", "bn"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = run(&["frobnicate"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn compute_errors_exit_one() {
    let out = run(&["localize", "--builder", "p", "5", "--n", "1"]);
    assert_eq!(out.code, EXIT_COMPUTE);
    let out = run(&["witt", "<1>", "--field", "Fp:9"]);
    assert_eq!(out.code, EXIT_COMPUTE);
}

#[test]
fn problem_file() {
    let mut path = std::env::temp_dir();
    path.push(format!("wittloc-cli-test-{}.json", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(
        br#"{"group": {"kind": "N", "field": "Q"},
             "components": [{"residue": "twisted", "a": 3, "normal": "rho(1)"}]}"#,
    )
    .unwrap();
    let out = run(&["localize", "--problem", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 0, "{}", out.stderr);
    // With e inverted, the pushforward of 1 is <2> - <6>.
    let expected = run(&["witt", "<2> - <6>"]).stdout;
    assert!(out.stdout.contains(&format!("degree_zero: {expected}")), "{}", out.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "ring-laws", "--triples", "20", "--json"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wittloc");
    let ok = Command::new(bin).args(["witt", "3*<2> - 2"]).output().unwrap();
    assert!(ok.status.success());
    let bad = Command::new(bin).args(["witt", "<>"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
