//! Drives the built binary end to end.

use std::process::{Command, Output};

use num_complex::Complex64;
use singknot::braid::parse_braid;
use singknot::esystem::{family, Family};
use singknot::invariant::{delta, DeltaParams};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singknot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn unknot_is_one() {
    let o = run(&["delta", "--braid", "", "--d", "2", "--solution", "roots-of-unity"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1");
}

#[test]
fn singular_unknot_text_matches_library() {
    let o = run(&["delta", "--braid", "t1", "--d", "3", "--solution", "uniform", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["half_lambda"], 0);
    assert_eq!(v["n"], 2);
    assert_eq!(v["exponent"], 1);
    // (ζ − z)/z with ζ = 1/2
    assert_eq!(v["value"], "-1 + 1/2*z^-1");
    assert!(v.get("numeric").is_none());
}

#[test]
fn json_numeric_matches_exact_evaluation() {
    let (u0, z0) = (Complex64::new(0.7, 0.2), Complex64::new(1.3, -0.4));
    for (w, d, sel) in [("s1^3 t2 s2^-1", 3, "uniform"), ("t1 s1^-2", 2, "roots-of-unity"), ("s1 s2 t1 s2^-1", 4, "subset:0,2")] {
        let o = run(&["delta", "--braid", w, "--d", &d.to_string(), "--solution", sel, "--json", "--numeric", "u=0.7+0.2i,z=1.3-0.4i"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let kind = match sel {
            "uniform" => Family::Uniform,
            "roots-of-unity" => Family::RootsOfUnity,
            _ => Family::Subset(vec![0, 2]),
        };
        let p = DeltaParams::new(&family(&kind, d).unwrap()).unwrap();
        let exact = delta(&parse_braid(w, None).unwrap(), &p).unwrap();
        let e = exact.f().eval(u0, z0, d).unwrap();
        let got = Complex64::new(v["numeric"]["re"].as_f64().unwrap(), v["numeric"]["im"].as_f64().unwrap());
        assert!((got - e).norm() < 1e-9, "{w}: {got} vs {e}");
        assert_eq!(v["half_lambda"].as_u64().unwrap() as u8, exact.half());
    }
}

#[test]
fn trace_subcommand_accepts_any_parameters() {
    let o = run(&["trace", "--braid", "t1", "--d", "2", "--solution", "roots-of-unity"]);
    assert_eq!(stdout(&o), "-z + 1");
    let o = run(&["trace", "--braid", "s1", "--d", "3", "--solution", "custom:1/3,1/3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "z");
}

#[test]
fn esolve_lists_the_uniform_solution() {
    let o = run(&["esolve", "--d", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("(-0.5, -0.5)")).expect("uniform solution listed");
    let residual: f64 = line.rsplit("residual = ").next().unwrap().parse().unwrap();
    assert!(residual < 1e-10);

    let o = run(&["esolve", "--d", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|s| s["residual"].as_f64().unwrap() < 1e-10));
}

#[test]
fn verify_suites_exit_codes() {
    let ok = run(&["verify", "--suite", "skein", "--d", "2", "--solution", "uniform", "--samples", "10"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("skein relation"));
    let rel = run(&["verify", "--suite", "relations", "--d", "2"]);
    assert_eq!(rel.status.code(), Some(0));
    let bad = run(&["verify", "--suite", "markov", "--d", "3", "--solution", "custom:1/3,1/3", "--samples", "10"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("fail"));
}

#[test]
fn error_exit_codes() {
    let o = run(&["delta", "--braid", "s1 t1^-1", "--d", "2", "--solution", "uniform"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 3"));
    let o = run(&["delta", "--braid", "t1", "--d", "3", "--solution", "uniform", "--numeric", "u=1,z=0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["delta", "--braid", "s1", "--d", "3", "--solution", "custom:1+i,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--suite", "nope", "--d", "2"]);
    assert_eq!(o.status.code(), Some(2));
}
