use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::io::Write;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quintic-flow"));
    c.env_remove("QUINTIC_FLOW_THREADS");
    c
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// `[[re, im]; 5]` coefficients of the monic quintic with these real roots.
fn coefficients(roots: [f64; 5]) -> String {
    let mut c = vec![1.0];
    for r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i] += a;
            next[i + 1] -= a * r;
        }
        c = next;
    }
    let pairs: Vec<String> = c[1..].iter().map(|a| format!("[{a}, 0]")).collect();
    format!("{{\"coefficients\": [{}]}}", pairs.join(", "))
}

#[test]
fn solve_recovers_integer_roots() {
    let o = run(&["solve"], Some(&coefficients([1.0, 2.0, 3.0, 4.0, 6.0])));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let roots: Vec<(f64, f64)> = v["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    for want in [1.0, 2.0, 3.0, 4.0, 6.0] {
        assert!(roots.iter().any(|&(re, im)| (re - want).hypot(im) < 1e-6), "{want} in {roots:?}");
    }
    assert!(v["residuals"].as_array().unwrap().iter().all(|r| r.as_f64().unwrap() < 1e-8));
}

#[test]
fn solve_is_byte_identical_under_a_seed() {
    let input = r#"{"coefficients": [[0.3, 0.1], [-0.2, 0.5], [0.7, 0], [0, -0.4], [0.1, 0.1]]}"#;
    let a = run(&["--seed", "9", "solve"], Some(input));
    let b = run(&["--seed", "9", "solve"], Some(input));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn solve_reads_a_file_and_writes_out() {
    let input = tmp("roots.json");
    let out = tmp("roots.out.json");
    std::fs::write(&input, coefficients([-2.0, -1.0, 0.0, 1.0, 2.0])).unwrap();
    let o = run(&["solve", input.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["regularized"], true);
}

#[test]
fn solve_exit_codes() {
    let bad = run(&["solve"], Some("{not json"));
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed"));
    let short = run(&["solve"], Some(r#"{"coefficients": [[1, 0]]}"#));
    assert_eq!(short.status.code(), Some(1));
    let stuck = run(&["solve", "--max-iter", "1", "--max-restarts", "0"], Some(&coefficients([1.0, 2.0, 3.0, 4.0, 6.0])));
    assert_eq!(stuck.status.code(), Some(2));
    let quintuple = run(&["solve"], Some(&coefficients([2.0; 5])));
    assert_eq!(quintuple.status.code(), Some(3));
}

#[test]
fn verify_passes_and_filters() {
    let o = run(&["verify", "--filter", "group"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l.starts_with("PASS group.")), "{text}");
    let all = run(&["verify"], None);
    assert!(all.status.success(), "{}", stdout(&all));
    for g in ["group.", "invariants.", "equivariance.", "conformance.", "param.", "configuration."] {
        assert!(stdout(&all).contains(g), "{g}");
    }
}

#[test]
fn verify_detects_perturbed_phi2k() {
    let o = run(&["verify", "--filter", "param", "--perturb-phi2k", "1e-3"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL param.phi2"));
    let bad = run(&["verify", "--filter", "nope"], None);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn orbits_csv() {
    let o = run(&["orbits", "p5"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 6);
    assert!(rows[0].starts_with("descriptor,x1_re,x1_im"));
    assert!(rows[1..].iter().all(|r| r.starts_with("p5_") && r.split(',').count() == 11));
    let o = run(&["orbits", "q60"], None);
    assert_eq!(stdout(&o).lines().count(), 61);
    assert_eq!(run(&["orbits", "z7"], None).status.code(), Some(1));
}

#[test]
fn resolvent_prints_c2() {
    let o = run(&["resolvent", "--k1", "1", "--k2", "1", "--k3", "1"], None);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "C2 = -62.5"), "{}", stdout(&o));
    let o = run(&["resolvent", "--k1", "0.5,-1", "--k2", "-2,0.25", "--k3", "1"], None);
    assert!(o.status.success());
    assert_eq!(run(&["resolvent", "--k1", "1", "--k2", "0", "--k3", "1"], None).status.code(), Some(1));
}

#[test]
fn basins_writes_ppm_and_stats() {
    let ppm = tmp("dodeca.ppm");
    let json = tmp("dodeca.json");
    let o = run(
        &["basins", "--map", "dodeca11", "--out", ppm.to_str().unwrap(), "--stats", json.to_str().unwrap()],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let bytes = std::fs::read(&ppm).unwrap();
    let header = b"P6\n720 720\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 720 * 720 * 3);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 10);
    let total: f64 = v["fractions"].as_array().unwrap().iter().map(|f| f.as_f64().unwrap()).sum::<f64>()
        + v["black_fraction"].as_f64().unwrap();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn basins_plane_window_and_threads() {
    let ppm = tmp("plane.ppm");
    let o = bin()
        .env("QUINTIC_FLOW_THREADS", "2")
        .args(["basins", "--map", "f6_plane", "--window", "-0.5,0,1,1", "--res", "64", "--out", ppm.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read(&ppm).unwrap().starts_with(b"P6\n64 64\n"));
    let bad = run(&["basins", "--map", "nope", "--out", ppm.to_str().unwrap()], None);
    assert_eq!(bad.status.code(), Some(1));
    let o = bin()
        .env("QUINTIC_FLOW_THREADS", "zero")
        .args(["basins", "--map", "oct5_conic", "--res", "8", "--out", ppm.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert!(run(&["--help"], None).status.success());
}
