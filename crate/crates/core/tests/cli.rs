use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_awpoly"))
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("awpoly-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str], input: &PathBuf, output: &PathBuf) -> (i32, Value, String) {
    let out: Output = bin()
        .args(args)
        .arg("--input")
        .arg(input)
        .arg("--output")
        .arg(output)
        .output()
        .unwrap();
    let report = fs::read_to_string(output).map(|t| serde_json::from_str(&t).unwrap()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, String::from_utf8_lossy(&out.stdout).into_owned())
}

const LINEAR: &str = r#"{"field": "rational", "grid": {"family": "Linear", "c1": "1", "c0": "0"},
    "r1": ["0", "1"], "r2": ["0", "0", "2"], "N": 3, "window": [1, 20]}"#;

const Q2: &str = r#"{"field": "rational", "grid": {"family": "QQuadratic", "c1": "1", "c2": "1", "c0": "0", "q": "2"},
    "r1": ["0", "1"], "r2": ["0", "0", "5/2"], "N": 8, "window": [1, 20]}"#;

fn samples(f: impl Fn(i64) -> i64, n: i64) -> String {
    let values: Vec<String> = (0..n).map(|s| format!("\"{}\"", f(s))).collect();
    format!("{{\"s0\": 0, \"values\": [{}]}}", values.join(", "))
}

#[test]
fn classify_exit_codes() {
    let d = Scratch::new("classify");
    let out = d.path("out.json");
    let (code, report, _) = run(&["classify"], &d.file("lin.json", &samples(|s| s, 11)), &out);
    assert_eq!(code, 0);
    assert_eq!(report["grid"]["family"], "Linear");
    let (code, report, _) = run(&["classify"], &d.file("cube.json", &samples(|s| s * s * s, 11)), &out);
    assert_eq!(code, 2);
    assert_eq!(report["classification"], "NonAW");
    let (code, report, stdout) = run(&["classify"], &d.file("short.json", &samples(|s| s, 3)), &out);
    assert_eq!(code, 1);
    assert!(report["error"].as_str().unwrap().contains("need ≥ 9 samples"), "{stdout}");
    let (code, _, _) = run(&["classify"], &d.file("junk.json", "{\"values\": "), &out);
    assert_eq!(code, 1);
}

#[test]
fn build_linear_and_q_systems() {
    let d = Scratch::new("build");
    let out = d.path("out.json");
    let (code, report, _) = run(&["build"], &d.file("lin.json", LINEAR), &out);
    assert_eq!(code, 0);
    assert_eq!(report["polys"][3], serde_json::json!(["0", "1/5", "0", "1"]));
    assert_eq!(report["max_residual"], 0.0);
    assert_eq!(report["certified_window"], serde_json::json!([1, 20]));
    let (code, report, _) = run(&["build"], &d.file("q2.json", Q2), &out);
    assert_eq!(code, 0);
    assert_eq!(report["max_residual"], 0.0);
    assert_eq!(report["lambda"].as_array().unwrap().len(), 9);
}

#[test]
fn spectrum_collision_is_a_degeneracy() {
    let d = Scratch::new("collision");
    let out = d.path("out.json");
    let sys = LINEAR.replace(r#""r2": ["0", "0", "2"]"#, r#""r2": ["0", "0", "-1"]"#);
    let (code, report, stdout) = run(&["build"], &d.file("coll.json", &sys), &out);
    assert_eq!(code, 3);
    assert_eq!(report["stage"], "spectrum");
    assert!(stdout.contains("spectrum degenerate"));
}

#[test]
fn verify_detects_perturbation() {
    let d = Scratch::new("verify");
    let out = d.path("out.json");
    let sys = LINEAR.replace(
        r#""N": 3"#,
        r#""N": 3, "perturb": [{"target": "C", "s": 9, "factor": "1000001/1000000"}]"#,
    );
    let (code, report, _) = run(&["verify"], &d.file("p.json", &sys), &out);
    assert_eq!(code, 4);
    let bad: Vec<i64> = report["per_s"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e[1].as_f64().unwrap() > 0.0)
        .map(|e| e[0].as_i64().unwrap())
        .collect();
    assert_eq!(bad, vec![9]);
    let (code, _, _) = run(&["verify"], &d.file("clean.json", LINEAR), &out);
    assert_eq!(code, 0);
}

#[test]
fn dualcheck_codes() {
    let d = Scratch::new("dual");
    let out = d.path("out.json");
    let lin = d.file("lin.json", LINEAR);
    // the restriction drops A(5) = 15, so only the duality identity survives
    let (code, report, _) = run(&["dualcheck", "-N", "4", "--window", "1:5"], &lin, &out);
    assert_eq!(code, 4);
    assert_eq!(report["duality"]["passed"], true);
    assert_eq!(report["orthogonality"]["passed"], false);
    assert_eq!(report["boundary_overrides"], serde_json::json!(["A(5) = 15 -> 0"]));
    let (code, _, _) = run(&["dualcheck", "-N", "0", "--window", "1:1"], &lin, &out);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["dualcheck", "-N", "4", "--window", "1:3"], &lin, &out);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["dualcheck", "-N", "30", "--window", "1:31"], &lin, &out);
    assert_eq!(code, 1);
}

#[test]
fn dualcheck_on_jacobi_files() {
    let d = Scratch::new("jacobi");
    let out = d.path("out.json");
    let (code, report, _) =
        run(&["dualcheck"], &d.file("j.json", r#"{"N": 1, "A": ["1"], "B": ["0", "0"], "C": ["1"]}"#), &out);
    assert_eq!(code, 0);
    assert_eq!(report["eigenvalues"], serde_json::json!(["-1", "1"]));
    // closing polynomial x^2 - 2 has no rational roots
    let (code, _, _) = run(&["dualcheck"], &d.file("irr.json", r#"{"N": 1, "A": ["1"], "B": ["0", "0"], "C": ["2"]}"#), &out);
    assert_eq!(code, 4);
    let (code, _, _) = run(&["dualcheck"], &d.file("shape.json", r#"{"N": 2, "A": ["1"], "B": ["0", "0"], "C": ["1"]}"#), &out);
    assert_eq!(code, 1);
}

#[test]
fn seeded_dualcheck_is_reproducible() {
    let d = Scratch::new("seeded");
    let go = |name: &str| {
        let path = d.path(name);
        let status = bin().args(["dualcheck", "-N", "5", "--seed", "42", "--output"]).arg(&path).status().unwrap();
        (status.code().unwrap(), fs::read(&path).unwrap())
    };
    let (c1, a) = go("a.json");
    let (c2, b) = go("b.json");
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn reports_are_byte_identical() {
    let d = Scratch::new("repeat");
    let input = d.file("q2.json", Q2);
    let (a, b) = (d.path("a.json"), d.path("b.json"));
    run(&["synth"], &input, &a);
    run(&["synth"], &input, &b);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn float_field_and_spectrum() {
    let d = Scratch::new("float");
    let out = d.path("out.json");
    let (code, report, _) = run(&["build", "--field", "float"], &d.file("lin.json", LINEAR), &out);
    assert_eq!(code, 0);
    assert!(report["max_residual"].as_f64().unwrap() < 1e-12);
    let spec = d.file("sp.json", r#"{"xi": "-5/2", "omega1": "1", "omega2": "5/2", "n_max": 4}"#);
    let (code, report, _) = run(&["spectrum"], &spec, &out);
    assert_eq!(code, 0);
    assert_eq!(report["regime"], "q-type");
    assert_eq!(report["constants"]["q"], "2");
    let bad = d.file("bad.json", r#"{"xi": "-2", "omega1": "1", "omega2": "-1", "n_max": 4}"#);
    assert_eq!(run(&["spectrum"], &bad, &out).0, 3);
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(bin().arg("frobnicate").status().unwrap().code(), Some(1));
    assert_eq!(bin().args(["build", "--window", "5:1"]).status().unwrap().code(), Some(1));
    assert_eq!(bin().args(["build", "--input", "/nonexistent/x.json"]).output().unwrap().status.code(), Some(1));
}
