//! Command-line front end. Every command reads one JSON file, writes one
//! JSON report and prints a one-line summary; the exit code is a function of
//! the report alone.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::awoperator::{
    build_eigenpolys, magnus_check, verify_coefficients, verify_system, Coefficient, DifferenceSystem, Perturbation,
    VerifyReport,
};
use crate::duality::{dual_check, jacobi_check, random, Check, DualityReport};
use crate::error::{Error, Result};
use crate::grid::{classify_grid, Classification};
use crate::io::{self, FaultTarget, SpectrumInput, SystemFile};
use crate::scalar::{Rational, Scalar, Tol};
use crate::spectral::{omega_closed_form, Regime};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NON_AW: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Parser)]
#[command(name = "awpoly", version, about = "Askey-Wilson grids, difference operators and duality checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Report destination; printed to stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Arithmetic; defaults to the file's "field", else rational.
    #[arg(long, global = true, value_enum)]
    pub field: Option<Field>,

    /// Relative tolerance for float mode.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Node window as LO:HI.
    #[arg(long, global = true, value_parser = parse_window)]
    pub window: Option<(i64, i64)>,

    /// Largest degree / size of the finite system.
    #[arg(short = 'N', global = true)]
    pub n: Option<usize>,

    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Identify the grid family of a sample file.
    Classify,
    /// Synthesize A, B, C from a system file.
    Synth,
    /// Build and verify the eigenpolynomials.
    Build,
    /// Verify the eigen-equation, applying any perturbations in the file.
    Verify,
    /// Finite duality suite (system file, Jacobi file, or a seeded random system).
    Dualcheck,
    /// Tabulate omega and lambda.
    Spectrum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Rational,
    Float,
}

fn parse_window(text: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = text.split_once(':').ok_or("expected LO:HI")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if hi < lo {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Report, summary line and exit code of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub summary: String,
    pub report: Value,
}

impl Outcome {
    fn new(code: i32, summary: impl Into<String>, report: Value) -> Self {
        Outcome { code, summary: summary.into(), report }
    }
}

/// Exit code and pipeline stage of an error.
pub fn classify_error(e: &Error) -> (i32, &'static str) {
    use Error::*;
    match e {
        ParseScalar(_) | Input(_) | Shape(_) => (EXIT_INPUT, "input"),
        TooFewSamples { .. } | InvalidSeed(_) | NotOnCurve(_) => (EXIT_INPUT, "input"),
        InvalidGrid(_) | UnrepresentableModulus { .. } => (EXIT_INPUT, "grid"),
        WindowTooSmall { .. } => (EXIT_INPUT, "window"),
        DuplicateAbscissa(..) | FullRank => (EXIT_DEGENERATE, "linear algebra"),
        Degenerate(..) | DistinctnessViolated { .. } | StepDegenerate { .. } => (EXIT_DEGENERATE, "grid"),
        NotConic { .. } | NotBiquadratic => (EXIT_NON_AW, "grid"),
        SpectrumDegenerate { .. } => (EXIT_DEGENERATE, "spectrum"),
        DegreeCollapse { .. } | IrreducibilityViolated => (EXIT_DEGENERATE, "ladder"),
        DegenerateWindow | WindowDegenerate { .. } => (EXIT_DEGENERATE, "window"),
        ZeroFactor { .. } | NullNorm { .. } => (EXIT_DEGENERATE, "duality"),
        NotPolynomial { .. } | NotTriangular { .. } | DiagonalMismatch { .. } => (EXIT_VERIFY, "operator"),
        NotEigenvalue { .. } | UncertifiedSpectrum(_) => (EXIT_VERIFY, "duality"),
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let (code, stage) = classify_error(e);
    let report = json!({ "error": e.to_string(), "stage": stage });
    Outcome::new(code, format!("error [{stage}]: {e}"), report)
}

impl Cli {
    fn read_input(&self) -> Result<Value> {
        let path = self.input.as_ref().ok_or_else(|| Error::Input("--input is required".into()))?;
        let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        io::parse_json(&text)
    }

    fn tol(&self, file: Option<Tol>) -> Result<Tol> {
        match self.tol {
            Some(t) if !(t > 0.0) => Err(Error::Input("--tol must be positive".into())),
            Some(t) => Ok(Tol::new(t)),
            None => Ok(file.unwrap_or_default()),
        }
    }

    /// Runs the command and returns its outcome without touching stdout.
    pub fn execute(&self) -> Outcome {
        let input = match self.command {
            Command::Dualcheck if self.input.is_none() => None,
            _ => match self.read_input() {
                Ok(v) => Some(v),
                Err(e) => return error_outcome(&e),
            },
        };
        let field = match (self.field, input.as_ref().map(io::field_of)) {
            (Some(f), _) => f,
            (None, Some(Err(e))) => return error_outcome(&e),
            (None, Some(Ok(Some(name)))) if name == "float" => Field::Float,
            _ => Field::Rational,
        };
        let result = match field {
            Field::Rational => self.dispatch::<Rational>(input.as_ref()),
            Field::Float => self.dispatch::<f64>(input.as_ref()),
        };
        result.unwrap_or_else(|e| error_outcome(&e))
    }

    fn dispatch<S: Scalar>(&self, input: Option<&Value>) -> Result<Outcome> {
        match (self.command, input) {
            (Command::Classify, Some(v)) => self.classify::<S>(v),
            (Command::Synth, Some(v)) => self.synth::<S>(v),
            (Command::Build, Some(v)) => self.build::<S>(v, false),
            (Command::Verify, Some(v)) => self.build::<S>(v, true),
            (Command::Dualcheck, v) => self.dualcheck::<S>(v),
            (Command::Spectrum, Some(v)) => self.spectrum::<S>(v),
            (_, None) => Err(Error::Input("--input is required".into())),
        }
    }

    fn classify<S: Scalar>(&self, v: &Value) -> Result<Outcome> {
        let samples = io::samples_from_json::<S>(v)?;
        Ok(match classify_grid(&samples, self.tol(None)?)? {
            Classification::Aw(grid) => {
                let summary = format!("AW grid: {} ({grid})", grid.family());
                Outcome::new(EXIT_PASS, summary, json!({ "classification": "AW", "grid": io::grid_to_json(&grid) }))
            }
            Classification::NonAw(r) => {
                let mut m = Map::new();
                m.insert("classification".into(), json!("NonAW"));
                m.insert("stage".into(), json!(r.stage.name()));
                m.insert("conic_residual".into(), json!(r.conic_residual));
                m.insert(
                    "linear_relation".into(),
                    r.linear_relation.map_or(Value::Null, |a| io::scalars_to_json(&a)),
                );
                m.insert(
                    "biquadratic".into(),
                    r.biquadratic.map_or(Value::Null, |c| io::scalars_to_json(&c.alpha)),
                );
                let summary = format!("not an AW grid (failed at the {} stage)", r.stage.name());
                Outcome::new(EXIT_NON_AW, summary, Value::Object(m))
            }
        })
    }

    fn load_system<S: Scalar>(&self, v: &Value) -> Result<(SystemFile<S>, DifferenceSystem<S>)> {
        let mut file = SystemFile::<S>::from_json(v)?;
        if let Some(n) = self.n {
            file.n = n;
        }
        if let Some(w) = self.window {
            file.window = w;
        }
        let tol = self.tol(file.tol)?;
        let sys =
            DifferenceSystem::synthesize(file.grid.clone(), file.r1.clone(), file.r2.clone(), file.n, file.window, tol)?;
        Ok((file, sys))
    }

    fn synth<S: Scalar>(&self, v: &Value) -> Result<Outcome> {
        let (file, sys) = self.load_system::<S>(v)?;
        let mut rows = Vec::new();
        for s in sys.admissible_nodes(sys.certified) {
            let c = sys.coefficients(s)?;
            rows.push(json!({
                "s": s,
                "A": io::scalar_to_json(&c.a),
                "B": io::scalar_to_json(&c.b),
                "C": io::scalar_to_json(&c.c),
            }));
        }
        let ratio = |(num, den): &(crate::Poly<S>, crate::Poly<S>)| json!([io::poly_to_json(num), io::poly_to_json(den)]);
        let report = json!({
            "certified_window": [sys.certified.0, sys.certified.1],
            "skipped_nodes": sys.skipped,
            "conic": {
                "xi": io::scalar_to_json(&sys.conic.xi),
                "eta": io::scalar_to_json(&sys.conic.eta),
                "zeta": io::scalar_to_json(&sys.conic.zeta),
            },
            "spectrum": spectrum_json(&sys.spectrum.regime, &sys.spectrum.omega, &sys.spectrum.lambda),
            "coefficients": rows,
            "v": ratio(&sys.uv.v),
            "u": ratio(&sys.uv.u),
        });
        let summary = format!(
            "synthesized on {} with certified window [{}, {}], lambda regime {}",
            file.grid, sys.certified.0, sys.certified.1, sys.spectrum.regime.name()
        );
        Ok(Outcome::new(EXIT_PASS, summary, report))
    }

    fn build<S: Scalar>(&self, v: &Value, perturbed: bool) -> Result<Outcome> {
        let (file, sys) = self.load_system::<S>(v)?;
        let polys = build_eigenpolys(&sys, file.n)?;
        let mut checked = sys.clone();
        if perturbed {
            for f in &file.faults {
                if let FaultTarget::Coefficient(target) = f.target {
                    checked.perturbations.push(Perturbation {
                        target,
                        s: f.s,
                        factor: f.factor.clone(),
                        shift: f.shift.clone(),
                    });
                }
            }
        }
        let report = verify_system(&checked, &polys, file.window);
        let coeffs = verify_coefficients(&checked, &polys);
        let mut passed = report.passed && coeffs.as_ref().is_ok_and(|c| c.passed);
        let mut out = verify_json(&report);
        let obj = out.as_object_mut().expect("object");
        obj.insert(
            "coefficient_check".into(),
            match &coeffs {
                Ok(c) => json!({ "passed": c.passed, "max_residual": finite(c.max_residual), "per_n": c.per_n.iter().map(|x| finite(*x)).collect::<Vec<_>>() }),
                Err(e) => json!({ "passed": false, "error": e.to_string() }),
            },
        );
        obj.insert("polys".into(), polys.polys.iter().map(io::poly_to_json).collect());
        obj.insert("lambda".into(), io::scalars_to_json(&polys.lambda));
        if perturbed {
            let mut magnus = Vec::new();
            if sys.grid.companion(sys.certified.0).is_some() {
                for (n, p) in polys.polys.iter().enumerate() {
                    match magnus_check(p, &sys.grid, sys.certified, sys.tol) {
                        Ok(m) => {
                            passed &= m.passed;
                            magnus.push(json!({ "n": n, "passed": m.passed, "max_residual": m.max_residual }));
                        }
                        Err(e) => magnus.push(json!({ "n": n, "skipped": e.to_string() })),
                    }
                }
            }
            obj.insert("magnus".into(), Value::Array(magnus));
        }
        obj.insert("passed".into(), json!(passed));
        let summary = format!(
            "{} P_0..P_{} on [{}, {}]: max residual {:e}",
            if passed { "PASS" } else { "FAIL" },
            file.n,
            report.checked_window.map_or(sys.certified.0, |w| w.0),
            report.checked_window.map_or(sys.certified.1, |w| w.1),
            report.max_relative
        );
        Ok(Outcome::new(if passed { EXIT_PASS } else { EXIT_VERIFY }, summary, out))
    }

    fn dualcheck<S: Scalar>(&self, input: Option<&Value>) -> Result<Outcome> {
        let report = match input {
            None => {
                let n = self.n.unwrap_or(4);
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let (jac, _) = random::inverse_jacobi::<S, _>(&mut rng, n);
                let r = jacobi_check(&jac, &[], self.tol(None)?)?;
                let mut extra = duality_json(&r);
                extra.as_object_mut().expect("object").insert("system".into(), io::jacobi_to_json(&jac));
                return Ok(duality_outcome(&r, extra));
            }
            Some(v) if v.get("A").is_some() => {
                let jac = io::jacobi_from_json::<S>(v)?;
                jacobi_check(&jac, &[], self.tol(None)?)?
            }
            Some(v) => {
                let mut file = SystemFile::<S>::from_json(v)?;
                let tol = self.tol(file.tol)?;
                let (lo, n) = match (self.window, self.n) {
                    (Some((lo, hi)), Some(n)) if (hi - lo) as usize != n => {
                        return Err(Error::Input(format!("window {lo}:{hi} does not hold N + 1 = {} nodes", n + 1)))
                    }
                    (Some((lo, hi)), _) => (Some(lo), (hi - lo) as usize),
                    (None, n) => (None, n.unwrap_or(file.n)),
                };
                file.n = n;
                let mut sys = DifferenceSystem::synthesize(
                    file.grid.clone(),
                    file.r1.clone(),
                    file.r2.clone(),
                    n,
                    file.window,
                    tol,
                )?;
                let lo = lo.unwrap_or(sys.certified.0);
                let hi = lo + n as i64;
                if lo < sys.certified.0 || hi > sys.certified.1 {
                    return Err(Error::WindowTooSmall {
                        need: n + 1,
                        got: (sys.certified.1.min(hi) - sys.certified.0.max(lo) + 1).max(0) as usize,
                    });
                }
                let mut weight_faults = Vec::new();
                for f in &file.faults {
                    match f.target {
                        FaultTarget::Weight => {
                            let idx = usize::try_from(f.s - lo)
                                .map_err(|_| Error::Input(format!("weight fault at s = {} outside the window", f.s)))?;
                            weight_faults.push((idx, f.factor.clone()));
                        }
                        FaultTarget::Coefficient(t @ (Coefficient::A | Coefficient::C)) => {
                            sys.perturbations.push(Perturbation {
                                target: t,
                                s: f.s,
                                factor: f.factor.clone(),
                                shift: f.shift.clone(),
                            });
                        }
                    }
                }
                dual_check(&sys, lo, n, &weight_faults)?
            }
        };
        let extra = duality_json(&report);
        Ok(duality_outcome(&report, extra))
    }

    fn spectrum<S: Scalar>(&self, v: &Value) -> Result<Outcome> {
        let inp = SpectrumInput::<S>::from_json(v)?;
        let n_max = self.n.unwrap_or(inp.n_max);
        let seq = omega_closed_form(inp.xi.clone(), inp.omega1, inp.omega2, n_max, self.tol(None)?)?;
        let mut report = spectrum_json(&seq.regime, &seq.omega, &seq.lambda);
        report.as_object_mut().expect("object").insert("xi".into(), io::scalar_to_json(&seq.xi));
        let summary = format!("{} regime, lambda_0..lambda_{n_max} distinct", seq.regime.name());
        Ok(Outcome::new(EXIT_PASS, summary, report))
    }
}

fn spectrum_json<S: Scalar>(regime: &Regime<S>, omega: &[S], lambda: &[S]) -> Value {
    let constants = match regime {
        Regime::QType { q, g1, g2 } => json!({ "q": io::scalar_to_json(q), "g1": io::scalar_to_json(g1), "g2": io::scalar_to_json(g2) }),
        Regime::Linear { g1, g0 } | Regime::Alternating { g1, g0 } => {
            json!({ "g1": io::scalar_to_json(g1), "g0": io::scalar_to_json(g0) })
        }
    };
    json!({
        "regime": regime.name(),
        "constants": constants,
        "omega": io::scalars_to_json(omega),
        "lambda": io::scalars_to_json(lambda),
    })
}

fn verify_json(r: &VerifyReport) -> Value {
    json!({
        "max_residual": r.max_relative,
        "max_abs_residual": r.max_residual,
        "nonzero_residuals": r.nonzero,
        "per_n": r.per_n,
        "per_s": r.per_s.iter().map(|(s, x)| json!([s, x])).collect::<Vec<_>>(),
        "ladder_residual": r.ladder_residual,
        "balance_residual": r.balance_residual,
        "skipped_nodes": r.skipped_nodes,
        "certified_window": [r.certified_window.0, r.certified_window.1],
        "checked_window": r.checked_window.map(|(a, b)| json!([a, b])),
    })
}

/// Infinity is not representable in JSON.
fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn check_json(c: &Check) -> Value {
    json!({ "passed": c.passed, "max_residual": finite(c.max_residual), "failures": c.failures, "note": c.note })
}

fn duality_json<S: Scalar>(r: &DualityReport<S>) -> Value {
    let mut m = Map::new();
    m.insert("N".into(), json!(r.n));
    m.insert("eigenvalues".into(), io::scalars_to_json(&r.eigenvalues));
    m.insert("weights".into(), io::scalars_to_json(&r.weights));
    m.insert(
        "boundary_overrides".into(),
        r.overrides
            .iter()
            .map(|o| {
                let name = if o.coefficient == Coefficient::A { "A" } else { "C" };
                json!(format!("{name}({}) = {} -> 0", o.s, o.original.format()))
            })
            .collect(),
    );
    for (name, c) in r.checks() {
        m.insert(name.into(), check_json(c));
    }
    m.insert("passed".into(), json!(r.passed()));
    Value::Object(m)
}

fn duality_outcome<S: Scalar>(r: &DualityReport<S>, report: Value) -> Outcome {
    let failed: Vec<&str> = r.checks().iter().skip(1).filter(|(_, c)| !c.passed).map(|(n, _)| *n).collect();
    let summary = if failed.is_empty() {
        format!("PASS duality suite, N = {}", r.n)
    } else {
        format!("FAIL duality suite, N = {}: {}", r.n, failed.join(", "))
    };
    Outcome::new(if r.passed() { EXIT_PASS } else { EXIT_VERIFY }, summary, report)
}

/// Parses arguments, runs, prints the summary (and the report unless
/// `--output` is given) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let out = cli.execute();
    let text = io::render(&out.report);
    println!("{}", out.summary);
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    out.code
}
