//! JSON file formats. Scalars travel as strings (`"p/q"` or a decimal
//! literal); objects are emitted with sorted keys so output is reproducible.

use serde_json::{json, Map, Value};

use crate::awoperator::Coefficient;
use crate::duality::JacobiSystem;
use crate::error::{Error, Result};
use crate::grid::{GridForm, GridSamples};
use crate::poly::Poly;
use crate::scalar::{Scalar, Tol};

fn malformed(what: impl Into<String>) -> Error {
    Error::Input(what.into())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing key {key:?}")))
}

fn int(v: &Value, key: &str) -> Result<i64> {
    field(v, key)?.as_i64().ok_or_else(|| malformed(format!("{key:?} must be an integer")))
}

fn uint(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|n| n as usize).ok_or_else(|| malformed(format!("{key:?} must be a non-negative integer")))
}

pub fn scalar_to_json<S: Scalar>(x: &S) -> Value {
    Value::String(x.format())
}

/// Accepts scalar strings and, for convenience, bare JSON numbers.
pub fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::String(s) => S::parse(s),
        Value::Number(n) => S::parse(&n.to_string()),
        other => Err(malformed(format!("expected a scalar, found {other}"))),
    }
}

pub fn scalars_to_json<S: Scalar>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(scalar_to_json).collect())
}

pub fn scalars_from_json<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    v.as_array().ok_or_else(|| malformed("expected an array of scalars"))?.iter().map(scalar_from_json).collect()
}

/// Ascending coefficients.
pub fn poly_to_json<S: Scalar>(p: &Poly<S>) -> Value {
    scalars_to_json(p.coeffs())
}

pub fn poly_from_json<S: Scalar>(v: &Value) -> Result<Poly<S>> {
    Ok(Poly::new(scalars_from_json(v)?))
}

pub fn grid_to_json<S: Scalar>(g: &GridForm<S>) -> Value {
    let mut m = Map::new();
    m.insert("family".into(), Value::String(g.family().into()));
    for (name, x) in g.params() {
        m.insert(name.into(), scalar_to_json(x));
    }
    Value::Object(m)
}

pub fn grid_from_json<S: Scalar>(v: &Value) -> Result<GridForm<S>> {
    let p = |k: &str| -> Result<S> { scalar_from_json(field(v, k)?) };
    let family = field(v, "family")?.as_str().ok_or_else(|| malformed("\"family\" must be a string"))?;
    Ok(match family {
        "QQuadratic" => GridForm::QQuadratic { c1: p("c1")?, c2: p("c2")?, c0: p("c0")?, q: p("q")? },
        "Quadratic" => GridForm::Quadratic { c2: p("c2")?, c1: p("c1")?, c0: p("c0")? },
        "AltQuadratic" => GridForm::AltQuadratic { c1: p("c1")?, c0: p("c0")?, offset: p("offset")? },
        "Linear" => GridForm::Linear { c1: p("c1")?, c0: p("c0")? },
        "Exponential" => GridForm::Exponential { c1: p("c1")?, c0: p("c0")?, q: p("q")? },
        other => return Err(malformed(format!("unknown grid family {other:?}"))),
    })
}

pub fn samples_to_json<S: Scalar>(g: &GridSamples<S>) -> Value {
    json!({ "s0": g.s0, "values": scalars_to_json(&g.values) })
}

pub fn samples_from_json<S: Scalar>(v: &Value) -> Result<GridSamples<S>> {
    let s0 = match v.get("s0") {
        Some(_) => int(v, "s0")?,
        None => 0,
    };
    Ok(GridSamples::new(s0, scalars_from_json(field(v, "values")?)?))
}

/// The `"field"` entry of a file, if present.
pub fn field_of(v: &Value) -> Result<Option<String>> {
    match v.get("field") {
        None => Ok(None),
        Some(Value::String(s)) if s == "rational" || s == "float" => Ok(Some(s.clone())),
        Some(other) => Err(malformed(format!("field must be \"rational\" or \"float\", found {other}"))),
    }
}

/// What a fault in a system file multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaultTarget {
    Coefficient(Coefficient),
    Weight,
}

/// `value * factor + shift` at node `s`; weights only take a factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Fault<S> {
    pub target: FaultTarget,
    pub s: i64,
    pub factor: S,
    pub shift: S,
}

/// Contents of a system file.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile<S> {
    pub grid: GridForm<S>,
    pub r1: Poly<S>,
    pub r2: Poly<S>,
    pub n: usize,
    pub window: (i64, i64),
    pub tol: Option<Tol>,
    pub faults: Vec<Fault<S>>,
}

fn window_from_json(v: &Value) -> Result<(i64, i64)> {
    let w = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| malformed("\"window\" must be [lo, hi]"))?;
    let lo = w[0].as_i64().ok_or_else(|| malformed("window bounds must be integers"))?;
    let hi = w[1].as_i64().ok_or_else(|| malformed("window bounds must be integers"))?;
    if hi < lo {
        return Err(malformed(format!("empty window [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

fn tol_from_json(v: &Value) -> Result<Option<Tol>> {
    let Some(t) = v.get("tol") else { return Ok(None) };
    let t: f64 = scalar_from_json::<f64>(t)?;
    if !(t > 0.0) {
        return Err(malformed("tol must be positive"));
    }
    Ok(Some(Tol::new(t)))
}

impl<S: Scalar> SystemFile<S> {
    pub fn from_json(v: &Value) -> Result<Self> {
        let mut faults = Vec::new();
        if let Some(list) = v.get("perturb") {
            for f in list.as_array().ok_or_else(|| malformed("\"perturb\" must be an array"))? {
                let target = match field(f, "target")?.as_str() {
                    Some("A") => FaultTarget::Coefficient(Coefficient::A),
                    Some("C") => FaultTarget::Coefficient(Coefficient::C),
                    Some("w") => FaultTarget::Weight,
                    _ => return Err(malformed("perturbation target must be \"A\", \"C\" or \"w\"")),
                };
                let factor = f.get("factor").map_or(Ok(S::one()), scalar_from_json)?;
                let shift = f.get("shift").map_or(Ok(S::zero()), scalar_from_json)?;
                if target == FaultTarget::Weight && !shift.is_zero() {
                    return Err(malformed("weights take a factor, not a shift"));
                }
                faults.push(Fault { target, s: int(f, "s")?, factor, shift });
            }
        }
        Ok(SystemFile {
            grid: grid_from_json(field(v, "grid")?)?,
            r1: poly_from_json(field(v, "r1")?)?,
            r2: poly_from_json(field(v, "r2")?)?,
            n: uint(v, "N")?,
            window: window_from_json(field(v, "window")?)?,
            tol: tol_from_json(v)?,
            faults,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("field".into(), Value::String(S::FIELD.into()));
        m.insert("grid".into(), grid_to_json(&self.grid));
        m.insert("r1".into(), poly_to_json(&self.r1));
        m.insert("r2".into(), poly_to_json(&self.r2));
        m.insert("N".into(), json!(self.n));
        m.insert("window".into(), json!([self.window.0, self.window.1]));
        if let Some(t) = self.tol {
            m.insert("tol".into(), Value::String(format!("{:e}", t.value())));
        }
        if !self.faults.is_empty() {
            let list = self
                .faults
                .iter()
                .map(|f| {
                    let target = match f.target {
                        FaultTarget::Coefficient(Coefficient::A) => "A",
                        FaultTarget::Coefficient(Coefficient::C) => "C",
                        FaultTarget::Weight => "w",
                    };
                    json!({
                        "target": target,
                        "s": f.s,
                        "factor": scalar_to_json(&f.factor),
                        "shift": scalar_to_json(&f.shift),
                    })
                })
                .collect();
            m.insert("perturb".into(), Value::Array(list));
        }
        Value::Object(m)
    }
}

pub fn jacobi_to_json<S: Scalar>(j: &JacobiSystem<S>) -> Value {
    json!({
        "N": j.n(),
        "A": scalars_to_json(j.a_all()),
        "B": scalars_to_json(j.b_all()),
        "C": scalars_to_json(j.c_all()),
    })
}

/// `{"N", "A": A(0..N-1), "B": B(0..N), "C": C(1..N)}`.
pub fn jacobi_from_json<S: Scalar>(v: &Value) -> Result<JacobiSystem<S>> {
    let n = uint(v, "N")?;
    let j = JacobiSystem::new(
        scalars_from_json(field(v, "A")?)?,
        scalars_from_json(field(v, "B")?)?,
        scalars_from_json(field(v, "C")?)?,
    )?;
    if j.n() != n {
        return Err(Error::Shape(format!("N = {n} but B has {} entries", j.n() + 1)));
    }
    Ok(j)
}

/// Input of the spectrum command.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumInput<S> {
    pub xi: S,
    pub omega1: S,
    pub omega2: S,
    pub n_max: usize,
}

impl<S: Scalar> SpectrumInput<S> {
    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(SpectrumInput {
            xi: scalar_from_json(field(v, "xi")?)?,
            omega1: scalar_from_json(field(v, "omega1")?)?,
            omega2: scalar_from_json(field(v, "omega2")?)?,
            n_max: uint(v, "n_max")?,
        })
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
