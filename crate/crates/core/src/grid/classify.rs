//! Fitting sampled grids to conics and bi-quadratic curves, and deciding
//! which (if any) Askey-Wilson family they belong to.

use super::{check_distinct, BiQuadraticCurve, ConicParams, GridForm, GridSamples};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_vector, solve_consistent, SolveFailure};
use crate::scalar::{Scalar, Tol};

const CONIC_MIN: usize = 6;
const BIQUADRATIC_MIN: usize = 7;
const LINEAR_MIN: usize = 5;
const CLASSIFY_MIN: usize = 9;

fn need<S>(samples: &GridSamples<S>, n: usize) -> Result<()> {
    if samples.values.len() < n {
        return Err(Error::TooFewSamples { need: n, got: samples.values.len() });
    }
    Ok(())
}

/// Fits `(xi, eta)` from every consecutive triple, then `zeta` from the
/// pairs; every equation is verified.
pub fn fit_conic<S: Scalar>(samples: &GridSamples<S>, tol: Tol) -> Result<ConicParams<S>> {
    need(samples, CONIC_MIN)?;
    let z = &samples.values;
    let rows: Vec<Vec<S>> = z[1..z.len() - 1].iter().map(|v| vec![v.clone(), S::one()]).collect();
    let rhs: Vec<S> = z.windows(3).map(|w| -(w[0].clone() + w[2].clone())).collect();
    let sol = solve_consistent(&rows, &rhs, tol).map_err(|e| match e {
        SolveFailure::Inconsistent { residual } => Error::NotConic { residual },
        SolveFailure::Underdetermined => Error::NotConic { residual: f64::INFINITY },
    })?;
    let (xi, eta) = (sol[0].clone(), sol[1].clone());
    let zeta = ConicParams::pair_zeta(&xi, &eta, &z[0], &z[1]);
    let conic = ConicParams { xi, eta, zeta };
    let curve = conic.curve();
    let mut worst = 0.0f64;
    for w in z.windows(2) {
        let r = conic.pair_residual(&w[0], &w[1]);
        if !tol.is_zero(&r, curve.eval_scale(&w[0], &w[1])) {
            worst = worst.max(r.magnitude() / curve.eval_scale(&w[0], &w[1]).max(1.0));
        }
    }
    if worst > 0.0 {
        return Err(Error::NotConic { residual: worst });
    }
    Ok(conic)
}

/// Scale factor bringing float samples to unit size; exact mode uses one.
fn sample_scale<S: Scalar>(z: &[S]) -> S {
    if S::EXACT {
        return S::one();
    }
    let m = z.iter().map(|v| v.magnitude()).fold(0.0, f64::max);
    if m > 0.0 {
        S::from_i64(2).powi(m.log2().round() as i64)
    } else {
        S::one()
    }
}

/// Symmetric bi-quadratic curve through all consecutive pairs.
pub fn fit_biquadratic<S: Scalar>(samples: &GridSamples<S>, tol: Tol) -> Result<BiQuadraticCurve<S>> {
    need(samples, BIQUADRATIC_MIN)?;
    let k = sample_scale(&samples.values);
    let z: Vec<S> = samples.values.iter().map(|v| v.clone() / k.clone()).collect();
    let rows: Vec<Vec<S>> = z
        .windows(2)
        .map(|w| BiQuadraticCurve::basis(&w[0], &w[1]).to_vec())
        .collect();
    let v = nullspace_vector(&rows, tol).map_err(|_| Error::NotBiquadratic)?;
    // undo the scaling: monomial degrees are 4, 3, 2, 2, 1, 0
    let degrees = [4, 3, 2, 2, 1, 0];
    let alpha: [S; 6] = std::array::from_fn(|i| v[i].clone() / k.powi(degrees[i]));
    let curve = BiQuadraticCurve::new(alpha);
    for w in samples.values.windows(2) {
        let r = curve.eval(&w[0], &w[1]);
        if !tol.is_zero(&r, curve.eval_scale(&w[0], &w[1])) {
            return Err(Error::NotBiquadratic);
        }
    }
    Ok(curve)
}

/// Non-symmetric bilinear relation `a1 z z' + a2 z + a3 z' + a4 = 0` between
/// consecutive samples. Accepted only with `a2 != a3` (the symmetric case is
/// period two) and `a1 = 0`; otherwise `None`.
pub fn detect_linear_relation<S: Scalar>(samples: &GridSamples<S>, tol: Tol) -> Result<Option<[S; 4]>> {
    need(samples, LINEAR_MIN)?;
    let k = sample_scale(&samples.values);
    let z: Vec<S> = samples.values.iter().map(|v| v.clone() / k.clone()).collect();
    let rows: Vec<Vec<S>> = z
        .windows(2)
        .map(|w| vec![w[0].clone() * w[1].clone(), w[0].clone(), w[1].clone(), S::one()])
        .collect();
    let Ok(v) = nullspace_vector(&rows, tol) else {
        return Ok(None);
    };
    let degrees = [2, 1, 1, 0];
    let alpha: [S; 4] = std::array::from_fn(|i| v[i].clone() / k.powi(degrees[i]));
    let lead = alpha.iter().find(|a| !tol.is_zero(*a, 0.0)).cloned().unwrap_or_else(S::one);
    let alpha = alpha.map(|a| a / lead.clone());
    if tol.eq(&alpha[1], &alpha[2]) || !tol.is_zero(&alpha[0], 0.0) {
        return Ok(None);
    }
    Ok(Some(alpha))
}

/// Where classification gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonAwStage {
    /// Consecutive triples do not satisfy a common three-term relation.
    Conic,
    /// The conic fits but no closed-form family reproduces it.
    Family,
    /// A family was fitted but re-evaluation disagrees with the samples.
    Verification,
}

impl NonAwStage {
    pub fn name(self) -> &'static str {
        match self {
            NonAwStage::Conic => "conic",
            NonAwStage::Family => "family",
            NonAwStage::Verification => "verification",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonAwReport<S> {
    pub stage: NonAwStage,
    pub conic_residual: Option<f64>,
    pub linear_relation: Option<[S; 4]>,
    pub biquadratic: Option<BiQuadraticCurve<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Classification<S> {
    Aw(GridForm<S>),
    NonAw(NonAwReport<S>),
}

/// Least-squares-free family fit: the columns are evaluated at every sample
/// and the system must be consistent.
fn fit_columns<S: Scalar>(
    samples: &GridSamples<S>,
    columns: &[&dyn Fn(i64) -> S],
    tol: Tol,
) -> Option<Vec<S>> {
    let rows: Vec<Vec<S>> = (0..samples.len())
        .map(|i| columns.iter().map(|c| c(samples.s_at(i))).collect())
        .collect();
    solve_consistent(&rows, &samples.values, tol).ok()
}

/// True when the contribution `coef * f(s)` is negligible on all samples.
fn negligible<S: Scalar>(samples: &GridSamples<S>, coef: &S, f: &dyn Fn(i64) -> S, tol: Tol) -> bool {
    if S::EXACT {
        return coef.is_zero();
    }
    let scale = samples.values.iter().map(|v| v.magnitude()).fold(1.0, f64::max);
    (0..samples.len()).all(|i| (coef.clone() * f(samples.s_at(i))).magnitude() <= tol.value() * scale)
}

fn fit_family<S: Scalar>(samples: &GridSamples<S>, conic: &ConicParams<S>, tol: Tol) -> Result<Option<GridForm<S>>> {
    let two = S::from_i64(2);
    let xi = conic.xi.clone();
    let sq = |s: i64| S::from_i64(s).square();
    let lin = |s: i64| S::from_i64(s);
    let one = |_: i64| S::one();
    if tol.eq(&xi, &-two.clone()) {
        let Some(c) = fit_columns(samples, &[&sq, &lin, &one], tol) else { return Ok(None) };
        if negligible(samples, &c[0], &sq, tol) {
            let Some(l) = fit_columns(samples, &[&lin, &one], tol) else { return Ok(None) };
            return Ok(Some(GridForm::Linear { c1: l[0].clone(), c0: l[1].clone() }));
        }
        return Ok(Some(GridForm::Quadratic { c2: c[0].clone(), c1: c[1].clone(), c0: c[2].clone() }));
    }
    if tol.eq(&xi, &two) {
        let alt_s = |s: i64| S::from_i64(super::sign(s) * s);
        let alt = |s: i64| S::from_i64(super::sign(s));
        let Some(c) = fit_columns(samples, &[&alt_s, &alt, &one], tol) else { return Ok(None) };
        return Ok(Some(GridForm::AltQuadratic { c1: c[0].clone(), c0: c[1].clone(), offset: c[2].clone() }));
    }
    let disc = xi.square() - S::from_i64(4);
    let root = disc.sqrt().ok_or_else(|| Error::UnrepresentableModulus {
        xi: xi.format(),
        reason: if S::EXACT && disc > S::zero() { "irrational" } else { "complex" },
    })?;
    let (r1, r2) = ((-xi.clone() + root.clone()) / two.clone(), (-xi - root) / two);
    let q = if r1.magnitude() >= r2.magnitude() { r1 } else { r2 };
    let up = |s: i64| q.powi(s);
    let down = |s: i64| q.powi(-s);
    let Some(c) = fit_columns(samples, &[&up, &down, &one], tol) else { return Ok(None) };
    if negligible(samples, &c[1], &down, tol) {
        let Some(e) = fit_columns(samples, &[&up, &one], tol) else { return Ok(None) };
        return Ok(Some(GridForm::Exponential { c1: e[0].clone(), c0: e[1].clone(), q }));
    }
    if negligible(samples, &c[0], &up, tol) {
        let Some(e) = fit_columns(samples, &[&down, &one], tol) else { return Ok(None) };
        return Ok(Some(GridForm::Exponential { c1: e[0].clone(), c0: e[1].clone(), q: q.recip() }));
    }
    Ok(Some(GridForm::QQuadratic { c1: c[0].clone(), c2: c[1].clone(), c0: c[2].clone(), q }))
}

/// Decides whether the samples come from an Askey-Wilson grid and, if so,
/// recovers the family and its parameters. The fitted form is always
/// re-evaluated against every sample before it is returned.
pub fn classify_grid<S: Scalar>(samples: &GridSamples<S>, tol: Tol) -> Result<Classification<S>> {
    need(samples, CLASSIFY_MIN)?;
    check_distinct(&samples.values, tol)?;
    let conic = match fit_conic(samples, tol) {
        Ok(c) => c,
        Err(Error::NotConic { residual }) => {
            return Ok(Classification::NonAw(NonAwReport {
                stage: NonAwStage::Conic,
                conic_residual: Some(residual),
                linear_relation: detect_linear_relation(samples, tol)?,
                biquadratic: fit_biquadratic(samples, tol).ok(),
            }));
        }
        Err(e) => return Err(e),
    };
    let non_aw = |stage| {
        Classification::NonAw(NonAwReport {
            stage,
            conic_residual: None,
            linear_relation: None,
            biquadratic: Some(conic.curve()),
        })
    };
    let Some(form) = fit_family(samples, &conic, tol)? else {
        return Ok(non_aw(NonAwStage::Family));
    };
    let form = form.canonical();
    let reproduces = samples
        .values
        .iter()
        .enumerate()
        .all(|(i, v)| tol.eq(&form.eval(samples.s_at(i)), v));
    if !reproduces {
        return Ok(non_aw(NonAwStage::Verification));
    }
    Ok(Classification::Aw(form))
}

/// Walks the curve from `(z0, z1)`: the next point is the other root of
/// `A2(z) t^2 + A1(z) t + A0(z)`, obtained from the Vieta sum so no square
/// roots are taken.
pub fn step_grid<S: Scalar>(
    curve: &BiQuadraticCurve<S>,
    z0: S,
    z1: S,
    count: usize,
    tol: Tol,
) -> Result<GridSamples<S>> {
    if tol.eq(&z0, &z1) {
        return Err(Error::DistinctnessViolated { step: 1 });
    }
    let r = curve.eval(&z0, &z1);
    if !tol.is_zero(&r, curve.eval_scale(&z0, &z1)) {
        return Err(Error::NotOnCurve(r.format()));
    }
    let mut values = vec![z0, z1];
    for step in 2..count {
        let prev = &values[step - 2];
        let cur = &values[step - 1];
        let [a2, a1, a0] = curve.quadratic_in_y(cur);
        let scale = a2.magnitude() + a1.magnitude() + a0.magnitude();
        if tol.is_zero(&a2, tol.value() * scale) || a2.is_zero() {
            return Err(Error::StepDegenerate { step });
        }
        let next = -(a1 / a2) - prev.clone();
        if values.iter().any(|v| tol.eq(v, &next)) {
            return Err(Error::DistinctnessViolated { step });
        }
        values.push(next);
    }
    values.truncate(count);
    Ok(GridSamples::new(0, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn samples(f: impl Fn(i64) -> Rational, n: i64) -> GridSamples<Rational> {
        GridSamples::new(0, (0..n).map(f).collect())
    }

    fn tol() -> Tol {
        Tol::default()
    }

    #[test]
    fn conic_of_linear_and_q_grids() {
        let c = fit_conic(&samples(|s| q(s, 1), 7), tol()).unwrap();
        assert_eq!((c.xi, c.eta, c.zeta), (q(-2, 1), q(0, 1), q(-1, 1)));
        let two = q(2, 1);
        let c = fit_conic(&samples(|s| two.powi(s) + two.powi(-s), 8), tol()).unwrap();
        assert_eq!(c.xi, q(-5, 2));
        assert!(matches!(
            fit_conic(&samples(|s| q(s * s * s, 1), 7), tol()),
            Err(Error::NotConic { .. })
        ));
    }

    #[test]
    fn biquadratic_examples() {
        let c = fit_biquadratic(&samples(|s| q(s, 1), 7), tol()).unwrap();
        let expect = [0, 0, 1, -2, 0, -1].map(|v| q(v, 1));
        assert_eq!(c.alpha, expect);
        let two = q(2, 1);
        let c = fit_biquadratic(&samples(|s| two.powi(s), 8), tol()).unwrap();
        assert_eq!(c.alpha, [q(0, 1), q(0, 1), q(1, 1), q(-5, 2), q(0, 1), q(0, 1)]);
        assert_eq!(
            fit_biquadratic(&samples(|s| q(s * s * s, 1), 8), tol()),
            Err(Error::NotBiquadratic)
        );
    }

    #[test]
    fn nullspace_of_quadratic_grid_rows() {
        let c = fit_biquadratic(&samples(|s| q(s * s, 1), 8), tol()).unwrap();
        for s in -5..20 {
            assert!(c.eval(&q(s * s, 1), &q((s + 1) * (s + 1), 1)).is_zero());
        }
    }

    #[test]
    fn linear_relation_examples() {
        let three = q(3, 1);
        let two = q(2, 1);
        let r = detect_linear_relation(&samples(|s| three.clone() * two.powi(s), 5), tol()).unwrap();
        assert_eq!(r, Some([q(0, 1), q(1, 1), q(-1, 2), q(0, 1)]));
        let r = detect_linear_relation(&samples(|s| q(s, 1), 5), tol()).unwrap();
        assert_eq!(r, Some([q(0, 1), q(1, 1), q(-1, 1), q(1, 1)]));
        assert_eq!(detect_linear_relation(&samples(|s| q(s * s, 1), 5), tol()).unwrap(), None);
    }

    #[test]
    fn classify_examples() {
        let two = q(2, 1);
        let c = classify_grid(&samples(|s| two.powi(s) + two.powi(-s), 11), tol()).unwrap();
        assert_eq!(
            c,
            Classification::Aw(GridForm::QQuadratic { c1: q(1, 1), c2: q(1, 1), c0: q(0, 1), q: q(2, 1) })
        );
        let c = classify_grid(&samples(|s| q(s * s + s, 1), 11), tol()).unwrap();
        assert_eq!(c, Classification::Aw(GridForm::Quadratic { c2: q(1, 1), c1: q(1, 1), c0: q(0, 1) }));
        let c = classify_grid(&samples(|s| q(s, 1), 11), tol()).unwrap();
        assert_eq!(c, Classification::Aw(GridForm::Linear { c1: q(1, 1), c0: q(0, 1) }));
        let Classification::NonAw(r) = classify_grid(&samples(|s| q(s * s * s, 1), 11), tol()).unwrap() else {
            panic!("cubic grid classified as AW");
        };
        assert_eq!(r.stage, NonAwStage::Conic);
        assert!(r.biquadratic.is_none());
        assert!(matches!(
            classify_grid(&samples(|s| q(s, 1), 4), tol()),
            Err(Error::TooFewSamples { need: 9, got: 4 })
        ));
        assert!(matches!(
            classify_grid(&samples(|s| q(s % 3, 1), 9), tol()),
            Err(Error::Degenerate(0, 3))
        ));
    }

    #[test]
    fn irrational_modulus_is_reported() {
        // xi = -3: q = (3 + sqrt 5) / 2
        let mut z = vec![q(0, 1), q(1, 1)];
        for i in 2..10 {
            let next = q(3, 1) * z[i - 1].clone() - z[i - 2].clone();
            z.push(next);
        }
        assert!(matches!(
            classify_grid(&GridSamples::new(0, z), tol()),
            Err(Error::UnrepresentableModulus { reason: "irrational", .. })
        ));
    }

    #[test]
    fn step_examples() {
        let line = BiQuadraticCurve::new([0, 0, 1, -2, 0, -1].map(|v| q(v, 1)));
        let s = step_grid(&line, q(0, 1), q(1, 1), 5, tol()).unwrap();
        assert_eq!(s.values, (0..5).map(|v| q(v, 1)).collect::<Vec<_>>());
        let geo = BiQuadraticCurve::new([q(0, 1), q(0, 1), q(1, 1), q(-5, 2), q(0, 1), q(0, 1)]);
        let s = step_grid(&geo, q(1, 1), q(2, 1), 5, tol()).unwrap();
        assert_eq!(s.values, [1, 2, 4, 8, 16].map(|v| q(v, 1)).to_vec());
        assert_eq!(
            step_grid(&line, q(1, 1), q(1, 1), 5, tol()),
            Err(Error::DistinctnessViolated { step: 1 })
        );
        assert!(matches!(step_grid(&line, q(0, 1), q(3, 1), 5, tol()), Err(Error::NotOnCurve(_))));
    }

    #[test]
    fn stepping_reproduces_closed_form() {
        let f = GridForm::QQuadratic { c1: q(2, 3), c2: q(-1, 2), c0: q(1, 1), q: q(3, 2) };
        let curve = fit_biquadratic(&f.sample(0, 9), tol()).unwrap();
        let walk = step_grid(&curve, f.eval(0), f.eval(1), 24, tol()).unwrap();
        for (s, v) in walk.values.iter().enumerate() {
            assert_eq!(v, &f.eval(s as i64));
        }
    }

    #[test]
    fn float_classification_recovers_parameters() {
        let f = GridForm::QQuadratic { c1: 1.5, c2: -0.25, c0: 3.0, q: -2.5 };
        let c = classify_grid(&f.sample(0, 12), tol()).unwrap();
        let Classification::Aw(GridForm::QQuadratic { c1, c2, c0, q }) = c else { panic!("{c:?}") };
        for (a, b) in [(c1, 1.5), (c2, -0.25), (c0, 3.0), (q, -2.5)] {
            assert!((a - b).abs() <= 1e-9 * b.abs(), "{a} vs {b}");
        }
    }
}
