use super::{operator_matrix, Coefficients, DifferenceSystem, EigenPolySet};
use crate::error::{Error, Result};
use crate::grid::GridForm;
use crate::poly::{interpolate, Poly};
use crate::scalar::{Scalar, Tol};

/// Residuals of the eigen-equation and of the R-ladder identity.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    /// Largest absolute eigen-equation residual.
    pub max_residual: f64,
    /// Largest residual relative to `max(1, sum of |terms|)`.
    pub max_relative: f64,
    /// Number of exactly nonzero residuals (meaningful in exact mode).
    pub nonzero: usize,
    /// Largest relative residual per degree `n`.
    pub per_n: Vec<f64>,
    /// Largest relative residual per node `s`.
    pub per_s: Vec<(i64, f64)>,
    /// Largest relative residual of `A1 z^n(s+1) + C1 z^n(s-1) = R_{n+1}(z(s))`.
    pub ladder_residual: f64,
    /// Largest `|A + B + C|`.
    pub balance_residual: f64,
    pub skipped_nodes: Vec<i64>,
    pub certified_window: (i64, i64),
    /// Nodes actually checked.
    pub checked_window: Option<(i64, i64)>,
    pub passed: bool,
}

struct Tally {
    tol: Tol,
    nonzero: usize,
    max_abs: f64,
    max_rel: f64,
}

impl Tally {
    /// Records one residual and returns its relative size.
    fn add<S: Scalar>(&mut self, r: &S, scale: f64) -> f64 {
        if !r.is_zero() {
            self.nonzero += 1;
        }
        let rel = r.magnitude() / scale.max(1.0);
        self.max_abs = self.max_abs.max(r.magnitude());
        self.max_rel = self.max_rel.max(rel);
        rel
    }

    fn passed(&self, exact: bool) -> bool {
        if exact {
            self.nonzero == 0
        } else {
            self.max_rel <= self.tol.value()
        }
    }
}

/// Checks `A P_n(z(s+1)) + B P_n(z(s)) + C P_n(z(s-1)) = lambda_n P_n(z(s))`
/// for every polynomial and every admissible node of `window`, together with
/// the ladder identity and `A + B + C = 0`.
pub fn verify_system<S: Scalar>(system: &DifferenceSystem<S>, polys: &EigenPolySet<S>, window: (i64, i64)) -> VerifyReport {
    let tol = system.tol;
    let nodes = system.admissible_nodes(window);
    let mut eig = Tally { tol, nonzero: 0, max_abs: 0.0, max_rel: 0.0 };
    let mut ladder = Tally { tol, nonzero: 0, max_abs: 0.0, max_rel: 0.0 };
    let mut balance = Tally { tol, nonzero: 0, max_abs: 0.0, max_rel: 0.0 };
    let mut per_n = vec![0.0f64; polys.len()];
    let mut per_s = Vec::with_capacity(nodes.len());
    let mut skipped = system.skipped.clone();
    for &s in &nodes {
        let Ok(Coefficients { a, b, c }) = system.coefficients(s) else {
            skipped.push(s);
            continue;
        };
        let (zm, z, zp) = (system.z(s - 1), system.z(s), system.z(s + 1));
        let bal = a.clone() + b.clone() + c.clone();
        balance.add(&bal, a.magnitude() + b.magnitude() + c.magnitude());
        let mut worst_s = 0.0f64;
        for (n, (p, lambda)) in polys.polys.iter().zip(&polys.lambda).enumerate() {
            let terms = [
                a.clone() * p.eval(&zp),
                b.clone() * p.eval(&z),
                c.clone() * p.eval(&zm),
                -(lambda.clone() * p.eval(&z)),
            ];
            let scale: f64 = terms.iter().map(Scalar::magnitude).sum();
            let r = terms.into_iter().fold(S::zero(), |acc, t| acc + t);
            let rel = eig.add(&r, scale);
            per_n[n] = per_n[n].max(rel);
            worst_s = worst_s.max(rel);
        }
        per_s.push((s, worst_s));
        let a1 = a * (zp.clone() - z.clone());
        let c1 = -(c * (z.clone() - zm.clone()));
        for n in 0..polys.len() {
            let Some(r_next) = system.r_seq.polys.get(n) else { break };
            let e = n as i64;
            let lhs = [a1.clone() * zp.powi(e), c1.clone() * zm.powi(e)];
            let rhs = r_next.eval(&z);
            let scale = lhs.iter().map(Scalar::magnitude).sum::<f64>() + rhs.magnitude();
            let [l1, l2] = lhs;
            ladder.add(&(l1 + l2 - rhs), scale);
        }
    }
    skipped.sort_unstable();
    skipped.dedup();
    let passed = eig.passed(S::EXACT) && ladder.passed(S::EXACT) && balance.passed(S::EXACT);
    VerifyReport {
        max_residual: eig.max_abs,
        max_relative: eig.max_rel,
        nonzero: eig.nonzero,
        per_n,
        per_s,
        ladder_residual: ladder.max_rel,
        balance_residual: balance.max_rel,
        skipped_nodes: skipped,
        certified_window: system.certified,
        checked_window: nodes.first().zip(nodes.last()).map(|(a, b)| (*a, *b)),
        passed,
    }
}

/// Residuals of the eigen-equation in coefficient space.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientReport {
    /// Largest relative residual per degree, including the monic
    /// normalization `|lead - 1|`.
    pub per_n: Vec<f64>,
    pub max_residual: f64,
    pub passed: bool,
}

/// Checks `(M - lambda_n I) c_n = 0` row by row, where `M` is the operator
/// matrix and `c_n` the coefficients of `P_n`, together with `P_n` being
/// monic of degree `n`. Rescaling an eigenpolynomial is invisible to the
/// eigen-equation itself, hence the normalization term.
pub fn verify_coefficients<S: Scalar>(system: &DifferenceSystem<S>, polys: &EigenPolySet<S>) -> Result<CoefficientReport> {
    let tol = system.tol;
    let n_max = polys.len().saturating_sub(1);
    let m = operator_matrix(system, n_max)?;
    let mut tally = Tally { tol, nonzero: 0, max_abs: 0.0, max_rel: 0.0 };
    let mut per_n = vec![0.0f64; polys.len()];
    for (n, (p, lambda)) in polys.polys.iter().zip(&polys.lambda).enumerate() {
        if p.degree().is_some_and(|d| d > n) {
            per_n[n] = f64::INFINITY;
            tally.nonzero += 1;
            tally.max_rel = f64::INFINITY;
            continue;
        }
        for i in 0..=n {
            let terms: Vec<S> = (i..=n).map(|j| m[i][j].clone() * p.coeff(j)).collect();
            let own = lambda.clone() * p.coeff(i);
            let scale = terms.iter().map(Scalar::magnitude).sum::<f64>() + own.magnitude();
            let r = terms.into_iter().fold(-own, |acc, t| acc + t);
            per_n[n] = per_n[n].max(tally.add(&r, scale));
        }
        let lead = p.coeff(n) - S::one();
        per_n[n] = per_n[n].max(tally.add(&lead, 1.0));
    }
    Ok(CoefficientReport { passed: tally.passed(S::EXACT), max_residual: tally.max_rel, per_n })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MagnusReport {
    pub passed: bool,
    /// Largest relative held-out residual.
    pub max_residual: f64,
    /// Nodes used for the interpolation plus held-out nodes.
    pub nodes: usize,
}

/// Divided differences `(p(z(s+1)) - p(z(s))) / (z(s+1) - z(s))` must lie on
/// one polynomial of degree `deg p - 1` in the companion variable `y(s)`.
/// `z` has one more entry than `y`.
pub fn magnus_check_sampled<S: Scalar>(p: &Poly<S>, z: &[S], y: &[S], tol: Tol) -> Result<MagnusReport> {
    let n = p.degree().unwrap_or(0);
    if z.len() != y.len() + 1 {
        return Err(Error::Shape(format!("{} grid values for {} companion values", z.len(), y.len())));
    }
    let mut points: Vec<(S, S)> = Vec::new();
    for (i, yv) in y.iter().enumerate() {
        let dz = z[i + 1].clone() - z[i].clone();
        if tol.is_zero(&dz, z[i].magnitude()) {
            continue;
        }
        points.push((yv.clone(), (p.eval(&z[i + 1]) - p.eval(&z[i])) / dz));
    }
    // interpolation nodes need distinct y; everything else is held out
    let mut fit: Vec<(S, S)> = Vec::new();
    let mut held: Vec<(S, S)> = Vec::new();
    for pt in points {
        if fit.len() < n.max(1) && !fit.iter().any(|(x, _)| tol.eq(x, &pt.0)) {
            fit.push(pt);
        } else {
            held.push(pt);
        }
    }
    if fit.len() < n.max(1) || held.is_empty() {
        return Err(Error::WindowTooSmall { need: n.max(1) + 1, got: fit.len() + held.len() });
    }
    let t = interpolate(&fit, tol)?;
    let mut worst = 0.0f64;
    let mut ok = true;
    for (x, d) in &held {
        let r = t.eval(x) - d.clone();
        let scale = t.eval_scale(x).max(d.magnitude()).max(1.0);
        if !tol.is_zero(&r, scale) {
            ok = false;
        }
        worst = worst.max(r.magnitude() / scale);
    }
    Ok(MagnusReport { passed: ok, max_residual: worst, nodes: fit.len() + held.len() })
}

/// Divided-difference check against the half-shifted companion grid of
/// `grid` over `window`.
pub fn magnus_check<S: Scalar>(p: &Poly<S>, grid: &GridForm<S>, window: (i64, i64), tol: Tol) -> Result<MagnusReport> {
    let (lo, hi) = window;
    let y: Option<Vec<S>> = (lo..=hi).map(|s| grid.companion(s)).collect();
    let y = y.ok_or_else(|| Error::InvalidGrid(format!("{} has no real half-shift companion", grid.family())))?;
    let z: Vec<S> = (lo..=hi + 1).map(|s| grid.eval(s)).collect();
    magnus_check_sampled(p, &z, &y, tol)
}
