//! Finite tridiagonal machinery: weights, dual polynomials, biorthogonality,
//! the duality identity, and recovery of the three-term recurrence.
//!
//! Convention: the operator acts on sequences `v_0..v_N` by
//! `A(s) v_{s+1} + B(s) v_s + C(s) v_{s-1}`, with `A(N)` and `C(0)` absent.
//! Eigenvectors are normalized by `v_0 = 1` and are the values `Y_s(lambda)`
//! of the dual polynomials.

pub mod random;
mod roots;

use crate::awoperator::{build_eigenpolys, Coefficient, DifferenceSystem};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{convergents, Scalar, Tol};

/// Tridiagonal data `A(0..N-1)`, `B(0..N)`, `C(1..N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiSystem<S> {
    a: Vec<S>,
    b: Vec<S>,
    c: Vec<S>,
}

impl<S: Scalar> JacobiSystem<S> {
    /// `a[i] = A(i)`, `b[i] = B(i)`, `c[i] = C(i + 1)`.
    pub fn new(a: Vec<S>, b: Vec<S>, c: Vec<S>) -> Result<Self> {
        if b.is_empty() || a.len() + 1 != b.len() || c.len() + 1 != b.len() {
            return Err(Error::Shape(format!(
                "expected |A| = |C| = |B| - 1, got |A| = {}, |B| = {}, |C| = {}",
                a.len(),
                b.len(),
                c.len()
            )));
        }
        Ok(JacobiSystem { a, b, c })
    }

    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn a(&self, i: usize) -> &S {
        &self.a[i]
    }

    pub fn b(&self, i: usize) -> &S {
        &self.b[i]
    }

    /// `C(i)` for `1 <= i <= N`.
    pub fn c(&self, i: usize) -> &S {
        &self.c[i - 1]
    }

    pub fn a_all(&self) -> &[S] {
        &self.a
    }

    pub fn b_all(&self) -> &[S] {
        &self.b
    }

    /// `C(1..N)`.
    pub fn c_all(&self) -> &[S] {
        &self.c
    }
}

/// `w_0 = 1`, `w_s = prod_{i=1..s} A(i-1) / C(i)`: the weights that make the
/// operator symmetric, `w_s A(s) = w_{s+1} C(s+1)`.
pub fn weights<S: Scalar>(sys: &JacobiSystem<S>, tol: Tol) -> Result<Vec<S>> {
    let mut w = vec![S::one()];
    for s in 1..=sys.n() {
        if tol.is_zero(sys.c(s), 0.0) {
            return Err(Error::ZeroFactor { index: s });
        }
        if tol.is_zero(sys.a(s - 1), 0.0) {
            return Err(Error::ZeroFactor { index: s - 1 });
        }
        let next = w[s - 1].clone() * sys.a(s - 1).clone() / sys.c(s).clone();
        w.push(next);
    }
    Ok(w)
}

/// `Y_0 = 1` and `A(n) Y_{n+1} + B(n) Y_n + C(n) Y_{n-1} = x Y_n` for
/// `n < N`.
pub fn dual_polys<S: Scalar>(sys: &JacobiSystem<S>, tol: Tol) -> Result<Vec<Poly<S>>> {
    let mut y = vec![Poly::one()];
    for n in 0..sys.n() {
        if tol.is_zero(sys.a(n), 0.0) {
            return Err(Error::ZeroFactor { index: n });
        }
        let mut next = &y[n].mul_x() - &y[n].scale(sys.b(n));
        if n > 0 {
            next = &next - &y[n - 1].scale(sys.c(n));
        }
        y.push(next.scale(&sys.a(n).recip()).chop(tol));
    }
    Ok(y)
}

/// `(x - B(N)) Y_N - C(N) Y_{N-1}`; its roots are the eigenvalues.
pub fn closing_polynomial<S: Scalar>(sys: &JacobiSystem<S>, tol: Tol) -> Result<Poly<S>> {
    let y = dual_polys(sys, tol)?;
    let n = sys.n();
    let mut p = &y[n].mul_x() - &y[n].scale(sys.b(n));
    if n > 0 {
        p = &p - &y[n - 1].scale(sys.c(n));
    }
    Ok(p.chop(tol))
}

/// Forward recurrence from `v_0 = 1` together with the residual of the last
/// row, `(lambda - B(N)) v_N - C(N) v_{N-1}`, and its scale.
fn forward<S: Scalar>(sys: &JacobiSystem<S>, lambda: &S, tol: Tol) -> Result<(Vec<S>, S, f64)> {
    let n = sys.n();
    let mut v = vec![S::one()];
    for s in 0..n {
        if tol.is_zero(sys.a(s), 0.0) {
            return Err(Error::ZeroFactor { index: s });
        }
        let mut acc = (lambda.clone() - sys.b(s).clone()) * v[s].clone();
        if s > 0 {
            acc = acc - sys.c(s).clone() * v[s - 1].clone();
        }
        v.push(acc / sys.a(s).clone());
    }
    let main = (lambda.clone() - sys.b(n).clone()) * v[n].clone();
    let (close, scale) = if n > 0 {
        let side = sys.c(n).clone() * v[n - 1].clone();
        let scale = main.magnitude() + side.magnitude();
        (main - side, scale)
    } else {
        let scale = main.magnitude();
        (main, scale)
    };
    Ok((v, close, scale))
}

/// Eigenvector `v_s = Y_s(lambda)`; the last equation must close, which
/// certifies `lambda` as an eigenvalue.
pub fn eigenvectors_forward<S: Scalar>(sys: &JacobiSystem<S>, lambda: &S, tol: Tol) -> Result<Vec<S>> {
    let (v, close, scale) = forward(sys, lambda, tol)?;
    if !tol.is_zero(&close, scale) {
        return Err(Error::NotEigenvalue { residual: close.format() });
    }
    Ok(v)
}

/// Eigenvalues as roots of the closing polynomial, sorted ascending. Exact
/// mode rationalizes each numerical root and keeps it only if the closing
/// polynomial vanishes there exactly, float mode requires a small residual
/// relative to the size of its terms; all `N + 1` must be found.
pub fn eigenvalues<S: Scalar>(sys: &JacobiSystem<S>, tol: Tol) -> Result<Vec<S>> {
    let chi = closing_polynomial(sys, tol)?;
    let floats: Vec<f64> = chi.coeffs().iter().map(Scalar::to_f64).collect();
    let want = sys.n() + 1;
    let mut found: Vec<S> = Vec::new();
    for r in roots::roots(&floats) {
        if r.im.abs() > 1e-6 * r.re.abs().max(1.0) {
            continue;
        }
        let candidate = if S::EXACT {
            convergents(r.re, 1_000_000_000)
                .into_iter()
                .rev()
                .map(|c| S::parse(&c.to_string()).expect("rational literal"))
                .find(|c| chi.eval(c).is_zero())
        } else {
            // the forward recurrence is unstable at the far end of the
            // spectrum, so floats are certified on the polynomial instead
            Some(S::parse(&format!("{:e}", r.re)).expect("float literal"))
                .filter(|c| tol.is_zero(&chi.eval(c), chi.eval_scale(c)))
        };
        if let Some(c) = candidate {
            if !found.iter().any(|f| tol.eq(f, &c)) {
                found.push(c);
            }
        }
    }
    if found.len() != want {
        return Err(Error::UncertifiedSpectrum(format!(
            "certified {} of {} eigenvalues of the closing polynomial {}",
            found.len(),
            want,
            chi
        )));
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(found)
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub passed: bool,
    /// Largest residual relative to the size of its terms.
    pub max_residual: f64,
    /// Number of identities that failed.
    pub failures: usize,
    pub note: Option<String>,
}

impl Check {
    fn new(tol: Tol) -> CheckBuilder {
        CheckBuilder { tol, max: 0.0, failures: 0, note: None }
    }

    pub fn skipped(note: impl Into<String>) -> Self {
        Check { passed: false, max_residual: f64::INFINITY, failures: 1, note: Some(note.into()) }
    }
}

struct CheckBuilder {
    tol: Tol,
    max: f64,
    failures: usize,
    note: Option<String>,
}

impl CheckBuilder {
    fn add<S: Scalar>(&mut self, r: &S, scale: f64) {
        let rel = r.magnitude() / scale.max(1.0);
        self.max = self.max.max(rel);
        if !self.tol.is_zero(r, scale) {
            self.failures += 1;
        }
    }

    fn fail(&mut self, note: String) {
        self.failures += 1;
        self.note.get_or_insert(note);
    }

    fn finish(self) -> Check {
        Check { passed: self.failures == 0, max_residual: self.max, failures: self.failures, note: self.note }
    }
}

/// `sum_s w_s f_s g_s` and the sum of the absolute terms.
fn bilinear<S: Scalar>(w: &[S], f: &[S], g: &[S]) -> (S, f64) {
    w.iter().zip(f).zip(g).fold((S::zero(), 0.0), |(acc, scale), ((w, f), g)| {
        let t = w.clone() * f.clone() * g.clone();
        let m = t.magnitude();
        (acc + t, scale + m)
    })
}

/// Off-diagonal products `sum_s w_s F_k(s) F_j(s)` of the rows of `values`.
fn off_diagonal<S: Scalar>(values: &[Vec<S>], w: &[S], tol: Tol) -> Check {
    let mut c = Check::new(tol);
    for k in 0..values.len() {
        for j in k + 1..values.len() {
            let (r, scale) = bilinear(w, &values[k], &values[j]);
            c.add(&r, scale);
        }
    }
    c.finish()
}

/// Discrete orthogonality `sum_s w_s P_k(x_s) P_j(x_s) = 0`, `k != j`.
pub fn check_orthogonality<S: Scalar>(polys: &[Poly<S>], w: &[S], nodes: &[S], tol: Tol) -> Check {
    let values: Vec<Vec<S>> = polys.iter().map(|p| nodes.iter().map(|x| p.eval(x)).collect()).collect();
    off_diagonal(&values, w, tol)
}

/// Three-term recurrence read off the bilinear form.
#[derive(Clone, Debug, PartialEq)]
pub struct Recovered<S> {
    /// `b_0..b_N`.
    pub b: Vec<S>,
    /// `u_1..u_N` (`u[k]` is `u_{k+1}`).
    pub u: Vec<S>,
    /// `P_{N+1} = (x - b_N) P_N - u_N P_{N-1}`.
    pub next: Poly<S>,
    /// `x P_n - P_{n+1} - b_n P_n - u_n P_{n-1}` vanishes identically.
    pub identity: Check,
    /// `P_{N+1}` vanishes at every node.
    pub closure: Check,
}

/// `b_n = <x P_n, P_n> / h_n`, `u_n = h_n / h_{n-1}` with
/// `h_n = sum_s w_s P_n(x_s)^2`.
pub fn recover_recurrence<S: Scalar>(polys: &[Poly<S>], w: &[S], nodes: &[S], tol: Tol) -> Result<Recovered<S>> {
    let n = polys.len() - 1;
    let values: Vec<Vec<S>> = polys.iter().map(|p| nodes.iter().map(|x| p.eval(x)).collect()).collect();
    let mut h = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for (k, vals) in values.iter().enumerate() {
        let (hk, scale) = bilinear(w, vals, vals);
        if tol.is_zero(&hk, scale) {
            return Err(Error::NullNorm { n: k });
        }
        let xv: Vec<S> = vals.iter().zip(nodes).map(|(v, x)| v.clone() * x.clone()).collect();
        let (xh, _) = bilinear(w, &xv, vals);
        b.push(xh / hk.clone());
        h.push(hk);
    }
    let u: Vec<S> = (1..=n).map(|k| h[k].clone() / h[k - 1].clone()).collect();
    let step = |k: usize| -> Poly<S> {
        let mut p = &polys[k].mul_x() - &polys[k].scale(&b[k]);
        if k > 0 {
            p = &p - &polys[k - 1].scale(&u[k - 1]);
        }
        p
    };
    let mut identity = Check::new(tol);
    for k in 0..n {
        let diff = &step(k) - &polys[k + 1];
        let scale = polys[k + 1].max_abs() + polys[k].max_abs();
        for c in diff.coeffs() {
            identity.add(c, scale);
        }
    }
    for (k, uk) in u.iter().enumerate() {
        if tol.is_zero(uk, 0.0) {
            identity.fail(format!("u_{} vanishes", k + 1));
        }
    }
    let next = step(n).chop(tol);
    let mut closure = Check::new(tol);
    for x in nodes {
        closure.add(&next.eval(x), next.eval_scale(x));
    }
    Ok(Recovered { b, u, next, identity: identity.finish(), closure: closure.finish() })
}

/// A boundary coefficient replaced by zero when a window is cut out of an
/// infinite system.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryOverride<S> {
    pub coefficient: Coefficient,
    pub s: i64,
    pub original: S,
}

/// Restriction of a difference system to `lo..=hi`, re-indexed from zero.
/// `A(hi)` and `C(lo)` are dropped; nonzero dropped values are reported.
pub fn restrict<S: Scalar>(
    system: &DifferenceSystem<S>,
    lo: i64,
    hi: i64,
) -> Result<(JacobiSystem<S>, Vec<BoundaryOverride<S>>)> {
    if hi < lo {
        return Err(Error::WindowTooSmall { need: 1, got: 0 });
    }
    let coeffs = (lo..=hi).map(|s| system.coefficients(s)).collect::<Result<Vec<_>>>()?;
    let n = (hi - lo) as usize;
    let a = coeffs[..n].iter().map(|c| c.a.clone()).collect();
    let b = coeffs.iter().map(|c| c.b.clone()).collect();
    let c = coeffs[1..].iter().map(|c| c.c.clone()).collect();
    let mut overrides = Vec::new();
    if !coeffs[n].a.is_zero() {
        overrides.push(BoundaryOverride { coefficient: Coefficient::A, s: hi, original: coeffs[n].a.clone() });
    }
    if !coeffs[0].c.is_zero() {
        overrides.push(BoundaryOverride { coefficient: Coefficient::C, s: lo, original: coeffs[0].c.clone() });
    }
    Ok((JacobiSystem::new(a, b, c)?, overrides))
}

/// Results of the finite duality suite.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport<S> {
    pub n: usize,
    pub overrides: Vec<BoundaryOverride<S>>,
    pub eigenvalues: Vec<S>,
    pub weights: Vec<S>,
    /// Every eigenvalue closes the last row of the tridiagonal system.
    pub spectrum: Check,
    /// `sum_s w_s v_ks v_js = 0` for eigenvectors `k != j`.
    pub biorthogonality: Check,
    pub duality: Check,
    pub orthogonality: Check,
    pub recurrence: Check,
    pub closure: Check,
}

impl<S> DualityReport<S> {
    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("spectrum", &self.spectrum),
            ("biorthogonality", &self.biorthogonality),
            ("duality", &self.duality),
            ("orthogonality", &self.orthogonality),
            ("recurrence", &self.recurrence),
            ("closure", &self.closure),
        ]
    }

    /// Every identity except `spectrum`, which only diagnoses whether the
    /// restricted tridiagonal data still carries the polynomials' eigenvalues
    /// (it does not once a nonzero boundary coefficient was dropped).
    pub fn passed(&self) -> bool {
        self.checks().iter().skip(1).all(|(_, c)| c.passed)
    }
}

fn apply_weight_faults<S: Scalar>(w: &mut [S], faults: &[(usize, S)]) -> Result<()> {
    for (s, factor) in faults {
        let slot = w.get_mut(*s).ok_or_else(|| Error::Shape(format!("weight index {s} out of range")))?;
        *slot = slot.clone() * factor.clone();
    }
    Ok(())
}

/// Finite duality suite on `lo..=lo+n` of a difference system: the
/// eigenpolynomials sampled on the grid against the restricted tridiagonal
/// data. `weight_faults` multiplies individual weights (fault injection).
pub fn dual_check<S: Scalar>(
    system: &DifferenceSystem<S>,
    lo: i64,
    n: usize,
    weight_faults: &[(usize, S)],
) -> Result<DualityReport<S>> {
    let tol = system.tol;
    let hi = lo + n as i64;
    let (jac, overrides) = restrict(system, lo, hi)?;
    // the polynomials belong to the unperturbed operator
    let clean = DifferenceSystem { perturbations: Vec::new(), ..system.clone() };
    let eig = build_eigenpolys(&clean, n)?;
    let nodes: Vec<S> = (lo..=hi).map(|s| system.z(s)).collect();
    let mut w = weights(&jac, tol)?;
    apply_weight_faults(&mut w, weight_faults)?;

    let mut spectrum = Check::new(tol);
    let mut vectors = Vec::with_capacity(n + 1);
    for lambda in &eig.lambda {
        let (v, close, scale) = forward(&jac, lambda, tol)?;
        spectrum.add(&close, scale);
        vectors.push(v);
    }
    let spectrum = spectrum.finish();
    let biorthogonality = off_diagonal(&vectors, &w, tol);

    let mut duality = Check::new(tol);
    for (p, v) in eig.polys.iter().zip(&vectors) {
        let p0 = p.eval(&nodes[0]);
        for (x, vs) in nodes.iter().zip(v) {
            let lhs = p.eval(x);
            let rhs = p0.clone() * vs.clone();
            let scale = lhs.magnitude() + rhs.magnitude();
            duality.add(&(lhs - rhs), scale);
        }
    }
    let duality = duality.finish();

    let orthogonality = check_orthogonality(&eig.polys, &w, &nodes, tol);
    let (recurrence, closure) = match recover_recurrence(&eig.polys, &w, &nodes, tol) {
        Ok(r) => (r.identity, r.closure),
        Err(e) => (Check::skipped(e.to_string()), Check::skipped(e.to_string())),
    };
    Ok(DualityReport {
        n,
        overrides,
        eigenvalues: eig.lambda,
        weights: w,
        spectrum,
        biorthogonality,
        duality,
        orthogonality,
        recurrence,
        closure,
    })
}

/// Duality suite for bare tridiagonal data. The eigenvalues come from the
/// closing polynomial; the dual polynomials, made monic, are checked for
/// orthogonality on the spectrum with weights `1 / h_k`, and the recovered
/// recurrence must reproduce `B(s)` and `A(s-1) C(s)`.
pub fn jacobi_check<S: Scalar>(sys: &JacobiSystem<S>, weight_faults: &[(usize, S)], tol: Tol) -> Result<DualityReport<S>> {
    let n = sys.n();
    let lambda = eigenvalues(sys, tol)?;
    let mut w = weights(sys, tol)?;
    apply_weight_faults(&mut w, weight_faults)?;
    let y = dual_polys(sys, tol)?;

    let mut spectrum = Check::new(tol);
    let mut vectors = Vec::with_capacity(n + 1);
    for l in &lambda {
        let (v, close, scale) = forward(sys, l, tol)?;
        spectrum.add(&close, scale);
        vectors.push(v);
    }
    let spectrum = spectrum.finish();
    let biorthogonality = off_diagonal(&vectors, &w, tol);

    let mut duality = Check::new(tol);
    for (l, v) in lambda.iter().zip(&vectors) {
        for (ys, vs) in y.iter().zip(v) {
            let lhs = ys.eval(l);
            let scale = lhs.magnitude() + vs.magnitude();
            duality.add(&(lhs - vs.clone()), scale);
        }
    }
    let duality = duality.finish();

    // dual side: nodes lambda_k, weights 1 / h_k, monic Y_s
    let mut rho = Vec::with_capacity(n + 1);
    for (k, v) in vectors.iter().enumerate() {
        let (h, scale) = bilinear(&w, v, v);
        if tol.is_zero(&h, scale) {
            return Err(Error::NullNorm { n: k });
        }
        rho.push(h.recip());
    }
    let monic: Vec<Poly<S>> = y.iter().map(Poly::monic).collect();
    let orthogonality = check_orthogonality(&monic, &rho, &lambda, tol);
    let (recurrence, closure) = match recover_recurrence(&monic, &rho, &lambda, tol) {
        Ok(r) => {
            let mut id = Check::new(tol);
            for (k, bk) in r.b.iter().enumerate() {
                id.add(&(bk.clone() - sys.b(k).clone()), bk.magnitude() + sys.b(k).magnitude());
            }
            for (k, uk) in r.u.iter().enumerate() {
                let ac = sys.a(k).clone() * sys.c(k + 1).clone();
                id.add(&(uk.clone() - ac.clone()), uk.magnitude() + ac.magnitude());
            }
            let mut id = id.finish();
            id.passed &= r.identity.passed;
            id.failures += r.identity.failures;
            id.max_residual = id.max_residual.max(r.identity.max_residual);
            (id, r.closure)
        }
        Err(e) => (Check::skipped(e.to_string()), Check::skipped(e.to_string())),
    };
    Ok(DualityReport {
        n,
        overrides: Vec::new(),
        eigenvalues: lambda,
        weights: w,
        spectrum,
        biorthogonality,
        duality,
        orthogonality,
        recurrence,
        closure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    fn two_by_two() -> JacobiSystem<Rational> {
        JacobiSystem::new(ints(&[1]), ints(&[0, 0]), ints(&[1])).unwrap()
    }

    #[test]
    fn weight_examples() {
        let tol = Tol::default();
        let s = JacobiSystem::new(ints(&[1]), ints(&[0, 0]), ints(&[2])).unwrap();
        assert_eq!(weights(&s, tol).unwrap(), vec![q(1, 1), q(1, 2)]);
        let s = JacobiSystem::new(ints(&[2, 5]), ints(&[0, 0, 0]), ints(&[2, 5])).unwrap();
        assert_eq!(weights(&s, tol).unwrap(), ints(&[1, 1, 1]));
        let s = JacobiSystem::new(ints(&[1, 3]), ints(&[0, 0, 0]), ints(&[2, 4])).unwrap();
        assert_eq!(weights(&s, tol).unwrap(), vec![q(1, 1), q(1, 2), q(3, 8)]);
        let s = JacobiSystem::new(ints(&[0]), ints(&[0, 0]), ints(&[2])).unwrap();
        assert_eq!(weights(&s, tol), Err(Error::ZeroFactor { index: 0 }));
    }

    #[test]
    fn dual_poly_examples() {
        let tol = Tol::default();
        let s = two_by_two();
        assert_eq!(dual_polys(&s, tol).unwrap()[1], Poly::x());
        let s = JacobiSystem::new(ints(&[1, 1]), ints(&[0, 0, 0]), ints(&[1, 1])).unwrap();
        assert_eq!(dual_polys(&s, tol).unwrap()[2], Poly::from_i64(&[-1, 0, 1]));
        let s = JacobiSystem::new(ints(&[0]), ints(&[0, 0]), ints(&[1])).unwrap();
        assert_eq!(dual_polys(&s, tol), Err(Error::ZeroFactor { index: 0 }));
    }

    #[test]
    fn forward_eigenvectors() {
        let tol = Tol::default();
        let s = two_by_two();
        assert_eq!(eigenvectors_forward(&s, &q(1, 1), tol).unwrap(), ints(&[1, 1]));
        assert_eq!(eigenvectors_forward(&s, &q(-1, 1), tol).unwrap(), ints(&[1, -1]));
        assert!(matches!(eigenvectors_forward(&s, &q(0, 1), tol), Err(Error::NotEigenvalue { .. })));
        assert_eq!(eigenvalues(&s, tol).unwrap(), ints(&[-1, 1]));
    }

    #[test]
    fn two_point_system_is_orthogonal() {
        let tol = Tol::default();
        let s = two_by_two();
        let w = weights(&s, tol).unwrap();
        let nodes = ints(&[1, -1]);
        let polys = vec![Poly::one(), Poly::x()];
        assert!(check_orthogonality(&polys, &w, &nodes, tol).passed);
        let r = recover_recurrence(&polys, &w, &nodes, tol).unwrap();
        assert_eq!(r.b, ints(&[0, 0]));
        assert_eq!(r.next, Poly::from_i64(&[-1, 0, 1]));
        assert!(r.closure.passed && r.identity.passed);
    }

    #[test]
    fn irrational_spectrum_is_not_certified() {
        // x^2 - 2 closing polynomial
        let s = JacobiSystem::new(ints(&[1]), ints(&[0, 0]), ints(&[2])).unwrap();
        assert!(matches!(eigenvalues(&s, Tol::default()), Err(Error::UncertifiedSpectrum(_))));
        let f = JacobiSystem::new(vec![1.0], vec![0.0, 0.0], vec![2.0]).unwrap();
        let l = eigenvalues(&f, Tol::default()).unwrap();
        assert!((l[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn suites_on_random_systems() {
        use rand::SeedableRng;
        let tol = Tol::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let (sys, _) = random::inverse_jacobi::<Rational, _>(&mut rng, 4);
        let r = jacobi_check(&sys, &[], tol).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = jacobi_check(&sys, &[(2, q(1_000_001, 1_000_000))], tol).unwrap();
        assert!(!r.biorthogonality.passed);

        let sys = random::leonard_system::<Rational, _>(&mut rng, 4, tol).unwrap();
        let r = dual_check(&sys, 0, 4, &[]).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.overrides.is_empty());
    }
}
