//! Sequences indexed by degree: eigenvalue increments, the R ladder, the
//! symmetric polynomials Y_n, and the Q_n check polynomials.

mod ladder;
mod ypoly;

pub use ladder::{build_r_sequence, uv_from_conic, uv_from_r, RSeq, UVRational};
pub use ypoly::{y_direct, y_recurrence, y_symbolic, UvPoly};

use crate::awoperator::DifferenceSystem;
use crate::error::{Error, Result};
use crate::poly::{interpolate, Poly};
use crate::scalar::{Scalar, Tol};

/// Closed-form regime of the increments `omega_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum Regime<S> {
    /// `omega_n = g1 q^n + g2 q^-n`
    QType { q: S, g1: S, g2: S },
    /// `omega_n = g1 n + g0`
    Linear { g1: S, g0: S },
    /// `omega_n = (-1)^n (g1 n + g0)`
    Alternating { g1: S, g0: S },
}

impl<S: Scalar> Regime<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::QType { .. } => "q-type",
            Regime::Linear { .. } => "linear",
            Regime::Alternating { .. } => "alternating",
        }
    }

    pub fn omega(&self, n: i64) -> S {
        match self {
            Regime::QType { q, g1, g2 } => g1.clone() * q.powi(n) + g2.clone() * q.powi(-n),
            Regime::Linear { g1, g0 } => g1.clone() * S::from_i64(n) + g0.clone(),
            Regime::Alternating { g1, g0 } => {
                let sign = if n % 2 == 0 { S::one() } else { -S::one() };
                sign * (g1.clone() * S::from_i64(n) + g0.clone())
            }
        }
    }

    /// `lambda_n = omega_1 + ... + omega_n` summed in closed form.
    pub fn lambda(&self, n: i64) -> S {
        if n == 0 {
            return S::zero();
        }
        match self {
            Regime::QType { q, g1, g2 } => {
                let qm1 = q.clone() - S::one();
                let up = q.clone() * (q.powi(n) - S::one()) / qm1.clone();
                let down = (S::one() - q.powi(-n)) / qm1;
                g1.clone() * up + g2.clone() * down
            }
            Regime::Linear { g1, g0 } => {
                let nn = S::from_i64(n);
                g1.clone() * S::from_i64(n * (n + 1)) / S::from_i64(2) + g0.clone() * nn
            }
            Regime::Alternating { g1, g0 } => {
                // sum (-1)^k k and sum (-1)^k for k = 1..n
                let (sk, s1) = if n % 2 == 0 { (n / 2, 0) } else { (-(n + 1) / 2, -1) };
                g1.clone() * S::from_i64(sk) + g0.clone() * S::from_i64(s1)
            }
        }
    }
}

/// `xi`, the increments `omega_1..omega_{n_max}` and `lambda_0..lambda_{n_max}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSeq<S> {
    pub xi: S,
    pub regime: Regime<S>,
    /// `omega[k]` is `omega_{k+1}`.
    pub omega: Vec<S>,
    /// `lambda[n]` is `lambda_n`, with `lambda[0] = 0`.
    pub lambda: Vec<S>,
}

impl<S: Scalar> SpectralSeq<S> {
    pub fn n_max(&self) -> usize {
        self.lambda.len() - 1
    }
}

/// Roots `q, 1/q` of `r^2 + xi r + 1`, larger modulus first.
pub fn modulus<S: Scalar>(xi: &S) -> Result<S> {
    let disc = xi.square() - S::from_i64(4);
    let root = disc.sqrt().ok_or_else(|| Error::UnrepresentableModulus {
        xi: xi.format(),
        reason: if S::EXACT && disc > S::zero() { "irrational" } else { "complex" },
    })?;
    let two = S::from_i64(2);
    let (a, b) = ((-xi.clone() + root.clone()) / two.clone(), (-xi.clone() - root) / two);
    Ok(if a.magnitude() >= b.magnitude() { a } else { b })
}

/// First colliding pair `(n, m)`, `n < m`, among the values, found by
/// sorting.
fn first_collision<S: Scalar>(values: &[S], tol: Tol) -> Option<(usize, usize)> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    idx.windows(2)
        .filter(|w| tol.eq(&values[w[0]], &values[w[1]]))
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .min_by_key(|&(n, m)| (m, n))
}

/// Determines the regime from `xi`, fits the G constants to `(omega_1,
/// omega_2)` and materializes the sequences up to `n_max`, checking that all
/// eigenvalues are distinct.
pub fn omega_closed_form<S: Scalar>(xi: S, omega1: S, omega2: S, n_max: usize, tol: Tol) -> Result<SpectralSeq<S>> {
    if tol.is_zero(&omega1, 0.0) || tol.is_zero(&omega2, 0.0) {
        return Err(Error::InvalidSeed("omega_1 and omega_2 must be nonzero".into()));
    }
    let two = S::from_i64(2);
    let regime = if tol.eq(&xi, &-two.clone()) {
        Regime::Linear { g1: omega2.clone() - omega1.clone(), g0: two * omega1 - omega2 }
    } else if tol.eq(&xi, &two) {
        let g1 = omega1.clone() + omega2.clone();
        Regime::Alternating { g0: -(two * omega1) - omega2, g1 }
    } else {
        let q = modulus(&xi)?;
        let qi = q.recip();
        let det = qi.clone() - q.clone();
        let g1 = (omega1.clone() * qi.square() - omega2.clone() * qi) / det.clone();
        let g2 = (q.clone() * omega2 - q.square() * omega1) / det;
        Regime::QType { q, g1, g2 }
    };
    let omega: Vec<S> = (1..=n_max as i64).map(|n| regime.omega(n)).collect();
    let lambda: Vec<S> = (0..=n_max as i64).map(|n| regime.lambda(n)).collect();
    if let Some((n, m)) = first_collision(&lambda, tol) {
        return Err(Error::SpectrumDegenerate { n, m });
    }
    Ok(SpectralSeq { xi, regime, omega, lambda })
}

/// `Q_n` from the operator image of `z^n`: interpolated at `n + 1`
/// admissible nodes of `window`, divided by `lambda_n`, and checked on every
/// remaining node. `Q_0` is the constant one.
pub fn compute_q<S: Scalar>(system: &DifferenceSystem<S>, n: usize, window: (i64, i64)) -> Result<Poly<S>> {
    if n == 0 {
        return Ok(Poly::one());
    }
    let tol = system.tol;
    let nodes = system.admissible_nodes(window);
    if nodes.len() < n + 1 {
        return Err(Error::WindowTooSmall { need: n + 1, got: nodes.len() });
    }
    let lambda = system.lambda(n)?;
    let zn = Poly::monomial(S::one(), n);
    let mut points = Vec::with_capacity(nodes.len());
    for &s in &nodes {
        let lhs = system.apply_operator(&zn, s)?;
        points.push((system.z(s), lhs / lambda.clone()));
    }
    let q = interpolate(&points[..n + 1], tol)?;
    let not_poly = |residual: String| Error::NotPolynomial { n, residual };
    for (x, y) in &points[n + 1..] {
        let r = q.eval(x) - y.clone();
        if !tol.is_zero(&r, q.eval_scale(x)) {
            return Err(not_poly(r.format()));
        }
    }
    if q.degree() != Some(n) || !tol.eq(&q.leading(), &S::one()) {
        return Err(not_poly(format!("leading coefficient {} in degree {:?}", q.leading(), q.degree())));
    }
    Ok(q)
}
