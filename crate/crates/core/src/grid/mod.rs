//! Askey-Wilson grid families and the curves linking consecutive points.

mod classify;

pub use classify::{
    classify_grid, detect_linear_relation, fit_biquadratic, fit_conic, step_grid, Classification,
    NonAwReport, NonAwStage,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};

/// Closed form of one of the five admissible grid families.
#[derive(Clone, Debug, PartialEq)]
pub enum GridForm<S> {
    /// `c1 q^s + c2 q^-s + c0`
    QQuadratic { c1: S, c2: S, c0: S, q: S },
    /// `c2 s^2 + c1 s + c0`
    Quadratic { c2: S, c1: S, c0: S },
    /// `(-1)^s (c1 s + c0) + offset`
    AltQuadratic { c1: S, c0: S, offset: S },
    /// `c1 s + c0`
    Linear { c1: S, c0: S },
    /// `c1 q^s + c0`
    Exponential { c1: S, c0: S, q: S },
}

fn sign(s: i64) -> i64 {
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl<S: Scalar> GridForm<S> {
    pub fn family(&self) -> &'static str {
        match self {
            GridForm::QQuadratic { .. } => "QQuadratic",
            GridForm::Quadratic { .. } => "Quadratic",
            GridForm::AltQuadratic { .. } => "AltQuadratic",
            GridForm::Linear { .. } => "Linear",
            GridForm::Exponential { .. } => "Exponential",
        }
    }

    /// Parameters by name, in the order used for serialization.
    pub fn params(&self) -> Vec<(&'static str, &S)> {
        match self {
            GridForm::QQuadratic { c1, c2, c0, q } => vec![("c1", c1), ("c2", c2), ("c0", c0), ("q", q)],
            GridForm::Quadratic { c2, c1, c0 } => vec![("c2", c2), ("c1", c1), ("c0", c0)],
            GridForm::AltQuadratic { c1, c0, offset } => {
                vec![("c1", c1), ("c0", c0), ("offset", offset)]
            }
            GridForm::Linear { c1, c0 } => vec![("c1", c1), ("c0", c0)],
            GridForm::Exponential { c1, c0, q } => vec![("c1", c1), ("c0", c0), ("q", q)],
        }
    }

    pub fn eval(&self, s: i64) -> S {
        match self {
            GridForm::QQuadratic { c1, c2, c0, q } => {
                c1.clone() * q.powi(s) + c2.clone() * q.powi(-s) + c0.clone()
            }
            GridForm::Quadratic { c2, c1, c0 } => {
                let t = S::from_i64(s);
                c2.clone() * t.square() + c1.clone() * t + c0.clone()
            }
            GridForm::AltQuadratic { c1, c0, offset } => {
                let t = S::from_i64(s);
                S::from_i64(sign(s)) * (c1.clone() * t + c0.clone()) + offset.clone()
            }
            GridForm::Linear { c1, c0 } => c1.clone() * S::from_i64(s) + c0.clone(),
            GridForm::Exponential { c1, c0, q } => c1.clone() * q.powi(s) + c0.clone(),
        }
    }

    /// Companion grid used by the divided-difference check: `z(s + 1/2)` up
    /// to an affine change of variable, which keeps q-grids rational
    /// (`c1 q^s + c2 q^(-s-1)` is `(z(s+1/2) - c0) / sqrt(q)`). The
    /// alternating family has no real half-shift, so `None`.
    pub fn companion(&self, s: i64) -> Option<S> {
        let half = S::from_ratio(1, 2);
        match self {
            GridForm::QQuadratic { c1, c2, q, .. } => {
                Some(c1.clone() * q.powi(s) + c2.clone() * q.powi(-s - 1))
            }
            GridForm::Exponential { c1, q, .. } => Some(c1.clone() * q.powi(s)),
            GridForm::Quadratic { c2, c1, c0 } => {
                let t = S::from_i64(s) + half;
                Some(c2.clone() * t.square() + c1.clone() * t + c0.clone())
            }
            GridForm::Linear { c1, c0 } => Some(c1.clone() * (S::from_i64(s) + half) + c0.clone()),
            GridForm::AltQuadratic { .. } => None,
        }
    }

    /// Conic parameters `(xi, eta, zeta)` satisfied by every consecutive
    /// triple and pair of this grid.
    pub fn conic(&self) -> ConicParams<S> {
        let two = S::from_i64(2);
        let (xi, eta) = match self {
            GridForm::QQuadratic { c0, q, .. } | GridForm::Exponential { c0, q, .. } => {
                let xi = -(q.clone() + q.recip());
                let eta = -((xi.clone() + two) * c0.clone());
                (xi, eta)
            }
            GridForm::Quadratic { c2, .. } => (-two.clone(), -(two * c2.clone())),
            GridForm::Linear { .. } => (-two, S::zero()),
            GridForm::AltQuadratic { offset, .. } => (two, -(S::from_i64(4) * offset.clone())),
        };
        let (x, y) = (self.eval(0), self.eval(1));
        let zeta = ConicParams::pair_zeta(&xi, &eta, &x, &y);
        ConicParams { xi, eta, zeta }
    }

    /// Representative with `|q| > 1` for q-quadratic grids (`q <-> 1/q` with
    /// `c1 <-> c2` is a relabelling).
    pub fn canonical(self) -> Self {
        match self {
            GridForm::QQuadratic { c1, c2, c0, q } if q.magnitude() < 1.0 => GridForm::QQuadratic {
                c1: c2,
                c2: c1,
                c0,
                q: q.recip(),
            },
            other => other,
        }
    }

    /// Checks the parameter constraints and that `z` takes pairwise distinct
    /// values on `lo..=hi`.
    pub fn validate(&self, lo: i64, hi: i64, tol: Tol) -> Result<()> {
        let bad_q = |q: &S| {
            tol.is_zero(q, 0.0)
                || tol.eq(q, &S::one())
                || tol.eq(q, &-S::one())
        };
        match self {
            GridForm::QQuadratic { q, .. } | GridForm::Exponential { q, .. } if bad_q(q) => {
                return Err(Error::InvalidGrid(format!("q = {q} must avoid 0, 1, -1")));
            }
            _ => {}
        }
        if hi < lo {
            return Err(Error::InvalidGrid(format!("empty window {lo}..{hi}")));
        }
        let values: Vec<S> = (lo..=hi).map(|s| self.eval(s)).collect();
        check_distinct(&values, tol)
    }

    pub fn sample(&self, s0: i64, count: usize) -> GridSamples<S> {
        GridSamples {
            s0,
            values: (0..count as i64).map(|k| self.eval(s0 + k)).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for GridForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family())?;
        for (i, (name, v)) in self.params().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, ")")
    }
}

/// First pair of equal values, as positions.
pub(crate) fn check_distinct<S: Scalar>(values: &[S], tol: Tol) -> Result<()> {
    for j in 1..values.len() {
        for i in 0..j {
            if tol.eq(&values[i], &values[j]) {
                return Err(Error::Degenerate(i, j));
            }
        }
    }
    Ok(())
}

/// `z(s-1) + z(s+1) = -xi z(s) - eta`, and consecutive pairs satisfy
/// `x^2 + y^2 + eta (x + y) + xi x y + zeta = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicParams<S> {
    pub xi: S,
    pub eta: S,
    pub zeta: S,
}

impl<S: Scalar> ConicParams<S> {
    fn pair_zeta(xi: &S, eta: &S, x: &S, y: &S) -> S {
        -(x.square() + y.square() + eta.clone() * (x.clone() + y.clone()) + xi.clone() * x.clone() * y.clone())
    }

    /// Left side of the pair relation.
    pub fn pair_residual(&self, x: &S, y: &S) -> S {
        x.square()
            + y.square()
            + self.eta.clone() * (x.clone() + y.clone())
            + self.xi.clone() * x.clone() * y.clone()
            + self.zeta.clone()
    }

    /// The same relation written as a bi-quadratic curve.
    pub fn curve(&self) -> BiQuadraticCurve<S> {
        BiQuadraticCurve::new([
            S::zero(),
            S::zero(),
            S::one(),
            self.xi.clone(),
            self.eta.clone(),
            self.zeta.clone(),
        ])
    }
}

/// Symmetric curve `a1 x^2y^2 + a2 xy(x+y) + a3 (x^2+y^2) + a4 xy + a5 (x+y) + a6`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiQuadraticCurve<S> {
    pub alpha: [S; 6],
}

impl<S: Scalar> BiQuadraticCurve<S> {
    /// Scales so that the first nonzero coefficient is one.
    pub fn new(alpha: [S; 6]) -> Self {
        let lead = alpha.iter().find(|a| !a.is_zero()).cloned();
        let alpha = match lead {
            Some(l) => alpha.map(|a| a / l.clone()),
            None => alpha,
        };
        BiQuadraticCurve { alpha }
    }

    pub fn basis(x: &S, y: &S) -> [S; 6] {
        let xy = x.clone() * y.clone();
        [
            xy.square(),
            xy.clone() * (x.clone() + y.clone()),
            x.square() + y.square(),
            xy,
            x.clone() + y.clone(),
            S::one(),
        ]
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        Self::basis(x, y)
            .into_iter()
            .zip(&self.alpha)
            .fold(S::zero(), |acc, (m, a)| acc + m * a.clone())
    }

    /// Sum of the absolute values of the terms, for relative comparisons.
    pub fn eval_scale(&self, x: &S, y: &S) -> f64 {
        Self::basis(x, y)
            .iter()
            .zip(&self.alpha)
            .map(|(m, a)| (m.clone() * a.clone()).magnitude())
            .sum()
    }

    /// Coefficients of `y^2, y, 1` once `x` is fixed.
    pub fn quadratic_in_y(&self, x: &S) -> [S; 3] {
        let [a1, a2, a3, a4, a5, a6] = self.alpha.clone();
        let x2 = x.square();
        [
            a1 * x2.clone() + a2.clone() * x.clone() + a3.clone(),
            a2 * x2.clone() + a4 * x.clone() + a5.clone(),
            a3 * x2 + a5 * x.clone() + a6,
        ]
    }
}

/// Consecutive samples `z(s0), z(s0+1), ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSamples<S> {
    pub s0: i64,
    pub values: Vec<S>,
}

impl<S: Scalar> GridSamples<S> {
    pub fn new(s0: i64, values: Vec<S>) -> Self {
        GridSamples { s0, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn s_at(&self, i: usize) -> i64 {
        self.s0 + i as i64
    }
}
