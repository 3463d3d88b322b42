//! Dense univariate polynomials over a [`Scalar`] field.
//!
//! Coefficients are stored in ascending degree order. The zero polynomial has
//! an empty coefficient vector; otherwise the last coefficient is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        let mut p = Poly { coeffs };
        p.strip();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![S::zero(), S::one()])
    }

    pub fn monomial(coeff: S, degree: usize) -> Self {
        let mut coeffs = vec![S::zero(); degree + 1];
        coeffs[degree] = coeff;
        Poly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    fn strip(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Drops trailing coefficients that are negligible relative to the largest
    /// coefficient. No-op in exact mode.
    pub fn chop(mut self, tol: Tol) -> Self {
        if S::EXACT {
            return self;
        }
        let scale = self.max_abs();
        while self.coeffs.last().is_some_and(|c| tol.is_zero(c, scale)) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == S::one())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Sum of `|c_k| |x|^k`, the natural scale for judging a float evaluation.
    pub fn eval_scale(&self, x: &S) -> f64 {
        let ax = x.magnitude();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * ax + c.magnitude())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Polynomial long division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly<S>) -> (Poly<S>, Poly<S>) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - d_deg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d_deg].clone() / lead.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            rem[k + d_deg] = S::zero();
            quot[k] = c;
        }
        rem.truncate(d_deg);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm. Meant for
    /// exact mode; in float mode remainders below `tol` are treated as zero.
    pub fn gcd(&self, other: &Poly<S>, tol: Tol) -> Poly<S> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            let r = if S::EXACT {
                r
            } else {
                let scale = a.max_abs().max(b.max_abs());
                if r.coeffs.iter().all(|c| tol.is_zero(c, scale)) {
                    Poly::zero()
                } else {
                    r
                }
            };
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;

    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;

    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;

    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;

    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < S::zero();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == S::one();
            match (k, unit) {
                (0, _) => write!(f, "{}", mag.format())?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", mag.format())?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{}*x^{k}", mag.format())?,
            }
        }
        Ok(())
    }
}

/// Unique polynomial of degree `< points.len()` through the given points,
/// built from Newton divided differences.
pub fn interpolate<S: Scalar>(points: &[(S, S)], tol: Tol) -> Result<Poly<S>> {
    if points.is_empty() {
        return Ok(Poly::zero());
    }
    for i in 0..points.len() {
        for j in 0..i {
            if tol.eq(&points[i].0, &points[j].0) {
                return Err(Error::DuplicateAbscissa(j, i));
            }
        }
    }
    let n = points.len();
    let xs: Vec<S> = points.iter().map(|p| p.0.clone()).collect();
    let mut table: Vec<S> = points.iter().map(|p| p.1.clone()).collect();
    // table[i] becomes f[x_0, ..., x_i]
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (table[i].clone() - table[i - 1].clone())
                / (xs[i].clone() - xs[i - level].clone());
        }
    }
    let mut p = Poly::constant(table[n - 1].clone());
    for k in (0..n - 1).rev() {
        let shifted = &p.mul_x() - &p.scale(&xs[k]);
        p = &shifted + &Poly::constant(table[k].clone());
    }
    Ok(p.chop(tol))
}
