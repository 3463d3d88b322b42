//! Scalar field abstraction.
//!
//! Every algorithm in the crate is generic over [`Scalar`], which is
//! implemented for exact rationals ([`Rational`]) and for `f64`. A run picks
//! one of the two and never mixes them. Exact mode compares literally; float
//! mode compares through a [`Tol`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact arithmetic.
    const EXACT: bool;
    /// Field name used in files: `"rational"` or `"float"`.
    const FIELD: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Literal zero test (no tolerance).
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    /// Nearest `f64` (lossy for rationals).
    fn to_f64(&self) -> f64;
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn powi(&self, exp: i64) -> Self;
    /// Square root inside the field: exact mode only succeeds on perfect
    /// squares, float mode on non-negative values.
    fn sqrt(&self) -> Option<Self>;
    fn parse(text: &str) -> Result<Self>;
    /// File representation: `"p/q"` or `"p"` for rationals, a decimal literal
    /// for floats.
    fn format(&self) -> String;

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs()
            .partial_cmp(&other.abs())
            .unwrap_or(Ordering::Equal)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Relative tolerance used in float mode; ignored in exact mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol(f64);

impl Tol {
    pub const DEFAULT: f64 = 1e-10;
    pub const FLOOR: f64 = 1e-14;

    pub fn new(tol: f64) -> Self {
        if tol.is_nan() {
            return Tol(Self::DEFAULT);
        }
        Tol(tol.max(Self::FLOOR))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `|x| <= tol * max(1, scale)` in float mode, `x == 0` in exact mode.
    pub fn is_zero<S: Scalar>(self, x: &S, scale: f64) -> bool {
        if S::EXACT {
            x.is_zero()
        } else {
            x.magnitude() <= self.0 * scale.max(1.0)
        }
    }

    /// `|a - b| <= tol * max(1, |a|, |b|)` in float mode, literal equality in
    /// exact mode.
    pub fn eq<S: Scalar>(self, a: &S, b: &S) -> bool {
        if S::EXACT {
            a == b
        } else {
            let scale = a.magnitude().max(b.magnitude());
            (a.clone() - b.clone()).magnitude() <= self.0 * scale.max(1.0)
        }
    }
}

impl Default for Tol {
    fn default() -> Self {
        Tol(Self::DEFAULT)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const FIELD: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn powi(&self, exp: i64) -> Self {
        let e = i32::try_from(exp).expect("exponent out of range");
        Pow::pow(self, e)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(BigRational::new(rn, rd))
        } else {
            None
        }
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text.trim()).ok_or_else(|| Error::ParseScalar(text.to_string()))
    }

    fn format(&self) -> String {
        self.to_string()
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        Signed::abs(self).cmp(&Signed::abs(other))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const FIELD: &'static str = "float";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powi(&self, exp: i64) -> Self {
        f64::powi(*self, i32::try_from(exp).expect("exponent out of range"))
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| Error::ParseScalar(text.into()))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::ParseScalar(text.into()))?;
            return Ok(n / d);
        }
        t.parse().map_err(|_| Error::ParseScalar(text.into()))
    }

    fn format(&self) -> String {
        format!("{self:?}")
    }
}

/// Lossy conversion that survives numerators and denominators beyond `f64`
/// range.
pub fn ratio_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let n = (r.numer().abs() >> ns as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> ds as usize).to_f64().unwrap_or(1.0);
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let e = (ns - ds).clamp(-4000, 4000) as i32;
    // split the power so intermediate factors stay finite
    sign * (n / d) * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
}

/// Parses `"p/q"`, `"p"`, or a decimal literal such as `"-1.25e-3"` exactly.
fn parse_rational(t: &str) -> Option<Rational> {
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(t) {
        return Some(BigRational::from_integer(n));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let magnitude = BigInt::from_str(if all.is_empty() { "0" } else { &all }).ok()?;
    let numer = BigInt::from_biguint(sign, magnitude.magnitude().clone());
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    Some(if scale >= 0 {
        BigRational::from_integer(numer * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(numer, Pow::pow(&ten, (-scale) as u32))
    })
}

/// Exact rational approximations of `x` by continued-fraction convergents,
/// in order of increasing denominator, stopping once the denominator exceeds
/// `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(x.floor() as i64));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    out.push(BigRational::new(h.clone(), k.clone()));
    let mut frac = x - x.floor();
    for _ in 0..64 {
        if frac.abs() < 1e-300 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = BigInt::from(a as i64);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > BigInt::from(max_den) {
            break;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        out.push(BigRational::new(h.clone(), k.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(Rational::parse("3/6").unwrap(), q(1, 2));
        assert_eq!(Rational::parse("-7").unwrap(), q(-7, 1));
        assert_eq!(Rational::parse("2.5").unwrap(), q(5, 2));
        assert_eq!(Rational::parse("-1.25e-1").unwrap(), q(-1, 8));
        assert_eq!(Rational::parse(".5").unwrap(), q(1, 2));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
    }

    #[test]
    fn formats_like_files_expect() {
        assert_eq!(q(6, 3).format(), "2");
        assert_eq!(q(-1, 5).format(), "-1/5");
        assert_eq!(2.5f64.format(), "2.5");
    }

    #[test]
    fn exact_sqrt_only_on_squares() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-4, 1).sqrt(), None);
    }

    #[test]
    fn float_tolerance_is_relative_with_unit_floor() {
        let tol = Tol::new(1e-10);
        assert!(tol.eq(&1e12, &(1e12 + 1.0)));
        assert!(!tol.eq(&1.0, &(1.0 + 1e-9)));
        assert!(tol.is_zero(&1e-11, 0.0));
        assert_eq!(Tol::new(1e-20).value(), Tol::FLOOR);
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = Rational::from_i64(2).powi(3000) / Rational::from_i64(3).powi(1800);
        let expected = 3000.0 * 2f64.ln() - 1800.0 * 3f64.ln();
        assert!((ratio_to_f64(&big).ln() - expected).abs() < 1e-9);
    }

    #[test]
    fn convergents_hit_exact_fraction() {
        let c = convergents(-37.0 / 12.0, 1_000_000);
        assert!(c.contains(&q(-37, 12)));
    }
}
