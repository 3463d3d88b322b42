use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tol};

/// `Y_n` from `Y_{n+1} = v Y_n - u Y_{n-1}`, `Y_0 = 0`, `Y_1 = 1`.
pub fn y_recurrence<S: Scalar>(u: &S, v: &S, n: usize) -> S {
    let (mut prev, mut cur) = (S::zero(), S::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = v.clone() * cur.clone() - u.clone() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(z+^n - z-^n) / (z+ - z-)`.
pub fn y_direct<S: Scalar>(z_minus: &S, z_plus: &S, n: usize, tol: Tol) -> Result<S> {
    if tol.eq(z_minus, z_plus) {
        return Err(Error::DegenerateWindow);
    }
    let n = n as i64;
    Ok((z_plus.powi(n) - z_minus.powi(n)) / (z_plus.clone() - z_minus.clone()))
}

/// Polynomial in the symbols `u`, `v` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UvPoly {
    /// `(deg_u, deg_v) -> coefficient`, zero entries removed.
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl UvPoly {
    pub fn zero() -> Self {
        UvPoly::default()
    }

    pub fn one() -> Self {
        Self::term(1, 0, 0)
    }

    pub fn term(coeff: i64, deg_u: u32, deg_v: u32) -> Self {
        let mut p = UvPoly::zero();
        p.add_term((deg_u, deg_v), BigInt::from(coeff));
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Multiplies by `u^du v^dv` and by `coeff`.
    fn shifted(&self, coeff: i64, du: u32, dv: u32) -> Self {
        let mut out = UvPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term((a + du, b + dv), c * coeff);
        }
        out
    }

    fn plus(mut self, other: &UvPoly) -> Self {
        for (&k, c) in &other.terms {
            self.add_term(k, c.clone());
        }
        self
    }

    pub fn eval<S: Scalar>(&self, u: &S, v: &S) -> S {
        self.terms.iter().fold(S::zero(), |acc, (&(a, b), c)| {
            let c = S::parse(&c.to_string()).expect("integer coefficient");
            acc + c * u.powi(a as i64) * v.powi(b as i64)
        })
    }
}

impl fmt::Display for UvPoly {
    /// Terms by descending degree in `v`, e.g. `v^3 - 2*u*v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.1, a.0).cmp(&(a.1, b.0)));
        for (i, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let monomial = key.0 + key.1 > 0;
            if !mag.is_one() || !monomial {
                factors.push(mag.to_string());
            }
            for (sym, d) in [("u", key.0), ("v", key.1)] {
                match d {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{d}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `Y_n` as a polynomial in `u` and `v`.
pub fn y_symbolic(n: usize) -> UvPoly {
    let (mut prev, mut cur) = (UvPoly::zero(), UvPoly::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = cur.shifted(1, 0, 1).plus(&prev.shifted(-1, 1, 0));
        prev = cur;
        cur = next;
    }
    cur
}
