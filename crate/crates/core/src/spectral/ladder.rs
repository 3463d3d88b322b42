use crate::error::{Error, Result};
use crate::grid::ConicParams;
use crate::poly::Poly;
use crate::scalar::{Scalar, Tol};

/// `v = -xi x - eta`, `u = x^2 + eta x + zeta`.
pub fn uv_from_conic<S: Scalar>(c: &ConicParams<S>) -> (Poly<S>, Poly<S>) {
    let v = Poly::new(vec![-c.eta.clone(), -c.xi.clone()]);
    let u = Poly::new(vec![c.zeta.clone(), c.eta.clone(), S::one()]);
    (v, u)
}

/// `R_1, R_2, ...` generated by `R_{n+2} = v R_{n+1} - u R_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RSeq<S> {
    /// `polys[k]` is `R_{k+1}`.
    pub polys: Vec<Poly<S>>,
    pub v: Poly<S>,
    pub u: Poly<S>,
}

impl<S: Scalar> RSeq<S> {
    /// `R_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> &Poly<S> {
        &self.polys[n - 1]
    }

    /// Leading coefficients, which are the increments `omega_n`.
    pub fn leading(&self) -> Vec<S> {
        self.polys.iter().map(Poly::leading).collect()
    }
}

pub fn build_r_sequence<S: Scalar>(
    r1: &Poly<S>,
    r2: &Poly<S>,
    v: &Poly<S>,
    u: &Poly<S>,
    n_max: usize,
    tol: Tol,
) -> Result<RSeq<S>> {
    if r1.degree() != Some(1) {
        return Err(Error::InvalidSeed(format!("R1 = {r1} must have degree 1")));
    }
    if r2.degree() != Some(2) {
        return Err(Error::InvalidSeed(format!("R2 = {r2} must have degree 2")));
    }
    let mut polys = vec![r1.clone(), r2.clone()];
    while polys.len() < n_max {
        let k = polys.len();
        let next = (&(v * &polys[k - 1]) - &(u * &polys[k - 2])).chop(tol);
        if next.degree() != Some(k + 1) {
            return Err(Error::DegreeCollapse { n: k + 1 });
        }
        polys.push(next);
    }
    polys.truncate(n_max.max(2));
    Ok(RSeq { polys, v: v.clone(), u: u.clone() })
}

/// `v` and `u` as ratios of the pi polynomials, after reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct UVRational<S> {
    pub pi6: Poly<S>,
    pub pi7: Poly<S>,
    pub pi8: Poly<S>,
    /// Reduced `pi7 / pi6` with monic denominator.
    pub v: (Poly<S>, Poly<S>),
    /// Reduced `-pi8 / pi6` with monic denominator.
    pub u: (Poly<S>, Poly<S>),
}

impl<S: Scalar> UVRational<S> {
    /// `(v, u)` when both ratios collapsed to polynomials.
    pub fn polynomials(&self) -> Option<(Poly<S>, Poly<S>)> {
        let poly = |(num, den): &(Poly<S>, Poly<S>)| (den.degree() == Some(0)).then(|| num.scale(&den.leading().recip()));
        Some((poly(&self.v)?, poly(&self.u)?))
    }
}

fn reduce<S: Scalar>(num: &Poly<S>, den: &Poly<S>, tol: Tol) -> (Poly<S>, Poly<S>) {
    let (quot, rem) = num.div_rem(den);
    let rem = rem.chop(Tol::new(tol.value() * 10.0));
    if rem.is_zero() || (!S::EXACT && rem.max_abs() <= tol.value() * num.max_abs().max(1.0)) {
        return (quot.chop(tol), Poly::one());
    }
    let g = num.gcd(den, tol);
    let (n, _) = num.div_rem(&g);
    let (d, _) = den.div_rem(&g);
    let lead = d.leading().recip();
    (n.scale(&lead).chop(tol), d.scale(&lead).chop(tol))
}

/// Recovers `v = pi7 / pi6` and `u = -pi8 / pi6` from `R_2..R_5`; the two
/// defining equations must be independent (`pi6` not identically zero).
pub fn uv_from_r<S: Scalar>(r2: &Poly<S>, r3: &Poly<S>, r4: &Poly<S>, r5: &Poly<S>, tol: Tol) -> Result<UVRational<S>> {
    let pi6 = (&(r3 * r3) - &(r2 * r4)).chop(tol);
    if pi6.is_zero() {
        return Err(Error::IrreducibilityViolated);
    }
    let pi7 = (&(r4 * r3) - &(r2 * r5)).chop(tol);
    let pi8 = (&(r3 * r5) - &(r4 * r4)).chop(tol);
    let v = reduce(&pi7, &pi6, tol);
    let u = reduce(&-&pi8, &pi6, tol);
    Ok(UVRational { pi6, pi7, pi8, v, u })
}
