//! The second-order difference operator synthesized from `(R1, R2)` on a
//! grid, its polynomial eigenfunctions, and their verification.

mod verify;

pub use verify::{
    magnus_check, magnus_check_sampled, verify_coefficients, verify_system, CoefficientReport, MagnusReport, VerifyReport,
};

use crate::error::{Error, Result};
use crate::grid::{ConicParams, GridForm};
use crate::poly::{interpolate, Poly};
use crate::scalar::{Scalar, Tol};
use crate::spectral::{
    build_r_sequence, omega_closed_form, uv_from_conic, uv_from_r, RSeq, SpectralSeq, UVRational,
};

/// `(A(s), C(s))` from the seed polynomials:
/// `A1 = (R2 - z(s-1) R1) / (z(s+1) - z(s-1))`,
/// `C1 = (z(s+1) R1 - R2) / (z(s+1) - z(s-1))` at `z(s)`, then
/// `A = A1 / (z(s+1) - z(s))` and `C = -C1 / (z(s) - z(s-1))`.
pub fn synth_ac<S: Scalar>(grid: &GridForm<S>, r1: &Poly<S>, r2: &Poly<S>, s: i64, tol: Tol) -> Result<(S, S)> {
    let (zm, z, zp) = (grid.eval(s - 1), grid.eval(s), grid.eval(s + 1));
    if tol.eq(&zp, &zm) || tol.eq(&zp, &z) || tol.eq(&z, &zm) {
        return Err(Error::WindowDegenerate { s });
    }
    let (p1, p2) = (r1.eval(&z), r2.eval(&z));
    let span = zp.clone() - zm.clone();
    let a1 = (p2.clone() - zm.clone() * p1.clone()) / span.clone();
    let c1 = (zp.clone() * p1 - p2) / span;
    Ok((a1 / (zp - z.clone()), -(c1 / (z - zm))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    A,
    C,
}

/// Fault `value * factor + shift` applied to one coefficient at one node;
/// `B` keeps its unperturbed value so the fault is visible to every check.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation<S> {
    pub target: Coefficient,
    pub s: i64,
    pub factor: S,
    pub shift: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceSystem<S> {
    pub grid: GridForm<S>,
    pub r1: Poly<S>,
    pub r2: Poly<S>,
    pub conic: ConicParams<S>,
    pub spectrum: SpectralSeq<S>,
    pub r_seq: RSeq<S>,
    pub uv: UVRational<S>,
    /// Requested window.
    pub window: (i64, i64),
    /// Longest run of the window on which the coefficients are defined and
    /// `A(s-1) C(s) != 0` between neighbours.
    pub certified: (i64, i64),
    /// Window nodes where the three-point stencil degenerates.
    pub skipped: Vec<i64>,
    pub tol: Tol,
    pub perturbations: Vec<Perturbation<S>>,
}

impl<S: Scalar> DifferenceSystem<S> {
    /// Builds the operator for eigenvalues up to `n_max` and certifies the
    /// part of `window` on which it is irreducible.
    pub fn synthesize(
        grid: GridForm<S>,
        r1: Poly<S>,
        r2: Poly<S>,
        n_max: usize,
        window: (i64, i64),
        tol: Tol,
    ) -> Result<Self> {
        let (lo, hi) = window;
        grid.validate(lo, lo, tol)?;
        if hi < lo {
            return Err(Error::WindowTooSmall { need: 1, got: 0 });
        }
        let conic = grid.conic();
        let (v, u) = uv_from_conic(&conic);
        let spectrum = omega_closed_form(conic.xi.clone(), r1.leading(), r2.leading(), n_max, tol)?;
        let r_seq = build_r_sequence(&r1, &r2, &v, &u, (n_max + 2).max(5), tol)?;
        let uv = uv_from_r(r_seq.get(2), r_seq.get(3), r_seq.get(4), r_seq.get(5), tol)?;

        let coeffs: Vec<Option<(S, S)>> = (lo..=hi).map(|s| synth_ac(&grid, &r1, &r2, s, tol).ok()).collect();
        let skipped: Vec<i64> = (lo..=hi).zip(&coeffs).filter(|(_, c)| c.is_none()).map(|(s, _)| s).collect();
        let mut best: Option<(i64, i64)> = None;
        let mut start: Option<i64> = None;
        for (i, s) in (lo..=hi).enumerate() {
            let Some((_, c)) = &coeffs[i] else {
                start = None;
                continue;
            };
            let joins = i > 0
                && start.is_some()
                && coeffs[i - 1]
                    .as_ref()
                    .is_some_and(|(a_prev, _)| !tol.is_zero(&(a_prev.clone() * c.clone()), 0.0));
            if !joins {
                start = Some(s);
            }
            let run = (start.unwrap(), s);
            if best.map_or(true, |(a, b)| run.1 - run.0 > b - a) {
                best = Some(run);
            }
        }
        let certified = best.ok_or(Error::WindowTooSmall { need: 1, got: 0 })?;
        grid.validate(certified.0, certified.1, tol)?;
        Ok(DifferenceSystem {
            grid,
            r1,
            r2,
            conic,
            spectrum,
            r_seq,
            uv,
            window,
            certified,
            skipped,
            tol,
            perturbations: Vec::new(),
        })
    }

    pub fn with_perturbation(mut self, target: Coefficient, s: i64, factor: S) -> Self {
        self.perturbations.push(Perturbation { target, s, factor, shift: S::zero() });
        self
    }

    /// Additive fault, for coefficients that vanish.
    pub fn with_shift(mut self, target: Coefficient, s: i64, shift: S) -> Self {
        self.perturbations.push(Perturbation { target, s, factor: S::one(), shift });
        self
    }

    pub fn z(&self, s: i64) -> S {
        self.grid.eval(s)
    }

    pub fn coefficients(&self, s: i64) -> Result<Coefficients<S>> {
        let (a0, c0) = synth_ac(&self.grid, &self.r1, &self.r2, s, self.tol)?;
        let b = -(a0.clone() + c0.clone());
        let (mut a, mut c) = (a0, c0);
        for p in self.perturbations.iter().filter(|p| p.s == s) {
            match p.target {
                Coefficient::A => a = a * p.factor.clone() + p.shift.clone(),
                Coefficient::C => c = c * p.factor.clone() + p.shift.clone(),
            }
        }
        Ok(Coefficients { a, b, c })
    }

    /// `lambda_n` from the closed form (valid beyond the materialized range).
    pub fn lambda(&self, n: usize) -> Result<S> {
        Ok(match self.spectrum.lambda.get(n) {
            Some(l) => l.clone(),
            None => self.spectrum.regime.lambda(n as i64),
        })
    }

    /// Certified, non-skipped nodes of `window`, in order.
    pub fn admissible_nodes(&self, window: (i64, i64)) -> Vec<i64> {
        let lo = window.0.max(self.certified.0);
        let hi = window.1.min(self.certified.1);
        (lo..=hi).filter(|s| !self.skipped.contains(s)).collect()
    }

    /// `A(s) [p(z(s+1)) - p(z(s))] - C(s) [p(z(s)) - p(z(s-1))]`.
    pub fn apply_operator(&self, p: &Poly<S>, s: i64) -> Result<S> {
        let Coefficients { a, c, .. } = self.coefficients(s)?;
        let (pm, p0, pp) = (p.eval(&self.z(s - 1)), p.eval(&self.z(s)), p.eval(&self.z(s + 1)));
        Ok(a * (pp - p0.clone()) - c * (p0 - pm))
    }
}

/// Column `k` holds the monomial coefficients of the operator image of
/// `z^k`, interpolated at `n + 1` admissible nodes and checked on up to two
/// more. The matrix must be upper triangular with diagonal `lambda_k`.
pub fn operator_matrix<S: Scalar>(system: &DifferenceSystem<S>, n: usize) -> Result<Vec<Vec<S>>> {
    let tol = system.tol;
    let nodes = system.admissible_nodes(system.certified);
    if nodes.len() < n + 1 {
        return Err(Error::WindowTooSmall { need: n + 1, got: nodes.len() });
    }
    let used = &nodes[..nodes.len().min(n + 3)];
    let zs: Vec<S> = used.iter().map(|&s| system.z(s)).collect();
    let mut m = vec![vec![S::zero(); n + 1]; n + 1];
    for k in 0..=n {
        let zk = Poly::monomial(S::one(), k);
        let mut points = Vec::with_capacity(used.len());
        for (&s, z) in used.iter().zip(&zs) {
            points.push((z.clone(), system.apply_operator(&zk, s)?));
        }
        let image = interpolate(&points[..n + 1], tol)?;
        for (x, y) in &points[n + 1..] {
            let r = image.eval(x) - y.clone();
            if !tol.is_zero(&r, image.eval_scale(x)) {
                return Err(Error::NotPolynomial { n: k, residual: r.format() });
            }
        }
        let scale = image.max_abs();
        for i in 0..=n {
            let v = image.coeff(i);
            if i > k && !tol.is_zero(&v, scale) {
                return Err(Error::NotTriangular { column: k });
            }
            if i <= k {
                m[i][k] = v;
            }
        }
        if !tol.eq(&m[k][k], &system.lambda(k)?) {
            return Err(Error::DiagonalMismatch { k });
        }
    }
    Ok(m)
}

/// Monic eigenpolynomials `P_0..P_N` and their eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPolySet<S> {
    pub polys: Vec<Poly<S>>,
    pub lambda: Vec<S>,
}

impl<S: Scalar> EigenPolySet<S> {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// Back-substitution on the triangular operator matrix with the leading
/// coefficient fixed to one.
pub fn build_eigenpolys<S: Scalar>(system: &DifferenceSystem<S>, n_max: usize) -> Result<EigenPolySet<S>> {
    let tol = system.tol;
    let m = operator_matrix(system, n_max)?;
    let lambda: Vec<S> = (0..=n_max).map(|k| m[k][k].clone()).collect();
    let mut polys = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut c = vec![S::zero(); n + 1];
        c[n] = S::one();
        for i in (0..n).rev() {
            let gap = lambda[n].clone() - lambda[i].clone();
            if tol.is_zero(&gap, lambda[n].magnitude().max(lambda[i].magnitude())) {
                return Err(Error::SpectrumDegenerate { n: i, m: n });
            }
            let acc = (i + 1..=n).fold(S::zero(), |acc, k| acc + m[i][k].clone() * c[k].clone());
            c[i] = acc / gap;
        }
        polys.push(Poly::new(c).chop(tol));
    }
    Ok(EigenPolySet { polys, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    pub(crate) fn linear_system(n_max: usize) -> DifferenceSystem<Rational> {
        DifferenceSystem::synthesize(
            GridForm::Linear { c1: q(1, 1), c0: q(0, 1) },
            Poly::from_i64(&[0, 1]),
            Poly::from_i64(&[0, 0, 2]),
            n_max,
            (1, 20),
            Tol::default(),
        )
        .unwrap()
    }

    fn q2_system(n_max: usize) -> DifferenceSystem<Rational> {
        DifferenceSystem::synthesize(
            GridForm::QQuadratic { c1: q(1, 1), c2: q(1, 1), c0: q(0, 1), q: q(2, 1) },
            Poly::from_i64(&[0, 1]),
            Poly::new(vec![q(0, 1), q(0, 1), q(5, 2)]),
            n_max,
            (1, 20),
            Tol::default(),
        )
        .unwrap()
    }

    #[test]
    fn linear_grid_coefficients() {
        let sys = linear_system(6);
        for s in 1..=20i64 {
            let c = sys.coefficients(s).unwrap();
            assert_eq!(c.a, q(s * (s + 1), 2));
            assert_eq!(c.c, q(s * (s - 1), 2));
            assert_eq!(c.b, q(-s * s, 1));
        }
        assert_eq!(sys.certified, (1, 20));
    }

    #[test]
    fn zero_coefficient_limits_certified_window() {
        let sys = DifferenceSystem::synthesize(
            GridForm::Linear { c1: q(1, 1), c0: q(0, 1) },
            Poly::from_i64(&[0, 1]),
            Poly::from_i64(&[0, 0, 2]),
            3,
            (-3, 10),
            Tol::default(),
        )
        .unwrap();
        assert_eq!(sys.coefficients(0).unwrap().a, q(0, 1));
        assert_eq!(sys.certified, (1, 10));
    }

    #[test]
    fn operator_on_monomials() {
        let sys = linear_system(3);
        assert_eq!(sys.apply_operator(&Poly::one(), 5).unwrap(), q(0, 1));
        for s in 1..6 {
            assert_eq!(sys.apply_operator(&Poly::x(), s).unwrap(), q(s, 1));
        }
        assert_eq!(sys.apply_operator(&Poly::monomial(q(1, 1), 3), 2).unwrap(), q(50, 1));
    }

    #[test]
    fn operator_matrix_examples() {
        let sys = linear_system(3);
        assert_eq!(operator_matrix(&sys, 0).unwrap(), vec![vec![q(0, 1)]]);
        let m = operator_matrix(&sys, 1).unwrap();
        assert_eq!(m, vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        let m = operator_matrix(&sys, 3).unwrap();
        assert_eq!((0..4).map(|k| m[k][k].clone()).collect::<Vec<_>>(), [0, 1, 3, 6].map(|v| q(v, 1)));
        assert_eq!(m[1][3], q(1, 1));
    }

    #[test]
    fn eigenpolys_of_worked_systems() {
        let p = build_eigenpolys(&linear_system(3), 3).unwrap();
        assert_eq!(p.polys[0], Poly::one());
        assert_eq!(p.polys[1], Poly::x());
        assert_eq!(p.polys[2], Poly::from_i64(&[0, 0, 1]));
        assert_eq!(p.polys[3], Poly::new(vec![q(0, 1), q(1, 5), q(0, 1), q(1, 1)]));
        let p = build_eigenpolys(&q2_system(2), 2).unwrap();
        assert_eq!(p.polys[1], Poly::x());
    }

    #[test]
    fn q_grid_synthesis_at_one() {
        let sys = q2_system(2);
        let c = sys.coefficients(1).unwrap();
        // z(0) = 2, z(1) = 5/2, z(2) = 17/4
        let (zm, z, zp) = (q(2, 1), q(5, 2), q(17, 4));
        let a1 = (q(5, 2) * z.clone() * z.clone() - zm.clone() * z.clone()) / (zp.clone() - zm.clone());
        assert_eq!(c.a, a1 / (zp - z));
    }

    #[test]
    fn degenerate_seed_spectrum() {
        let e = DifferenceSystem::synthesize(
            GridForm::Linear { c1: q(1, 1), c0: q(0, 1) },
            Poly::from_i64(&[0, 1]),
            Poly::from_i64(&[0, 0, -1]),
            4,
            (1, 20),
            Tol::default(),
        );
        assert_eq!(e.unwrap_err(), Error::SpectrumDegenerate { n: 0, m: 2 });
    }
}
