//! Seeded generators of finite systems with rational spectra.

use rand::seq::SliceRandom;
use rand::Rng;

use super::JacobiSystem;
use crate::awoperator::DifferenceSystem;
use crate::error::{Error, Result};
use crate::grid::GridForm;
use crate::poly::Poly;
use crate::scalar::{Scalar, Tol};

const ATTEMPTS: usize = 500;

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn random_grid<S: Scalar, R: Rng>(rng: &mut R) -> GridForm<S> {
    let i = |v: i64| S::from_i64(v);
    match rng.gen_range(0..4) {
        0 => GridForm::Linear { c1: i(nonzero(rng, 3)), c0: i(rng.gen_range(-3..=3)) },
        1 => GridForm::Quadratic { c2: i(nonzero(rng, 2)), c1: i(rng.gen_range(-3..=3)), c0: i(rng.gen_range(-3..=3)) },
        2 => GridForm::Exponential { c1: i(nonzero(rng, 3)), c0: i(rng.gen_range(-3..=3)), q: i(rng.gen_range(2..=3)) },
        _ => GridForm::QQuadratic {
            c1: i(nonzero(rng, 3)),
            c2: i(nonzero(rng, 3)),
            c0: i(rng.gen_range(-3..=3)),
            q: i(rng.gen_range(2..=3)),
        },
    }
}

/// Seeds with `R1 = a x + b` and `R2 = c x^2 + d x + e`, where `d` and `e`
/// force `C(0) = 0` and `A(N) = 0`.
fn leonard_seed<S: Scalar, R: Rng>(rng: &mut R, grid: &GridForm<S>, n: usize) -> Option<(Poly<S>, Poly<S>)> {
    let r1 = Poly::new(vec![S::from_i64(rng.gen_range(-4..=4)), S::from_i64(nonzero(rng, 4))]);
    let c = S::from_i64(nonzero(rng, 4));
    let n = n as i64;
    let (z0, z1, zn, zn1) = (grid.eval(0), grid.eval(1), grid.eval(n), grid.eval(n - 1));
    let gap = z0.clone() - zn.clone();
    if gap.is_zero() {
        return None;
    }
    let t0 = z1 * r1.eval(&z0) - c.clone() * z0.square();
    let tn = zn1 * r1.eval(&zn) - c.clone() * zn.square();
    let d = (t0.clone() - tn) / gap;
    let e = t0 - d.clone() * z0;
    Some((r1, Poly::new(vec![e, d, c])))
}

/// A random difference system whose restriction to `0..=N` is a finite
/// (Leonard) system: `C(0) = A(N) = 0` and the whole window is certified.
pub fn leonard_system<S: Scalar, R: Rng>(rng: &mut R, n: usize, tol: Tol) -> Result<DifferenceSystem<S>> {
    if n == 0 {
        return Err(Error::WindowTooSmall { need: 2, got: 1 });
    }
    for _ in 0..ATTEMPTS {
        let grid = random_grid::<S, R>(rng);
        let Some((r1, r2)) = leonard_seed(rng, &grid, n) else { continue };
        let Ok(sys) = DifferenceSystem::synthesize(grid, r1, r2, n, (0, n as i64), tol) else { continue };
        if sys.certified != (0, n as i64) || !sys.skipped.is_empty() {
            continue;
        }
        let boundary = (sys.coefficients(0), sys.coefficients(n as i64));
        let (Ok(first), Ok(last)) = boundary else { continue };
        if !tol.is_zero(&first.c, first.b.magnitude()) || !tol.is_zero(&last.a, last.b.magnitude()) {
            continue;
        }
        if crate::awoperator::build_eigenpolys(&sys, n).is_err() {
            continue;
        }
        return Ok(sys);
    }
    Err(Error::InvalidSeed(format!("no finite system of size {n} found in {ATTEMPTS} attempts")))
}

/// Tridiagonal data built from a chosen spectrum: distinct integer nodes and
/// positive weights give the monic recurrence by Stieltjes' procedure, which
/// is then split as `u_{s+1} = A(s) C(s+1)` with random nonzero `A(s)`.
/// Returns the system and its nodes in ascending order.
pub fn inverse_jacobi<S: Scalar, R: Rng>(rng: &mut R, n: usize) -> (JacobiSystem<S>, Vec<S>) {
    let span = 4 * (n as i64 + 1);
    let mut pool: Vec<i64> = (-span..=span).collect();
    pool.shuffle(rng);
    let mut ints: Vec<i64> = pool[..=n].to_vec();
    ints.sort_unstable();
    let nodes: Vec<S> = ints.iter().map(|&x| S::from_i64(x)).collect();
    let rho: Vec<S> = (0..=n).map(|_| S::from_i64(rng.gen_range(1..=9))).collect();

    let norm = |v: &[S]| -> S { v.iter().zip(&rho).fold(S::zero(), |acc, (p, r)| acc + r.clone() * p.square()) };
    let mut prev: Vec<S> = vec![S::zero(); n + 1];
    let mut cur: Vec<S> = vec![S::one(); n + 1];
    let (mut b, mut u) = (Vec::with_capacity(n + 1), Vec::with_capacity(n));
    let mut h_prev = S::one();
    for k in 0..=n {
        let h = norm(&cur);
        let xh = cur
            .iter()
            .zip(&rho)
            .zip(&nodes)
            .fold(S::zero(), |acc, ((p, r), x)| acc + r.clone() * x.clone() * p.square());
        let bk = xh / h.clone();
        let uk = if k > 0 { h.clone() / h_prev } else { S::zero() };
        if k > 0 {
            u.push(uk.clone());
        }
        let next: Vec<S> = (0..=n)
            .map(|i| (nodes[i].clone() - bk.clone()) * cur[i].clone() - uk.clone() * prev[i].clone())
            .collect();
        b.push(bk);
        prev = std::mem::replace(&mut cur, next);
        h_prev = h;
    }
    let a: Vec<S> = (0..n).map(|_| S::from_i64(nonzero(rng, 5))).collect();
    let c: Vec<S> = u.iter().zip(&a).map(|(u, a)| u.clone() / a.clone()).collect();
    (JacobiSystem::new(a, b, c).expect("consistent shapes"), nodes)
}
