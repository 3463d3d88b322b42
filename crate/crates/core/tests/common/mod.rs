#![allow(dead_code)]

use awpoly::awoperator::DifferenceSystem;
use awpoly::grid::GridForm;
use awpoly::{Poly, Rational, Scalar, Tol};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

pub fn linear_system<S: Scalar>(n: usize, window: (i64, i64)) -> DifferenceSystem<S> {
    DifferenceSystem::synthesize(
        GridForm::Linear { c1: S::one(), c0: S::zero() },
        Poly::new(vec![S::zero(), S::one()]),
        Poly::new(vec![S::zero(), S::zero(), S::from_i64(2)]),
        n,
        window,
        Tol::default(),
    )
    .expect("linear-grid system")
}

pub fn q2_system<S: Scalar>(n: usize, window: (i64, i64)) -> DifferenceSystem<S> {
    DifferenceSystem::synthesize(
        GridForm::QQuadratic { c1: S::one(), c2: S::one(), c0: S::zero(), q: S::from_i64(2) },
        Poly::new(vec![S::zero(), S::one()]),
        Poly::new(vec![S::zero(), S::zero(), S::from_ratio(5, 2)]),
        n,
        window,
        Tol::default(),
    )
    .expect("q-quadratic system")
}

/// Small nonzero rational `p / d`.
pub fn small<R: Rng>(rng: &mut R) -> (i64, i64) {
    loop {
        let p = rng.gen_range(-9..=9);
        if p != 0 {
            return (p, rng.gen_range(1..=5));
        }
    }
}

/// Modulus with `|q| > 1`.
pub fn modulus<R: Rng>(rng: &mut R) -> (i64, i64) {
    const CHOICES: [(i64, i64); 6] = [(2, 1), (3, 1), (3, 2), (5, 2), (4, 3), (5, 3)];
    let (n, d) = CHOICES[rng.gen_range(0..CHOICES.len())];
    if rng.gen_bool(0.5) {
        (-n, d)
    } else {
        (n, d)
    }
}

pub const FAMILIES: [&str; 5] = ["QQuadratic", "Quadratic", "AltQuadratic", "Linear", "Exponential"];

/// Random canonical grid of the named family with nonzero rational
/// parameters.
pub fn random_grid<S: Scalar, R: Rng>(rng: &mut R, family: &str) -> GridForm<S> {
    let mut p = || {
        let (n, d) = small(rng);
        S::from_ratio(n, d)
    };
    let (c1, c2, c0) = (p(), p(), p());
    let m = {
        let (n, d) = modulus(rng);
        S::from_ratio(n, d)
    };
    match family {
        "QQuadratic" => GridForm::QQuadratic { c1, c2, c0, q: m },
        "Quadratic" => GridForm::Quadratic { c2, c1, c0 },
        "AltQuadratic" => GridForm::AltQuadratic { c1, c0, offset: c2 },
        "Linear" => GridForm::Linear { c1, c0 },
        "Exponential" => GridForm::Exponential { c1, c0, q: m },
        other => panic!("unknown family {other}"),
    }
}

/// Same parameters in another field.
pub fn convert<S: Scalar, T: Scalar>(g: &GridForm<S>) -> GridForm<T> {
    let c = |x: &S| T::parse(&x.format()).expect("scalar literal");
    match g {
        GridForm::QQuadratic { c1, c2, c0, q } => GridForm::QQuadratic { c1: c(c1), c2: c(c2), c0: c(c0), q: c(q) },
        GridForm::Quadratic { c2, c1, c0 } => GridForm::Quadratic { c2: c(c2), c1: c(c1), c0: c(c0) },
        GridForm::AltQuadratic { c1, c0, offset } => GridForm::AltQuadratic { c1: c(c1), c0: c(c0), offset: c(offset) },
        GridForm::Linear { c1, c0 } => GridForm::Linear { c1: c(c1), c0: c(c0) },
        GridForm::Exponential { c1, c0, q } => GridForm::Exponential { c1: c(c1), c0: c(c0), q: c(q) },
    }
}

/// True when the first `count` values from `s0` are pairwise distinct.
pub fn distinct<S: Scalar>(g: &GridForm<S>, count: usize) -> bool {
    let v = g.sample(0, count).values;
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}
