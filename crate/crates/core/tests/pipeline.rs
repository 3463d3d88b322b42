mod common;

use awpoly::awoperator::{build_eigenpolys, verify_coefficients, verify_system, DifferenceSystem};
use awpoly::duality::dual_check;
use awpoly::grid::{classify_grid, Classification, GridForm};
use awpoly::{Poly, Rational, Scalar, Tol};
use common::{convert, q};

// samples -> grid -> operator -> eigenpolynomials -> verification, with
// nothing carried over but the sampled values
fn from_samples<S: Scalar>(values: Vec<S>, r1: Poly<S>, r2: Poly<S>, n: usize) -> (DifferenceSystem<S>, f64) {
    let samples = awpoly::grid::GridSamples::new(0, values);
    let Classification::Aw(grid) = classify_grid(&samples, Tol::default()).unwrap() else {
        panic!("sampled grid rejected");
    };
    let sys = DifferenceSystem::synthesize(grid, r1, r2, n, (1, 16), Tol::default()).unwrap();
    let polys = build_eigenpolys(&sys, n).unwrap();
    let report = verify_system(&sys, &polys, sys.certified);
    assert!(report.passed, "{report:?}");
    assert!(verify_coefficients(&sys, &polys).unwrap().passed);
    (sys, report.max_relative)
}

#[test]
fn q_grid_end_to_end_in_both_fields() {
    let g = GridForm::QQuadratic { c1: q(1, 1), c2: q(1, 1), c0: q(0, 1), q: q(2, 1) };
    let values: Vec<Rational> = g.sample(0, 12).values;
    let r1 = Poly::new(vec![q(0, 1), q(1, 1)]);
    let r2 = Poly::new(vec![q(0, 1), q(0, 1), q(5, 2)]);
    let (exact, residual) = from_samples(values.clone(), r1.clone(), r2.clone(), 6);
    assert_eq!(residual, 0.0);

    let to_f = |p: &Poly<Rational>| Poly::new(p.coeffs().iter().map(|c| c.to_f64()).collect());
    let fv: Vec<f64> = values.iter().map(Scalar::to_f64).collect();
    let (float, residual) = from_samples(fv, to_f(&r1), to_f(&r2), 6);
    assert!(residual < 1e-10);
    for n in 0..=6 {
        let (a, b) = (exact.lambda(n).unwrap().to_f64(), float.lambda(n).unwrap());
        assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "lambda_{n}: {a} vs {b}");
    }
}

#[test]
fn linear_grid_agrees_across_fields() {
    let exact = common::linear_system::<Rational>(5, (1, 20));
    let float = common::linear_system::<f64>(5, (1, 20));
    let pe = build_eigenpolys(&exact, 5).unwrap();
    let pf = build_eigenpolys(&float, 5).unwrap();
    for (a, b) in pe.polys.iter().zip(&pf.polys) {
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            assert!((x.to_f64() - y).abs() <= 1e-9 * x.to_f64().abs().max(1.0));
        }
    }
    assert_eq!(convert::<Rational, f64>(&exact.grid), float.grid);
}

#[test]
fn trivial_dual_restriction() {
    let sys = common::linear_system::<Rational>(3, (1, 20));
    let report = dual_check(&sys, 1, 0, &[]).unwrap();
    assert!(report.passed());
    // a single node still drops A(1); only the spectrum diagnostic notices
    assert_eq!(report.overrides.len(), 1);
    assert!(!report.spectrum.passed);
}

#[test]
fn eigenpolynomials_are_monic_with_distinct_eigenvalues() {
    let sys = common::q2_system::<Rational>(8, (1, 20));
    let set = build_eigenpolys(&sys, 8).unwrap();
    for (n, p) in set.polys.iter().enumerate() {
        assert_eq!(p.degree(), Some(n));
        assert!(p.is_monic());
    }
    for i in 0..set.lambda.len() {
        for j in i + 1..set.lambda.len() {
            assert_ne!(set.lambda[i], set.lambda[j]);
        }
    }
}
