mod common;

use awpoly::duality::{eigenvalues, random::inverse_jacobi, weights};
use awpoly::grid::{classify_grid, Classification};
use awpoly::spectral::{y_direct, y_recurrence, y_symbolic};
use awpoly::{interpolate, Poly, Rational, Scalar, Tol};
use common::{q, random_grid, FAMILIES};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| q(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 0..max_len).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chebyshev_recurrence_matches_root_form(zm in rational(), zp in rational(), n in 0usize..12) {
        prop_assume!(zm != zp);
        let u = zm.clone() * zp.clone();
        let v = zm.clone() + zp.clone();
        let direct = y_direct(&zm, &zp, n, Tol::default()).unwrap();
        prop_assert_eq!(y_recurrence(&u, &v, n), direct);
    }

    #[test]
    fn symbolic_y_evaluates_like_recurrence(u in rational(), v in rational(), n in 0usize..10) {
        prop_assert_eq!(y_symbolic(n).eval(&u, &v), y_recurrence(&u, &v, n));
    }

    #[test]
    fn division_identity(a in poly(8), b in poly(5)) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn interpolation_reproduces_nodes(values in prop::collection::vec(rational(), 1..7)) {
        let points: Vec<_> = values.iter().enumerate().map(|(i, y)| (Rational::from_i64(i as i64 * 2 - 3), y.clone())).collect();
        let p = interpolate(&points, Tol::default()).unwrap();
        prop_assert!(p.is_zero() || p.degree().unwrap() < points.len());
        for (x, y) in &points {
            prop_assert_eq!(&p.eval(x), y);
        }
    }

    #[test]
    fn classification_recovers_sampled_grid(seed in any::<u64>(), family in 0usize..FAMILIES.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_grid::<Rational, _>(&mut rng, FAMILIES[family]);
        let samples = g.sample(-2, 12);
        let v = &samples.values;
        prop_assume!((0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j])));
        match classify_grid(&samples, Tol::default()) {
            Ok(Classification::Aw(found)) => {
                for s in -6..16 {
                    prop_assert_eq!(found.eval(s), g.eval(s));
                }
            }
            other => prop_assert!(false, "{} grid misclassified: {:?}", FAMILIES[family], other.map(|_| ())),
        }
    }

    #[test]
    fn inverse_jacobi_spectrum_is_exact(seed in any::<u64>(), n in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (sys, nodes) = inverse_jacobi::<Rational, _>(&mut rng, n);
        prop_assert_eq!(eigenvalues(&sys, Tol::default()).unwrap(), nodes);
        prop_assert_eq!(weights(&sys, Tol::default()).unwrap().len(), n + 1);
    }
}
