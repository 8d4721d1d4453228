use std::f64::consts::PI;

use nlft::{
    forward_discrete, schur_from_measure, schur_ratio, toeplitz_h11, Atom, Complex64, Density, DiscretePotential,
    Measure, TransferMatrix,
};
use proptest::prelude::*;

fn potential() -> impl Strategy<Value = DiscretePotential> {
    (0.1f64..1.0, -0.5f64..0.5, prop::collection::vec(-0.8f64..0.8, 1..16))
        .prop_map(|(w, c0, masses)| DiscretePotential::with_origin(w, c0, masses).unwrap())
}

fn upper_half_plane() -> impl Strategy<Value = Complex64> {
    (-6.0f64..6.0, 0.0f64..2.0).prop_map(|(x, y)| Complex64::new(x, y))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm())
}

proptest! {
    #[test]
    fn determinant_is_one(p in potential(), z in upper_half_plane()) {
        prop_assert!(forward_discrete(&p, z).det_drift <= 1e-10);
        let real = forward_discrete(&p, Complex64::from(z.re));
        prop_assert!(close(real.det(), Complex64::new(1.0, 0.0), 1e-10));
    }

    #[test]
    fn concatenation_is_matrix_product(p in potential(), q in potential(), z in upper_half_plane()) {
        // q shifted past the support of p, on p's grid.
        let q = DiscretePotential::new(p.spacing(), q.masses().to_vec()).unwrap();
        let k = p.masses().len();
        let mut joined = p.masses().to_vec();
        joined.extend_from_slice(q.masses());
        let whole = DiscretePotential::with_origin(p.spacing(), p.origin_mass(), joined).unwrap();
        let tail = forward_discrete(&q.shifted(k).unwrap(), z);
        let head = forward_discrete(&p, z);
        let prod: TransferMatrix = head.then(&tail);
        let direct = forward_discrete(&whole, z);
        prop_assert!(close(prod.a(), direct.a(), 1e-10));
        prop_assert!(close(prod.b(), direct.b(), 1e-10));
    }

    #[test]
    fn schur_ratio_is_contractive(p in potential(), z in upper_half_plane()) {
        let s = schur_ratio(&forward_discrete(&p, z)).unwrap().value;
        prop_assert!(s.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn schur_function_is_contractive(rho in 0.05f64..3.0, m in 0.0f64..4.0, x in -3.0f64..3.0, z in upper_half_plane()) {
        prop_assume!(z.im > 1e-3);
        let mu = Measure::new(Density::Constant(rho), vec![Atom { x, mass: m }], None).unwrap();
        let f = schur_from_measure(&mu, z, 1e-12).unwrap().value;
        prop_assert!(f.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn moments_add(rho in 0.1f64..2.0, m in 0.1f64..2.0, x in 0.0f64..0.9, t in 1.0f64..6.0) {
        let atoms = vec![Atom { x: x * t, mass: m }, Atom { x: -x * t, mass: m }];
        let a = Measure::new(Density::Constant(rho), vec![], Some(2.0 * t)).unwrap();
        let b = Measure::new(Density::None, atoms.clone(), Some(2.0 * t)).unwrap();
        let sum = Measure::new(Density::Constant(rho), atoms, Some(2.0 * t)).unwrap();
        let (ma, mb, ms) = (a.trig_moments(6).unwrap(), b.trig_moments(6).unwrap(), sum.trig_moments(6).unwrap());
        for k in 0..=6 {
            prop_assert!((ms.coeffs()[k] - ma.coeffs()[k] - mb.coeffs()[k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn steps_are_positive(rho in 0.1f64..2.0, m in 0.0f64..3.0, t in 1.0f64..10.0) {
        let mu = Measure::new(Density::Constant(rho), vec![Atom { x: 0.0, mass: m }], Some(2.0 * t)).unwrap();
        let h = toeplitz_h11(&mu.trig_moments(24).unwrap(), 24).unwrap();
        prop_assert!(h.steps().iter().all(|s| *s > 0.0));
        prop_assert!((h.step_width() - PI / (2.0 * t)).abs() < 1e-15);
    }
}
