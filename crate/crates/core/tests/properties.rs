use approx::assert_abs_diff_eq;
use num_complex::Complex;
use proptest::prelude::*;

use search_paths::equivalence::{chirality_classifier, Chirality};
use search_paths::fullspace::DenseMatrix;
use search_paths::search::{rc_schedule_s, rc_schedule_s_closed, rc_schedule_t, SearchInstance};
use search_paths::subspace::{
    eigen2, evolve_const, evolve_timedep, fidelity, make_state, propagator, Hermitian2,
};

fn hermitian() -> impl Strategy<Value = Hermitian2<f64>> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_map(|(a, b, c, d)| Hermitian2::new(a, Complex::new(b, c), d))
}

fn amplitudes() -> impl Strategy<Value = (Complex<f64>, Complex<f64>)> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
        .prop_filter("nonzero", |(a, b, c, d)| {
            a * a + b * b + c * c + d * d > 1e-3
        })
        .prop_map(|(a, b, c, d)| (Complex::new(a, b), Complex::new(c, d)))
}

proptest! {
    #[test]
    fn exact_propagation_conserves_norm(h in hermitian(), (a, b) in amplitudes(), t in 0.0..50.0f64) {
        let psi = make_state(a, b).unwrap();
        let out = evolve_const(&h, &psi, t);
        prop_assert!(out.norm_drift() < 1e-12);
    }

    #[test]
    fn propagator_is_a_semigroup(h in hermitian(), t1 in 0.0..10.0f64, t2 in 0.0..10.0f64) {
        let whole = propagator(&h, t1 + t2);
        let split = propagator(&h, t2).matmul(&propagator(&h, t1));
        prop_assert!(whole.max_abs_diff(&split) < 1e-12);
    }

    #[test]
    fn global_phase_is_quotiented(( a, b) in amplitudes(), phi in -10.0..10.0f64) {
        let p = Complex::from_polar(1.0, phi);
        let x = make_state(a, b).unwrap();
        let y = make_state(a * p, b * p).unwrap();
        prop_assert!((x.a_w() - y.a_w()).norm() < 1e-14);
        prop_assert!((x.a_r() - y.a_r()).norm() < 1e-14);
        prop_assert!((fidelity(&x, &x.with_phase(phi)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_decomposition_reconstructs(h in hermitian()) {
        let e = eigen2(&h);
        prop_assert!(e.ground_energy <= e.excited_energy);
        prop_assert!(e.reconstruct().max_abs_diff(&h) < 1e-12 * h.max_abs_entry().max(1.0));
        prop_assert!(e.ground.inner(&e.excited).norm() < 1e-12);
        prop_assert!(e.ground.norm_drift() < 1e-14 && e.excited.norm_drift() < 1e-14);
    }

    #[test]
    fn schedule_inverts(s in 0.0..=1.0f64, n in 2u64..2_000_000) {
        let inst = SearchInstance::new(n).unwrap();
        let t = rc_schedule_t(s, &inst);
        prop_assert!((rc_schedule_s(t, &inst).unwrap() - s).abs() < 1e-10);
        prop_assert!((rc_schedule_s_closed(t, &inst).unwrap() - s).abs() < 1e-10);
    }

    #[test]
    fn imaginary_generators_have_zero_diagonal(entries in proptest::collection::vec(-2.0..2.0f64, 36), diag in 0usize..6) {
        // Purely imaginary Hermitian: antisymmetric imaginary part, no real part.
        let m = DenseMatrix::from_fn(6, |i, j| {
            let v = entries[i * 6 + j] - entries[j * 6 + i];
            Complex::new(0.0, v)
        });
        let rep = chirality_classifier(&m).unwrap();
        prop_assert!(rep.diagonal_is_zero);
        prop_assert!(rep.class != Chirality::NotRealGenerating);
        // Contrapositive: a nonzero real diagonal entry breaks real generation.
        let mut d = m.clone();
        d.set(diag, diag, Complex::new(0.5, 0.0));
        let rep = chirality_classifier(&d).unwrap();
        prop_assert!(!rep.diagonal_is_zero);
        prop_assert_eq!(rep.class, Chirality::NotRealGenerating);
    }
}

/// `H(t) = f(t)·H0` commutes with itself, so the exact solution is the
/// constant propagator at `∫f`.
#[test]
fn rk4_is_fourth_order() {
    let h0 = Hermitian2::new(0.3, Complex::new(0.7, -0.4), -0.5);
    let f = |t: f64| 1.0 + 0.5 * t.sin();
    let t1: f64 = 3.0;
    let integral = t1 + 0.5 * (1.0 - t1.cos());
    let psi = make_state(Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)).unwrap();
    let exact = evolve_const(&h0, &psi, integral);
    let err = |steps| {
        let tr = evolve_timedep(|t| h0 * f(t), &psi, 0.0, t1, steps).unwrap();
        let s = tr.final_state();
        ((s.a_w() - exact.a_w()).norm_sqr() + (s.a_r() - exact.a_r()).norm_sqr()).sqrt()
    };
    let ratio = err(40) / err(80);
    assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    assert_abs_diff_eq!(err(2000), 0.0, epsilon = 1e-11);
}
