use super::instance::SearchInstance;
use crate::scalar::{lit, Real};
use crate::subspace::{Matrix2, SubspaceState};

/// Half the Grover rotation angle, `arcsin(1/√N)`: the angle of `|s⟩` above `|r⟩`.
pub fn grover_angle<T: Real>(inst: &SearchInstance<T>) -> T {
    inst.size().sqrt().recip().asin()
}

/// The oracle `R_w = I − 2|w⟩⟨w|` restricted to the plane.
pub fn oracle_reflection<T: Real>() -> Matrix2<T> {
    Matrix2::real(-T::one(), T::zero(), T::zero(), T::one())
}

/// `R_{s⊥} = I − 2|s⟩⟨s|`, the reflection through the hyperplane orthogonal to `|s⟩`.
pub fn diffusion_reflection<T: Real>(inst: &SearchInstance<T>) -> Matrix2<T> {
    let s = SubspaceState::<T>::uniform(inst.n());
    let (a, b) = (s.a_w().re, s.a_r().re);
    let two = lit::<T>(2.0);
    Matrix2::real(
        T::one() - two * a * a,
        -two * a * b,
        -two * a * b,
        T::one() - two * b * b,
    )
}

/// The Grover iterate `U = R_{s⊥} R_w`.
pub fn grover_iterate<T: Real>(inst: &SearchInstance<T>) -> Matrix2<T> {
    diffusion_reflection(inst).matmul(&oracle_reflection())
}

/// `U^k |s⟩`, applied one iterate at a time.
pub fn grover_state<T: Real>(k: u64, inst: &SearchInstance<T>) -> SubspaceState<T> {
    let u = grover_iterate(inst);
    let mut psi = SubspaceState::uniform(inst.n());
    for _ in 0..k {
        psi = u.apply(&psi);
    }
    psi.canonical()
}

/// Iteration count closest to a quarter turn, `round(π/(4φ) − 1/2)`.
pub fn grover_optimal_iterations<T: Real>(inst: &SearchInstance<T>) -> u64 {
    let phi = grover_angle(inst);
    let k = (T::FRAC_PI_4() / phi - lit(0.5)).round();
    k.to_u64().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iterations_is_uniform() {
        let inst = SearchInstance::<f64>::new(10).unwrap();
        let s = grover_state(0, &inst);
        assert!((crate::subspace::fidelity(&s, &SubspaceState::uniform(10)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn four_items_one_step() {
        let inst = SearchInstance::<f64>::new(4).unwrap();
        assert!((grover_state(1, &inst).success_probability() - 1.0).abs() < 1e-12);
        assert_eq!(grover_optimal_iterations(&inst), 1);
    }

    #[test]
    fn n1024_after_25_iterations() {
        let inst = SearchInstance::<f64>::new(1024).unwrap();
        let k = grover_optimal_iterations(&inst);
        assert_eq!(k, 25);
        assert_eq!(k, (std::f64::consts::PI * 32.0 / 4.0).round() as u64);
        let p = grover_state(k, &inst).success_probability();
        assert!(p >= 0.999);
        // rotation oracle: sin²((2k+1)φ)
        let phi = grover_angle(&inst);
        assert!((p - ((2.0 * k as f64 + 1.0) * phi).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn amplitudes_stay_real() {
        let inst = SearchInstance::<f64>::new(100).unwrap();
        for k in 0..20 {
            let st = grover_state(k, &inst);
            assert_eq!(st.a_w().im, 0.0);
            assert_eq!(st.a_r().im, 0.0);
        }
    }
}
