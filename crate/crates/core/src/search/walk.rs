use num_complex::Complex;

use super::instance::SearchInstance;
use crate::scalar::Real;
use crate::subspace::{evolve_const, make_state, Hermitian2, SubspaceState};

/// The complete-graph walk `−γN|s⟩⟨s| − |w⟩⟨w|` in the `{|w⟩, |r⟩}` basis.
///
/// With the canonical `γ = 1/N` this is `(−1/N)·[[N+1, √(N−1)], [√(N−1), N−1]]`.
/// Other rates are allowed; [`SearchInstance::rate_is_canonical`] reports them.
pub fn fg_hamiltonian<T: Real>(inst: &SearchInstance<T>) -> Hermitian2<T> {
    let g = inst.gamma();
    let n = inst.size();
    Hermitian2::real(
        -g - T::one(),
        -g * inst.root_unmarked(),
        -g * (n - T::one()),
    )
}

/// `π√N/2`, where the canonical walk reaches `|w⟩` exactly.
pub fn fg_success_time<T: Real>(inst: &SearchInstance<T>) -> T {
    T::FRAC_PI_2() * inst.size().sqrt()
}

/// Walk state at time `t` starting from `|s⟩`.
///
/// For `γ = 1/N` this is the closed form
/// `a_w = cos(t/√N)/√N + i sin(t/√N)`, `a_r = √((N−1)/N) cos(t/√N)`
/// (global phase `e^{it}` dropped); other rates are propagated exactly.
pub fn fg_state<T: Real>(t: T, inst: &SearchInstance<T>) -> SubspaceState<T> {
    if !inst.rate_is_canonical() {
        let psi = evolve_const(&fg_hamiltonian(inst), &SubspaceState::uniform(inst.n()), t);
        return psi.canonical();
    }
    let root_n = inst.size().sqrt();
    let (sin, cos) = (t / root_n).sin_cos();
    let a_w = Complex::new(cos / root_n, sin);
    let a_r = Complex::new(
        ((inst.size() - T::one()) / inst.size()).sqrt() * cos,
        T::zero(),
    );
    make_state(a_w, a_r).expect("walk state is never zero")
}

/// Expected `|a_w|²` of [`fg_state`]: `cos²(t/√N)/N + sin²(t/√N)`.
pub fn fg_success_probability<T: Real>(t: T, inst: &SearchInstance<T>) -> T {
    let root_n = inst.size().sqrt();
    let (sin, cos) = (t / root_n).sin_cos();
    cos * cos / inst.size() + sin * sin
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::{eigen2, evolve_const, fidelity};

    #[test]
    fn two_vertex_matrix() {
        let h = fg_hamiltonian(&SearchInstance::<f64>::new(2).unwrap());
        assert_eq!(h.h11(), -1.5);
        assert_eq!(h.h12().re, -0.5);
        assert_eq!(h.h22(), -0.5);
    }

    #[test]
    fn off_diagonal_n101() {
        let h = fg_hamiltonian(&SearchInstance::<f64>::new(101).unwrap());
        assert!((h.h12().re + 10.0 / 101.0).abs() < 1e-15);
        assert!((h.h21().re + 0.0990099).abs() < 1e-7);
    }

    #[test]
    fn gap_is_two_over_root_n() {
        for n in [2u64, 5, 64, 1000, 1_000_000] {
            let h = fg_hamiltonian(&SearchInstance::<f64>::new(n).unwrap());
            let gap = eigen2(&h).gap();
            assert!((gap - 2.0 / (n as f64).sqrt()).abs() < 1e-12, "N={n}");
        }
    }

    #[test]
    fn state_endpoints() {
        let inst = SearchInstance::<f64>::new(64).unwrap();
        let s0 = fg_state(0.0, &inst);
        assert!((fidelity(&s0, &SubspaceState::uniform(64)) - 1.0).abs() < 1e-15);
        let end = fg_state(fg_success_time(&inst), &inst);
        assert!((end.success_probability() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quarter_time_n1024() {
        let inst = SearchInstance::<f64>::new(1024).unwrap();
        let t = std::f64::consts::PI * 32.0 / 4.0;
        let p = fg_state(t, &inst).success_probability();
        assert!((p - (0.5 + 0.5 / 1024.0)).abs() < 1e-12);
        assert!((p - 0.50049).abs() < 1e-5);
    }

    #[test]
    fn closed_form_matches_exact_propagation() {
        let inst = SearchInstance::<f64>::new(64).unwrap();
        let h = fg_hamiltonian(&inst);
        for k in 0..20 {
            let t = 0.7 * k as f64;
            let exact = evolve_const(&h, &SubspaceState::uniform(64), t);
            assert!(1.0 - fidelity(&exact, &fg_state(t, &inst)) < 1e-13);
        }
    }

    #[test]
    fn non_canonical_rate_is_propagated() {
        let inst = SearchInstance::<f64>::new(16)
            .unwrap()
            .with_gamma(0.2)
            .unwrap();
        assert!(!inst.rate_is_canonical());
        let st = fg_state(3.0, &inst);
        let exact = evolve_const(&fg_hamiltonian(&inst), &SubspaceState::uniform(16), 3.0);
        assert!(1.0 - fidelity(&st, &exact) < 1e-14);
    }
}
