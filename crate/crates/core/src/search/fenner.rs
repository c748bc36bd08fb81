use num_complex::Complex;

use super::grover::grover_angle;
use super::instance::SearchInstance;
use crate::scalar::{lit, Real};
use crate::subspace::{Hermitian2, Matrix2, SubspaceState};

/// `(i/√N)(|w⟩⟨s| − |s⟩⟨w|)` in the plane: `(i/N)·[[0, √(N−1)], [−√(N−1), 0]]`.
pub fn fenner_hamiltonian<T: Real>(inst: &SearchInstance<T>) -> Hermitian2<T> {
    let c = fenner_rate(inst);
    Hermitian2::new(T::zero(), Complex::new(T::zero(), c), T::zero())
}

/// State-space rotation rate `√(N−1)/N`, also the operator norm.
pub fn fenner_rate<T: Real>(inst: &SearchInstance<T>) -> T {
    inst.root_unmarked() / inst.size()
}

/// The real rotation `exp(−iH_F t)`.
pub fn fenner_rotation<T: Real>(t: T, inst: &SearchInstance<T>) -> Matrix2<T> {
    let (sin, cos) = (fenner_rate(inst) * t).sin_cos();
    Matrix2::real(cos, sin, -sin, cos)
}

/// The rotated uniform state, real for all `t`.
pub fn fenner_state<T: Real>(t: T, inst: &SearchInstance<T>) -> SubspaceState<T> {
    let n = inst.size();
    let (sin, cos) = (fenner_rate(inst) * t).sin_cos();
    let root_n = n.sqrt();
    let r = inst.root_unmarked();
    SubspaceState::from_real((cos + r * sin) / root_n, (r * cos - sin) / root_n)
        .expect("rotation of a unit vector")
}

/// Exact success time `(N/√(N−1))·(π/2 − arcsin(1/√N))`.
pub fn fenner_success_time<T: Real>(inst: &SearchInstance<T>) -> T {
    (T::FRAC_PI_2() - grover_angle(inst)) / fenner_rate(inst)
}

/// Duration `Δ` for which `exp(−iH_F Δ)` equals the Grover iterate up to a
/// global sign: one Grover step rotates by `2·arcsin(1/√N)`.
pub fn fenner_grover_interval<T: Real>(inst: &SearchInstance<T>) -> T {
    lit::<T>(2.0) * grover_angle(inst) / fenner_rate(inst)
}
