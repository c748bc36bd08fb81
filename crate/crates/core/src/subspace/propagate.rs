use num_complex::Complex;

use super::operator::{Hermitian2, Matrix2};
use super::state::SubspaceState;
use super::trajectory::{Sample, Trajectory};
use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

/// Norm drift above which a run is flagged on its trajectory.
pub const NORM_DRIFT_FLAG: f64 = 1e-8;
/// Norm drift above which integration aborts.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// `exp(−iHΔt)` from the identity/traceless split
/// `H = a0·I + r·(n·σ)`: `e^{−i a0 Δt}[cos(rΔt) I − i sin(rΔt) n·σ]`.
pub fn propagator<T: Real>(h: &Hermitian2<T>, dt: T) -> Matrix2<T> {
    let (a0, ax, ay, az) = h.pauli();
    let r = (ax * ax + ay * ay + az * az).sqrt();
    let theta = r * dt;
    let cos = theta.cos();
    // sin(rΔt)/r, continuous at r = 0
    let sinc = if r > T::zero() { theta.sin() / r } else { dt };
    let phase = Complex::from_polar(T::one(), -a0 * dt);
    let mi = Complex::new(T::zero(), -sinc);
    let h12 = h.h12();
    Matrix2::new([
        [
            phase * (Complex::new(cos, T::zero()) + mi * az),
            phase * mi * h12,
        ],
        [
            phase * mi * h12.conj(),
            phase * (Complex::new(cos, T::zero()) - mi * az),
        ],
    ])
}

/// Exact constant-Hamiltonian evolution `exp(−iHΔt)ψ`.
pub fn evolve_const<T: Real>(h: &Hermitian2<T>, psi: &SubspaceState<T>, dt: T) -> SubspaceState<T> {
    propagator(h, dt).apply(psi)
}

fn derivative<T: Real>(h: &Hermitian2<T>, psi: &SubspaceState<T>) -> SubspaceState<T> {
    let hp = h.apply(psi);
    let mi = Complex::new(T::zero(), -T::one());
    SubspaceState::from_amplitudes(hp.a_w() * mi, hp.a_r() * mi)
}

fn axpy<T: Real>(psi: &SubspaceState<T>, k: T, d: &SubspaceState<T>) -> SubspaceState<T> {
    SubspaceState::from_amplitudes(psi.a_w() + d.a_w().scale(k), psi.a_r() + d.a_r().scale(k))
}

/// One classical fourth-order Runge–Kutta step of `i dψ/dt = Hψ`.
pub fn rk4_step<T: Real>(
    psi: &SubspaceState<T>,
    dt: T,
    h_start: &Hermitian2<T>,
    h_mid: &Hermitian2<T>,
    h_end: &Hermitian2<T>,
) -> SubspaceState<T> {
    let half = lit::<T>(0.5);
    let k1 = derivative(h_start, psi);
    let k2 = derivative(h_mid, &axpy(psi, dt * half, &k1));
    let k3 = derivative(h_mid, &axpy(psi, dt * half, &k2));
    let k4 = derivative(h_end, &axpy(psi, dt, &k3));
    let sixth = dt / lit::<T>(6.0);
    let two = lit::<T>(2.0);
    SubspaceState::from_amplitudes(
        psi.a_w() + (k1.a_w() + k2.a_w().scale(two) + k3.a_w().scale(two) + k4.a_w()).scale(sixth),
        psi.a_r() + (k1.a_r() + k2.a_r().scale(two) + k3.a_r().scale(two) + k4.a_r()).scale(sixth),
    )
}

/// Fixed-step RK4 integration of a time-dependent Hamiltonian from `t0` to
/// `t1`, recording every step.
pub fn evolve_timedep<T, F>(
    h_of_t: F,
    psi0: &SubspaceState<T>,
    t0: T,
    t1: T,
    steps: usize,
) -> Result<Trajectory<T>>
where
    T: Real,
    F: Fn(T) -> Hermitian2<T>,
{
    integrate(psi0, t0, t1, steps, |t| Ok((h_of_t(t), None)))
}

/// Like [`evolve_timedep`] but drives the Hamiltonian through a schedule
/// `s(t)` and records `s` on every sample.
pub fn evolve_scheduled<T, S, H>(
    schedule: S,
    h_of_s: H,
    psi0: &SubspaceState<T>,
    t0: T,
    t1: T,
    steps: usize,
) -> Result<Trajectory<T>>
where
    T: Real,
    S: Fn(T) -> Result<T>,
    H: Fn(T) -> Result<Hermitian2<T>>,
{
    integrate(psi0, t0, t1, steps, |t| {
        let s = schedule(t)?;
        Ok((h_of_s(s)?, Some(s)))
    })
}

fn integrate<T, F>(
    psi0: &SubspaceState<T>,
    t0: T,
    t1: T,
    steps: usize,
    eval: F,
) -> Result<Trajectory<T>>
where
    T: Real,
    F: Fn(T) -> Result<(Hermitian2<T>, Option<T>)>,
{
    if steps == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if !(t1 > t0) {
        return Err(domain("t1 - t0", t1 - t0, "(0, inf)"));
    }
    let n = T::from_usize(steps).expect("step count fits scalar");
    let time = |k: usize| {
        if k == steps {
            t1
        } else {
            t0 + (t1 - t0) * T::from_usize(k).expect("index fits scalar") / n
        }
    };
    let half = lit::<T>(0.5);

    let mut samples = Vec::with_capacity(steps + 1);
    let (mut h_start, s0) = eval(t0)?;
    let mut psi = *psi0;
    samples.push(Sample::new(t0, s0, psi));
    for k in 0..steps {
        let ta = time(k);
        let tb = time(k + 1);
        let (h_mid, _) = eval(ta + (tb - ta) * half)?;
        let (h_end, s_end) = eval(tb)?;
        psi = rk4_step(&psi, tb - ta, &h_start, &h_mid, &h_end);
        let drift = psi.norm_drift();
        if !(drift <= lit::<T>(NORM_DRIFT_LIMIT)) {
            return Err(Error::NormDrift {
                drift: drift.to_f64().unwrap_or(f64::NAN),
            });
        }
        samples.push(Sample::new(tb, s_end, psi));
        h_start = h_end;
    }
    Trajectory::from_samples(samples)
}
