//! Local adiabatic search: the interpolation `(1−s)(I − |s⟩⟨s|) + s(I − |w⟩⟨w|)`
//! driven by the gap-adapted arctangent schedule.

use super::instance::SearchInstance;
use crate::error::{domain, Result};
use crate::scalar::{lit, precision, Real};
use crate::subspace::{evolve_scheduled, fidelity, Hermitian2, SubspaceState, Trajectory};

/// Which interpolation schedule produced a [`SchedulePoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    /// The two-arctangent local adiabatic schedule.
    LocalAdiabatic,
    /// `s = sin²(t/√N)`, the schedule whose ground state follows the walk.
    SineSquared,
}

/// A paired `(s, t)` value under a named schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulePoint<T> {
    pub s: T,
    pub t: T,
    pub kind: ScheduleKind,
}

fn check_s<T: Real>(s: T) -> Result<()> {
    if s >= T::zero() && s <= T::one() {
        Ok(())
    } else {
        Err(domain("s", s, "[0, 1]"))
    }
}

/// `H(s)` restricted to the plane.
pub fn rc_hamiltonian<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<Hermitian2<T>> {
    check_s(s)?;
    let n = inst.size();
    let u = T::one() - s;
    let d = u * (n - T::one()) / n;
    Ok(Hermitian2::real(
        d,
        -u * inst.root_unmarked() / n,
        T::one() - d,
    ))
}

/// `g(s) = √((N − 4(N−1)s(1−s))/N)`.
pub fn rc_gap<T: Real>(s: T, inst: &SearchInstance<T>) -> T {
    let n = inst.size();
    let four = lit::<T>(4.0);
    ((n - four * (n - T::one()) * s * (T::one() - s)) / n).sqrt()
}

/// Numerator and denominator of the ground-state ratio `a_w/a_r`, both
/// non-negative, arranged so neither suffers cancellation.
///
/// The textbook numerator `2(1−s) − N(1−2s) + Ng` cancels for small `s` at
/// large `N`; there it is rewritten via `(Ng)² − A² = 4(N−1)(1−s)²` with
/// `A = N(1−2s) − 2(1−s)`.
pub(crate) fn rc_ground_ratio<T: Real>(s: T, inst: &SearchInstance<T>) -> (T, T) {
    let n = inst.size();
    let two = lit::<T>(2.0);
    let u = T::one() - s;
    let ng = n * rc_gap(s, inst);
    let a = n * (T::one() - two * s) - two * u;
    let b = two * inst.root_unmarked() * u;
    if a >= T::zero() {
        (b, ng + a)
    } else {
        (ng - a, b)
    }
}

/// Instantaneous ground state, real with non-negative amplitudes.
///
/// At `s = 1` the printed ratio is `0/0`; the limit `|w⟩` is returned.
pub fn rc_ground_state<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<SubspaceState<T>> {
    check_s(s)?;
    if s == T::one() {
        return Ok(SubspaceState::marked());
    }
    let (num, den) = rc_ground_ratio(s, inst);
    SubspaceState::from_real(num, den)
}

/// Total runtime `T = N/(ε√(N−1))·arctan(√(N−1))`.
pub fn rc_total_time<T: Real>(inst: &SearchInstance<T>) -> T {
    let r = inst.root_unmarked();
    inst.size() / (inst.eps() * r) * r.atan()
}

/// Time at which the local adiabatic schedule reaches `s`.
pub fn rc_schedule_t<T: Real>(s: T, inst: &SearchInstance<T>) -> T {
    let r = inst.root_unmarked();
    let two = lit::<T>(2.0);
    inst.size() / (two * inst.eps() * r) * ((r * (two * s - T::one())).atan() + r.atan())
}

/// `dt/ds = N/(ε(1 + (N−1)(2s−1)²)) = 1/(ε g(s)²)`.
pub fn rc_schedule_rate<T: Real>(s: T, inst: &SearchInstance<T>) -> T {
    let g = rc_gap(s, inst);
    (inst.eps() * g * g).recip()
}

fn check_t<T: Real>(t: T, inst: &SearchInstance<T>) -> Result<T> {
    let total = rc_total_time(inst);
    let slack = lit::<T>(8.0) * precision::<T>() * total;
    if t < -slack || t > total + slack || t.is_nan() {
        return Err(domain("t", t, "[0, T]"));
    }
    Ok(total)
}

/// Inverts the schedule by bisection on the monotone map `s ↦ t(s)`,
/// down to the resolution of `T`.
pub fn rc_schedule_s<T: Real>(t: T, inst: &SearchInstance<T>) -> Result<T> {
    let total = check_t(t, inst)?;
    if t <= T::zero() {
        return Ok(T::zero());
    }
    if t >= total {
        return Ok(T::one());
    }
    let (mut lo, mut hi) = (T::zero(), T::one());
    let half = lit::<T>(0.5);
    for _ in 0..256 {
        let mid = (lo + hi) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if rc_schedule_t(mid, inst) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * half)
}

/// Closed-form inverse through `tan`.
///
/// The arctangent argument stays inside `(−π/2, π/2)` on `[0, T]`, so no
/// branch correction is needed in this form.
pub fn rc_schedule_s_closed<T: Real>(t: T, inst: &SearchInstance<T>) -> Result<T> {
    check_t(t, inst)?;
    let r = inst.root_unmarked();
    let two = lit::<T>(2.0);
    let phase = two * inst.eps() * r * t / inst.size() - r.atan();
    let s = (phase.tan() / r + T::one()) / two;
    Ok(s.max(T::zero()).min(T::one()))
}

pub fn rc_schedule_point<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<SchedulePoint<T>> {
    check_s(s)?;
    Ok(SchedulePoint {
        s,
        t: rc_schedule_t(s, inst),
        kind: ScheduleKind::LocalAdiabatic,
    })
}

/// `√(1 − |⟨w|ψ⟩|²)`.
pub fn adiabatic_error<T: Real>(state: &SubspaceState<T>) -> T {
    (T::one() - state.success_probability())
        .max(T::zero())
        .sqrt()
}

/// Result of integrating the local adiabatic algorithm.
#[derive(Debug, Clone)]
pub struct AdiabaticRun<T> {
    pub trajectory: Trajectory<T>,
    /// Adiabatic error of the final state.
    pub adiabatic_error: T,
    /// Smallest fidelity with the instantaneous ground state over all samples.
    pub min_ground_fidelity: T,
}

/// Integrates the Schrödinger equation under `H(s(t))` over `[0, T]` from `|s⟩`.
pub fn rc_evolve<T: Real>(inst: &SearchInstance<T>, steps: usize) -> Result<AdiabaticRun<T>> {
    let total = rc_total_time(inst);
    let trajectory = evolve_scheduled(
        |t| rc_schedule_s(t, inst),
        |s| rc_hamiltonian(s, inst),
        &SubspaceState::uniform(inst.n()),
        T::zero(),
        total,
        steps,
    )?;
    let mut min_ground_fidelity = T::one();
    for sample in trajectory.samples() {
        let s = sample.s.expect("scheduled samples carry s");
        let ground = rc_ground_state(s, inst)?;
        min_ground_fidelity = min_ground_fidelity.min(fidelity(&sample.state, &ground));
    }
    Ok(AdiabaticRun {
        adiabatic_error: adiabatic_error(trajectory.final_state()),
        trajectory,
        min_ground_fidelity,
    })
}
