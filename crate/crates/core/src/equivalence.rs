//! The chiral star-graph walk and the local adiabatic ground state trace the
//! same path. This module compares them with the `|r⟩` coefficient fixed to
//! one, by Bloch-sphere speed, and classifies which generators can produce
//! real evolutions.

use crate::error::{Error, Result};
use crate::fullspace::DenseMatrix;
use crate::scalar::{count, lit, precision, tol, Real};
use crate::search::{
    fenner_rate, fenner_state, grover_angle, rc_gap, rc_ground_ratio, rc_ground_state,
    rc_schedule_s, rc_schedule_t, rc_total_time, SearchInstance,
};
use crate::subspace::{fidelity, BlochPoint};

/// Coefficient of `|w⟩` when the `|r⟩` coefficient is fixed to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathCoefficient<T> {
    Finite(T),
    /// The `|r⟩` amplitude vanishes: the state is `|w⟩`.
    Pole,
}

impl<T: Real> PathCoefficient<T> {
    pub fn value(&self) -> Option<T> {
        match *self {
            Self::Finite(v) => Some(v),
            Self::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Self::Pole)
    }
}

/// A point on a path written as `c|w⟩ + |r⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnnormalizedPathPoint<T> {
    /// `t` for the walk, `s` for the adiabatic ground state.
    pub parameter: T,
    pub coefficient: PathCoefficient<T>,
}

impl<T: Real> UnnormalizedPathPoint<T> {
    pub fn w_coeff(&self) -> Option<T> {
        self.coefficient.value()
    }
}

/// `(cos ct + √(N−1) sin ct)/(√(N−1) cos ct − sin ct)` with `c = √(N−1)/N`.
///
/// A denominator within rounding noise of zero is reported as a pole.
pub fn fenner_unnormalized<T: Real>(t: T, inst: &SearchInstance<T>) -> UnnormalizedPathPoint<T> {
    let r = inst.root_unmarked();
    let (sin, cos) = (fenner_rate(inst) * t).sin_cos();
    let num = cos + r * sin;
    let den = r * cos - sin;
    let noise = lit::<T>(4.0) * precision::<T>() * (r * cos.abs() + sin.abs());
    let coefficient = if den.abs() <= noise {
        PathCoefficient::Pole
    } else {
        PathCoefficient::Finite(num / den)
    };
    UnnormalizedPathPoint {
        parameter: t,
        coefficient,
    }
}

/// `(2(1−s) − N(1−2s) + Ng)/(2√(N−1)(1−s))`, the ground-state branch,
/// evaluated without cancellation. Pole at `s = 1`.
pub fn rc_ground_unnormalized<T: Real>(
    s: T,
    inst: &SearchInstance<T>,
) -> Result<UnnormalizedPathPoint<T>> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(crate::error::domain("s", s, "[0, 1]"));
    }
    let coefficient = if s == T::one() {
        PathCoefficient::Pole
    } else {
        let (num, den) = rc_ground_ratio(s, inst);
        PathCoefficient::Finite(num / den)
    };
    Ok(UnnormalizedPathPoint {
        parameter: s,
        coefficient,
    })
}

/// Twice the walk's rotation angle at the adiabatic time of `s` (unit slack),
/// from the combined arctangent.
///
/// `arctan a + arctan b` with `a = √(N−1)(2s−1)`, `b = √(N−1)` leaves the
/// principal branch once `ab > 1`, i.e. for `s > 1/2 + 1/(2(N−1))`, not at
/// `s = 1/2`.
pub fn half_angle_theta<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<T> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(crate::error::domain("s", s, "[0, 1]"));
    }
    let r = inst.root_unmarked();
    let two = lit::<T>(2.0);
    let n = inst.size();
    let a = r * (two * s - T::one());
    // 1 − ab = 1 − (N−1)(2s−1) = N(1−2s) + 2s, computed without cancellation.
    let denom = n * (T::one() - two * s) + two * s;
    let num = a + r;
    if denom == T::zero() {
        return Ok(T::FRAC_PI_2());
    }
    let base = (num / denom).atan();
    Ok(if denom < T::zero() {
        base + T::PI()
    } else {
        base
    })
}

/// `tan(θ/2) = 2s√(N−1)/(Ng + N(1−2s) + 2s)`; the denominator is at least
/// `2s`, so the half-angle needs no branch choice.
pub fn half_angle_tangent<T: Real>(s: T, inst: &SearchInstance<T>) -> T {
    let n = inst.size();
    let two = lit::<T>(2.0);
    let d = n * rc_gap(s, inst) + n * (T::one() - two * s) + two * s;
    two * s * inst.root_unmarked() / d
}

/// The walk's coefficient at angle `θ/2`, built from the half-angle
/// tangent: `(1 + √(N−1)τ)/(√(N−1) − τ)`.
pub fn half_angle_coefficient<T: Real>(s: T, inst: &SearchInstance<T>) -> PathCoefficient<T> {
    let tau = half_angle_tangent(s, inst);
    let r = inst.root_unmarked();
    let den = r - tau;
    if den.abs() <= lit::<T>(4.0) * precision::<T>() * r {
        PathCoefficient::Pole
    } else {
        PathCoefficient::Finite((T::one() + r * tau) / den)
    }
}

/// The walk time at which its coefficient equals the adiabatic ground-state
/// coefficient at `s`: `t = (arctan c − arcsin(1/√N))/rate`.
pub fn solve_fenner_time<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<T> {
    let angle = match rc_ground_unnormalized(s, inst)?.coefficient {
        PathCoefficient::Finite(c) => c.atan(),
        PathCoefficient::Pole => T::FRAC_PI_2(),
    };
    Ok((angle - grover_angle(inst)) / fenner_rate(inst))
}

/// How one sample of [`verify_identity`] was compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Relative difference of the unnormalised coefficients.
    Coefficient,
    /// Near a pole: `1 − fidelity` of the normalised states.
    Fidelity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityRow<T> {
    pub s: T,
    pub t: T,
    /// Walk coefficient at `t`.
    pub lhs: PathCoefficient<T>,
    /// Adiabatic ground-state coefficient at `s`.
    pub rhs: PathCoefficient<T>,
    pub deviation: T,
    pub comparison: Comparison,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    pub rows: Vec<IdentityRow<T>>,
    /// Largest `|lhs − rhs|/(1 + |rhs|)` over coefficient rows.
    pub max_deviation: T,
    /// Largest `1 − fidelity` of the normalised states over every row.
    pub max_fidelity_deficit: T,
    /// Largest relative gap between the half-angle route and `rhs`.
    pub max_half_angle_deviation: T,
    /// Sampled `s` whose walk coefficient landed on a pole.
    pub poles: Vec<T>,
}

/// Half-width in `s` of the window around `s = 1` where coefficients are
/// compared through fidelity instead.
pub const POLE_WINDOW: f64 = 1e-3;

fn relative<T: Real>(a: T, b: T) -> T {
    (a - b).abs() / (T::one() + b.abs())
}

/// Compares the walk at `t(s)` with the ground state at `s` for
/// `s = k/(samples+1)`, `k = 1..=samples`. Needs unit slack.
pub fn verify_identity<T: Real>(
    inst: &SearchInstance<T>,
    samples: usize,
) -> Result<IdentityReport<T>> {
    if inst.eps() != T::one() {
        return Err(Error::IdentityRequiresUnitSlack {
            eps: inst.eps().to_f64().unwrap_or(f64::NAN),
        });
    }
    if samples < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples,
        });
    }
    let window = lit::<T>(POLE_WINDOW);
    let mut report = IdentityReport {
        rows: Vec::with_capacity(samples),
        max_deviation: T::zero(),
        max_fidelity_deficit: T::zero(),
        max_half_angle_deviation: T::zero(),
        poles: Vec::new(),
    };
    let denom = count::<T>(samples as u64 + 1);
    for k in 1..=samples {
        let s = count::<T>(k as u64) / denom;
        let t = rc_schedule_t(s, inst);
        let lhs = fenner_unnormalized(t, inst).coefficient;
        let rhs = rc_ground_unnormalized(s, inst)?.coefficient;
        let deficit = T::one() - fidelity(&fenner_state(t, inst), &rc_ground_state(s, inst)?);
        report.max_fidelity_deficit = report.max_fidelity_deficit.max(deficit);
        let near_pole = T::one() - s <= window;
        let (deviation, comparison) = match (lhs, rhs) {
            (PathCoefficient::Finite(a), PathCoefficient::Finite(b)) if !near_pole => {
                (relative(a, b), Comparison::Coefficient)
            }
            _ => (deficit, Comparison::Fidelity),
        };
        if lhs.is_pole() {
            report.poles.push(s);
        }
        if comparison == Comparison::Coefficient {
            report.max_deviation = report.max_deviation.max(deviation);
            if let PathCoefficient::Finite(h) = half_angle_coefficient(s, inst) {
                let b = rhs.value().expect("finite");
                report.max_half_angle_deviation =
                    report.max_half_angle_deviation.max(relative(h, b));
            }
        }
        report.rows.push(IdentityRow {
            s,
            t,
            lhs,
            rhs,
            deviation,
            comparison,
        });
    }
    Ok(report)
}

/// Bloch-sphere angular speeds of the walk and of the adiabatic ground
/// state along the unit-slack schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularVelocityReport<T> {
    /// Exact speed of the walk, `2√(N−1)/N`.
    pub fenner_exact: T,
    /// Finite-difference speeds of the walk at the sampled times.
    pub fenner_measured: Vec<T>,
    pub fenner_mean: T,
    pub fenner_std: T,
    /// `(s, speed)` for the adiabatic ground state.
    pub rc_measured: Vec<(T, T)>,
    pub rc_mean: T,
    /// Largest `|rc − exact|/exact` over the samples.
    pub max_relative_difference: T,
    /// `|rc_mean − fenner_mean|/fenner_mean`.
    pub mean_relative_difference: T,
}

/// Arc-length speed of a curve on the sphere by central differences with
/// one Richardson step.
fn arc_speed<T: Real>(curve: impl Fn(T) -> Result<BlochPoint<T>>, t: T, h: T) -> Result<T> {
    let central = |h: T| -> Result<T> { Ok(curve(t - h)?.angle_to(&curve(t + h)?) / (h + h)) };
    let coarse = central(h)?;
    let fine = central(h * lit(0.5))?;
    Ok((lit::<T>(4.0) * fine - coarse) / lit(3.0))
}

/// Compares speeds over `s ∈ [0.1, 0.9]` in steps of 0.01 at unit slack;
/// the instance's own slack is ignored.
pub fn angular_velocity_compare<T: Real>(
    inst: &SearchInstance<T>,
) -> Result<AngularVelocityReport<T>> {
    let unit = inst.with_eps(T::one())?;
    let total = rc_total_time(&unit);
    let h = total * lit(1e-4);
    let exact = lit::<T>(2.0) * fenner_rate(&unit);
    let mut fenner = Vec::new();
    let mut rc = Vec::new();
    for k in 10..=90u64 {
        let s = count::<T>(k) / lit(100.0);
        let t = rc_schedule_t(s, &unit);
        fenner.push(arc_speed(|t| Ok(fenner_state(t, &unit).bloch()), t, h)?);
        let v = arc_speed(
            |t| Ok(rc_ground_state(rc_schedule_s(t, &unit)?, &unit)?.bloch()),
            t,
            h,
        )?;
        rc.push((s, v));
    }
    let len = count::<T>(fenner.len() as u64);
    let fenner_mean = fenner.iter().fold(T::zero(), |a, &b| a + b) / len;
    let var = fenner
        .iter()
        .fold(T::zero(), |a, &b| a + (b - fenner_mean) * (b - fenner_mean))
        / len;
    let rc_mean = rc.iter().fold(T::zero(), |a, &(_, b)| a + b) / len;
    let max_relative_difference = rc
        .iter()
        .fold(T::zero(), |m, &(_, v)| m.max((v - exact).abs() / exact));
    Ok(AngularVelocityReport {
        fenner_exact: exact,
        fenner_mean,
        fenner_std: var.sqrt(),
        fenner_measured: fenner,
        rc_mean,
        rc_measured: rc,
        max_relative_difference,
        mean_relative_difference: (rc_mean - fenner_mean).abs() / fenner_mean,
    })
}

/// Whether `exp(−iHt)` is real for all `t`, and if so whether the generator
/// carries directed `±i` weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    /// Purely imaginary and nonzero: directed edges with conjugate phases.
    Chiral,
    /// The zero operator.
    Achiral,
    /// Some entry has a real part, so the evolution leaves the real states.
    NotRealGenerating,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralityReport<T> {
    pub class: Chirality,
    /// A purely imaginary Hermitian matrix must have zero diagonal.
    pub diagonal_is_zero: bool,
    pub max_diagonal: T,
    pub max_real_part: T,
    /// Unordered vertex pairs joined by a nonzero weight.
    pub directed_edges: usize,
}

/// Classifies a Hermitian generator; entries below 1e-12 of the largest
/// entry count as zero.
pub fn chirality_classifier<T: Real>(h: &DenseMatrix<T>) -> Result<ChiralityReport<T>> {
    let scale = T::one().max(h.max_abs_entry());
    let zero = tol::<T>(1e-12) * scale;
    let dev = h.hermiticity_deviation();
    if dev > zero {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = h.dim();
    let mut max_diagonal = T::zero();
    let mut max_real_part = T::zero();
    let mut directed_edges = 0;
    for i in 0..n {
        max_diagonal = max_diagonal.max(h.get(i, i).norm());
        for j in 0..n {
            let e = h.get(i, j);
            max_real_part = max_real_part.max(e.re.abs());
            if j > i && e.norm() > zero {
                directed_edges += 1;
            }
        }
    }
    let class = if max_real_part > zero {
        Chirality::NotRealGenerating
    } else if directed_edges == 0 {
        Chirality::Achiral
    } else {
        Chirality::Chiral
    };
    Ok(ChiralityReport {
        class,
        diagonal_is_zero: max_diagonal <= zero,
        max_diagonal,
        max_real_part,
        directed_edges,
    })
}
