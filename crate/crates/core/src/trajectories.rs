//! Each algorithm sampled the way it is naturally parameterised: Grover at
//! its iterates, the walks uniformly in time, adiabatic families uniformly
//! in the schedule parameter.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::scalar::{count, lit, Real};
use crate::search::{
    fenner_grover_interval, fenner_state, fenner_success_time, fg_state, fg_success_time,
    grover_optimal_iterations, grover_state, rc_ground_state, rc_hamiltonian, rc_schedule_s,
    rc_schedule_t, SearchInstance,
};
use crate::subspace::{evolve_scheduled, Sample, SubspaceState, Trajectory};
use crate::synthesis::{walk_follower_ground_state, walk_follower_schedule, walk_follower_time};

/// The evolutions that can be sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Grover,
    /// Continuous-time walk on the complete graph.
    FarhiGutmann,
    /// Integrated local adiabatic dynamics.
    RolandCerf,
    /// Instantaneous ground state of the local adiabatic Hamiltonian.
    RcGround,
    /// Chiral walk on the star graph.
    Fenner,
    /// Ground state of the walk-following adiabatic Hamiltonian.
    WalkFollower,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Self::Grover,
        Self::FarhiGutmann,
        Self::RolandCerf,
        Self::RcGround,
        Self::Fenner,
        Self::WalkFollower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Grover => "grover",
            Self::FarhiGutmann => "fg",
            Self::RolandCerf => "rc",
            Self::RcGround => "rc-ground",
            Self::Fenner => "fenner",
            Self::WalkFollower => "walk-follower",
        }
    }

    /// Whether samples carry a schedule value `s`.
    pub fn is_scheduled(self) -> bool {
        matches!(self, Self::RolandCerf | Self::RcGround | Self::WalkFollower)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Mismatch(format!("unknown algorithm '{s}'")))
    }
}

/// Largest integration step used for the adiabatic dynamics.
pub const MAX_DT: f64 = 0.01;

fn uniform_grid<T: Real>(samples: usize, end: T) -> Result<Vec<T>> {
    if samples < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples,
        });
    }
    let last = count::<T>(samples as u64 - 1);
    Ok((0..samples)
        .map(|k| {
            if k + 1 == samples {
                end
            } else {
                end * count::<T>(k as u64) / last
            }
        })
        .collect())
}

/// Samples `alg` on its natural grid. Grover ignores `samples` and returns
/// iterates `0..=K` at times `kΔ`, `K` the optimal count.
pub fn trajectory<T: Real>(
    alg: Algorithm,
    inst: &SearchInstance<T>,
    samples: usize,
) -> Result<Trajectory<T>> {
    let points: Vec<Sample<T>> = match alg {
        Algorithm::Grover => {
            let dt = fenner_grover_interval(inst);
            (0..=grover_optimal_iterations(inst))
                .map(|k| Sample::new(dt * count(k), None, grover_state(k, inst)))
                .collect()
        }
        Algorithm::FarhiGutmann => uniform_grid(samples, fg_success_time(inst))?
            .into_iter()
            .map(|t| Sample::new(t, None, fg_state(t, inst)))
            .collect(),
        Algorithm::Fenner => uniform_grid(samples, fenner_success_time(inst))?
            .into_iter()
            .map(|t| Sample::new(t, None, fenner_state(t, inst)))
            .collect(),
        Algorithm::RcGround => uniform_grid(samples, T::one())?
            .into_iter()
            .map(|s| {
                Ok(Sample::new(
                    rc_schedule_t(s, inst),
                    Some(s),
                    rc_ground_state(s, inst)?,
                ))
            })
            .collect::<Result<_>>()?,
        Algorithm::WalkFollower => uniform_grid(samples, T::one())?
            .into_iter()
            .map(|s| {
                Ok(Sample::new(
                    walk_follower_time(s, inst)?,
                    Some(s),
                    walk_follower_ground_state(s, inst)?,
                ))
            })
            .collect::<Result<_>>()?,
        Algorithm::RolandCerf => rc_dynamics(inst, &uniform_grid(samples, T::one())?)?,
    };
    Trajectory::from_samples(points)
}

/// Integrates the adiabatic dynamics and records the state at each `s`
/// (increasing, starting at 0).
fn rc_dynamics<T: Real>(inst: &SearchInstance<T>, grid: &[T]) -> Result<Vec<Sample<T>>> {
    let mut psi = SubspaceState::uniform(inst.n());
    let mut out = vec![Sample::new(T::zero(), Some(grid[0]), psi)];
    let max_dt = lit::<T>(MAX_DT);
    for pair in grid.windows(2) {
        let (t0, t1) = (rc_schedule_t(pair[0], inst), rc_schedule_t(pair[1], inst));
        let steps = ((t1 - t0) / max_dt).ceil().to_usize().unwrap_or(1).max(1);
        let seg = evolve_scheduled(
            |t| rc_schedule_s(t, inst),
            |s| rc_hamiltonian(s, inst),
            &psi,
            t0,
            t1,
            steps,
        )?;
        psi = *seg.final_state();
        out.push(Sample::new(t1, Some(pair[1]), psi));
    }
    Ok(out)
}

/// Where to evaluate an algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parameter<T> {
    Time(T),
    Schedule(T),
}

/// The state of `alg` at a given time or schedule value.
///
/// Grover is defined only at multiples of its interval; the walks have no
/// schedule parameter.
pub fn state_at<T: Real>(
    alg: Algorithm,
    at: Parameter<T>,
    inst: &SearchInstance<T>,
) -> Result<SubspaceState<T>> {
    match (alg, at) {
        (Algorithm::Grover, Parameter::Time(t)) => {
            let k = (t / fenner_grover_interval(inst)).round();
            let expect = k * fenner_grover_interval(inst);
            if k < T::zero() || (t - expect).abs() > lit::<T>(1e-9) * (T::one() + t.abs()) {
                return Err(domain("t", t, "multiples of the Grover interval"));
            }
            Ok(grover_state(k.to_u64().unwrap_or(0), inst))
        }
        (Algorithm::FarhiGutmann, Parameter::Time(t)) => Ok(fg_state(t, inst)),
        (Algorithm::Fenner, Parameter::Time(t)) => Ok(fenner_state(t, inst)),
        (Algorithm::RcGround, Parameter::Schedule(s)) => rc_ground_state(s, inst),
        (Algorithm::RcGround, Parameter::Time(t)) => rc_ground_state(rc_schedule_s(t, inst)?, inst),
        (Algorithm::WalkFollower, Parameter::Schedule(s)) => walk_follower_ground_state(s, inst),
        (Algorithm::WalkFollower, Parameter::Time(t)) => {
            walk_follower_ground_state(walk_follower_schedule(t, inst)?.s, inst)
        }
        (Algorithm::RolandCerf, Parameter::Schedule(s)) => rc_state(s, inst),
        (Algorithm::RolandCerf, Parameter::Time(t)) => rc_state(rc_schedule_s(t, inst)?, inst),
        (alg, Parameter::Schedule(_)) => {
            Err(Error::Mismatch(format!("{alg} has no schedule parameter")))
        }
    }
}

fn rc_state<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<SubspaceState<T>> {
    if s == T::zero() {
        return Ok(SubspaceState::uniform(inst.n()));
    }
    let samples = rc_dynamics(inst, &[T::zero(), s])?;
    Ok(samples[1].state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::fidelity;

    fn inst(n: u64) -> SearchInstance<f64> {
        SearchInstance::new(n).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("dijkstra".parse::<Algorithm>().is_err());
    }

    #[test]
    fn grover_samples_iterates() {
        let tr = trajectory(Algorithm::Grover, &inst(1024), 0).unwrap();
        assert_eq!(tr.len(), 26);
        assert!(tr.success_prob_final > 0.999);
    }

    #[test]
    fn walks_end_on_marked_vertex() {
        for alg in [
            Algorithm::FarhiGutmann,
            Algorithm::Fenner,
            Algorithm::RcGround,
            Algorithm::WalkFollower,
        ] {
            let tr = trajectory(alg, &inst(64), 50).unwrap();
            assert_eq!(tr.len(), 50);
            assert!(tr.success_prob_final > 1.0 - 1e-12, "{alg}");
            assert!(
                1.0 - fidelity(&tr.samples()[0].state, &SubspaceState::uniform(64)) < 1e-14,
                "{alg}"
            );
            assert_eq!(tr.samples()[0].s.is_some(), alg.is_scheduled());
        }
    }

    #[test]
    fn rc_dynamics_at_unit_slack() {
        // Reference from an adaptive high-accuracy ODE solve.
        let tr = trajectory(Algorithm::RolandCerf, &inst(64), 11).unwrap();
        assert_eq!(tr.samples()[10].s, Some(1.0));
        assert!((tr.success_prob_final - 0.33327704455).abs() < 1e-8);
        assert!(!tr.drift_flagged());
    }

    #[test]
    fn too_few_samples() {
        assert!(trajectory(Algorithm::Fenner, &inst(8), 1).is_err());
    }

    #[test]
    fn evaluation_points() {
        let i = inst(64);
        let dt = fenner_grover_interval(&i);
        let g = state_at(Algorithm::Grover, Parameter::Time(3.0 * dt), &i).unwrap();
        let f = state_at(Algorithm::Fenner, Parameter::Time(3.0 * dt), &i).unwrap();
        assert!(1.0 - fidelity(&g, &f) < 1e-13);
        assert!(state_at(Algorithm::Grover, Parameter::Time(0.5 * dt), &i).is_err());
        assert!(state_at(Algorithm::Fenner, Parameter::Schedule(0.5), &i).is_err());
        let a = state_at(Algorithm::RcGround, Parameter::Schedule(0.3), &i).unwrap();
        let b = state_at(
            Algorithm::RcGround,
            Parameter::Time(rc_schedule_t(0.3, &i)),
            &i,
        )
        .unwrap();
        assert!(1.0 - fidelity(&a, &b) < 1e-12);
    }
}
