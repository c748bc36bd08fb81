use super::state::{BlochPoint, SubspaceState};
use crate::error::{domain, Error, Result};
use crate::scalar::{lit, Real};

/// One recorded point of an evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub t: T,
    /// Schedule value for adiabatic families.
    pub s: Option<T>,
    pub state: SubspaceState<T>,
    pub bloch: BlochPoint<T>,
}

impl<T: Real> Sample<T> {
    pub fn new(t: T, s: Option<T>, state: SubspaceState<T>) -> Self {
        Self {
            t,
            s,
            state,
            bloch: state.bloch(),
        }
    }
}

/// Ordered samples of an evolution plus summary metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    samples: Vec<Sample<T>>,
    pub success_prob_final: T,
    /// Accumulated great-circle arc on the Bloch sphere, radians.
    pub path_length: T,
    pub max_norm_drift: T,
}

impl<T: Real> Trajectory<T> {
    /// Builds a trajectory; times must be strictly increasing.
    pub fn from_samples(samples: Vec<Sample<T>>) -> Result<Self> {
        let last = samples
            .last()
            .ok_or(Error::TooFewSamples { needed: 1, got: 0 })?;
        for pair in samples.windows(2) {
            if !(pair[1].t > pair[0].t) {
                return Err(domain("sample time", pair[1].t, "strictly increasing"));
            }
        }
        let success_prob_final = last.state.success_probability();
        let max_norm_drift =
            samples
                .iter()
                .map(|s| s.state.norm_drift())
                .fold(
                    T::zero(),
                    |acc, d| if d > acc || d.is_nan() { d } else { acc },
                );
        let path_length = arc_length(samples.iter().map(|s| s.bloch));
        Ok(Self {
            samples,
            success_prob_final,
            path_length,
            max_norm_drift,
        })
    }

    /// Convenience constructor from `(t, s, state)` triples.
    pub fn from_states<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Option<T>, SubspaceState<T>)>,
    {
        Self::from_samples(
            points
                .into_iter()
                .map(|(t, s, st)| Sample::new(t, s, st))
                .collect(),
        )
    }

    pub fn samples(&self) -> &[Sample<T>] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn final_state(&self) -> &SubspaceState<T> {
        &self.samples[self.samples.len() - 1].state
    }

    /// True when the norm drifted beyond the flag threshold.
    pub fn drift_flagged(&self) -> bool {
        !(self.max_norm_drift <= lit(super::propagate::NORM_DRIFT_FLAG))
    }

    pub fn max_abs_y(&self) -> T {
        self.samples
            .iter()
            .fold(T::zero(), |acc, s| acc.max(s.bloch.y.abs()))
    }

    /// Keeps every `stride`-th sample plus the last one.
    pub fn decimate(&self, stride: usize) -> Self {
        let stride = stride.max(1);
        let n = self.samples.len();
        let kept: Vec<_> = self
            .samples
            .iter()
            .enumerate()
            .filter(|(i, _)| i % stride == 0 || *i == n - 1)
            .map(|(_, s)| *s)
            .collect();
        let mut out = Self::from_samples(kept).expect("subsequence of a valid trajectory");
        out.max_norm_drift = self.max_norm_drift;
        out
    }
}

fn arc_length<T: Real>(points: impl Iterator<Item = BlochPoint<T>>) -> T {
    let mut total = T::zero();
    let mut prev: Option<BlochPoint<T>> = None;
    for p in points {
        if let Some(q) = prev {
            total = total + q.angle_to(&p);
        }
        prev = Some(p);
    }
    total
}

/// Sum of great-circle angles between consecutive Bloch points.
pub fn path_length<T: Real>(traj: &Trajectory<T>) -> Result<T> {
    if traj.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: traj.len(),
        });
    }
    Ok(traj.path_length)
}

/// [`path_length`] for a bare sequence of points.
pub fn path_length_of<T: Real>(points: &[BlochPoint<T>]) -> Result<T> {
    if points.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: points.len(),
        });
    }
    Ok(arc_length(points.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_points_have_zero_length() {
        let p = BlochPoint::new(0.6, 0.0, 0.8);
        assert_eq!(path_length_of(&[p, p, p]).unwrap(), 0.0);
    }

    #[test]
    fn single_arc_from_uniform_to_marked() {
        let n = 1024u64;
        let s = SubspaceState::<f64>::uniform(n);
        let w = SubspaceState::<f64>::marked();
        let traj = Trajectory::from_states([(0.0, None, s), (1.0, None, w)]).unwrap();
        let nf = n as f64;
        let expect = ((2.0 - nf) / nf).acos();
        assert!((path_length(&traj).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let traj = Trajectory::from_states([(0.0, None, SubspaceState::<f64>::marked())]).unwrap();
        assert!(matches!(
            path_length(&traj),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn times_must_increase() {
        let w = SubspaceState::<f64>::marked();
        assert!(Trajectory::from_states([(1.0, None, w), (1.0, None, w)]).is_err());
    }

    #[test]
    fn decimate_keeps_endpoints() {
        let w = SubspaceState::<f64>::marked();
        let traj = Trajectory::from_states((0..10).map(|k| (k as f64, None, w))).unwrap();
        let d = traj.decimate(4);
        let ts: Vec<f64> = d.samples().iter().map(|s| s.t).collect();
        assert_eq!(ts, vec![0.0, 4.0, 8.0, 9.0]);
    }
}
