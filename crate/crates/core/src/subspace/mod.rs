//! Exact two-level algebra on `span{|w⟩, |r⟩}`: states, Hermitian
//! operators, closed-form eigensolves, propagation and Bloch-sphere geometry.

mod operator;
mod propagate;
mod state;
mod trajectory;

pub use operator::{eigen2, EigenDecomposition2, Hermitian2, Matrix2};
pub use propagate::{
    evolve_const, evolve_scheduled, evolve_timedep, propagator, rk4_step, NORM_DRIFT_FLAG,
    NORM_DRIFT_LIMIT,
};
pub use state::{bloch_coords, fidelity, make_state, BlochPoint, SubspaceState};
pub use trajectory::{path_length, path_length_of, Sample, Trajectory};
