//! Two-level simulator for four formulations of unstructured search:
//! Grover's discrete iterate, the continuous-time walk on the complete
//! graph, the local adiabatic interpolation and the chiral walk on the
//! weighted directed star graph.
//!
//! Everything is generic over a [`Real`] scalar; the aliases at the crate
//! root fix it to `f64`.

// `!(x <= limit)` is the NaN-rejecting form of `x > limit`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod equivalence;
pub mod error;
pub mod fullspace;
pub mod scalar;
pub mod search;
pub mod subspace;
pub mod synthesis;
pub mod trajectories;

pub use error::{Error, Result};
pub use scalar::Real;

pub type State = subspace::SubspaceState<f64>;
pub type Hamiltonian = subspace::Hermitian2<f64>;
pub type Instance = search::SearchInstance<f64>;
pub type Bloch = subspace::BlochPoint<f64>;
