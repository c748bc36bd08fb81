//! The four search evolutions in the two-level picture: Grover's iterate,
//! the complete-graph walk, the local adiabatic interpolation and the
//! chiral star-graph walk.

mod adiabatic;
mod fenner;
mod grover;
mod instance;
mod walk;

#[allow(unused_imports)]
pub(crate) use adiabatic::rc_ground_ratio;
pub use adiabatic::{
    adiabatic_error, rc_evolve, rc_gap, rc_ground_state, rc_hamiltonian, rc_schedule_point,
    rc_schedule_rate, rc_schedule_s, rc_schedule_s_closed, rc_schedule_t, rc_total_time,
    AdiabaticRun, ScheduleKind, SchedulePoint,
};
pub use fenner::{
    fenner_grover_interval, fenner_hamiltonian, fenner_rate, fenner_rotation, fenner_state,
    fenner_success_time,
};
pub use grover::{
    diffusion_reflection, grover_angle, grover_iterate, grover_optimal_iterations, grover_state,
    oracle_reflection,
};
pub use instance::SearchInstance;
pub use walk::{fg_hamiltonian, fg_state, fg_success_probability, fg_success_time};
