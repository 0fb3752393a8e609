//! Penalty dual decomposition with closed-form BSUM block updates for the
//! robust two-user NOMA sum-rate problem.

mod blocks;
mod config;
mod solver;
mod state;

pub use blocks::{
    build_phase_quadratic, dual_or_penalty_step, project_abar, project_tbar, project_wbar,
    tbar_printed_candidates, update_alpha, update_aux, update_t, update_w, AbarProjection,
    DualStep,
};
pub use config::{PddConfig, DEFAULT_GAIN_TARGET};
pub use solver::{
    Feasibility, IterationRecord, PddSolver, PhaseMode, Robustness, SolveReport,
};
pub use state::{coupled_t, Mat2, PddState, Residuals};
