//! Monte-Carlo experiment driver: scenario sweeps, deterministic seeding,
//! CSV/JSON output, summary statistics and the complexity table.

pub mod complexity;
mod output;
mod run;
mod spec;
pub mod stats;

pub use complexity::{complexity_table, ComplexityParams, ComplexityRow, PhaseCost};
pub use output::{emit_results, read_results, write_results, OutputFormat};
pub use run::{run_mode, run_monte_carlo, trial_seed, ModeOutcome, RunOptions, TrialResult};
pub use spec::{Mode, PhaseKind, SweepSpec, SweepVar};
