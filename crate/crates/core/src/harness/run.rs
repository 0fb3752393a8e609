use std::time::Instant;

use log::{debug, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::{Mode, SweepSpec};
use crate::error::{Error, Result};
use crate::oma::{fdma_solve, tdma_solve, OmaConfig};
use crate::pdd::{PddConfig, PddSolver, PhaseMode, Robustness};
use crate::system::{ChannelRealization, SystemConfig};

/// One `(swept value, mode, trial)` outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub mode: String,
    pub phase_mode: String,
    pub swept_var: String,
    pub swept_value: f64,
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    #[serde(rename = "Rsum")]
    pub rsum: f64,
    pub iters: usize,
    pub converged: bool,
    pub residual: f64,
    /// Zero unless timing was requested, so outputs stay reproducible.
    pub wall_ms: f64,
    /// Fingerprint of the channel realization the row was computed on.
    #[serde(skip)]
    pub channel_hash: u64,
}

/// Execution knobs that never change results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Worker threads; `0` uses rayon's default.
    pub workers: usize,
    /// Record wall-clock time per row.
    pub timing: bool,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Channel seed of trial `trial`; independent of the swept value and mode so
/// every row of a trial sees the same channels.
pub fn trial_seed(master_seed: u64, trial: usize) -> u64 {
    mix(mix(master_seed) ^ (trial as u64))
}

/// Solves one mode on a given realization.
pub fn run_mode(
    mode: Mode,
    phase: PhaseMode,
    channels: &ChannelRealization<f64>,
    cfg: &SystemConfig<f64>,
    pdd: &PddConfig<f64>,
    oma: &OmaConfig<f64>,
) -> Result<ModeOutcome> {
    let outcome = match mode {
        Mode::NomaRobust | Mode::NomaNonRobust | Mode::NomaPerfect => {
            let (cfg, channels, robustness) = match mode {
                Mode::NomaPerfect => {
                    let mut exact = cfg.clone();
                    exact.err_var_au = 0.0;
                    exact.err_var_iu = 0.0;
                    (exact, channels.with_perfect_csi(), Robustness::Robust)
                }
                Mode::NomaNonRobust => (cfg.clone(), channels.clone(), Robustness::NonRobust),
                _ => (cfg.clone(), channels.clone(), Robustness::Robust),
            };
            let r = PddSolver::new(cfg, *pdd)
                .with_phase_mode(phase)
                .with_robustness(robustness)
                .solve(&channels)?;
            ModeOutcome {
                r1: r.rates.r1,
                r2: r.rates.r2,
                iters: r.iterations,
                converged: r.converged,
                residual: r.max_residual(),
                trajectory: r.trajectory,
            }
        }
        Mode::Fdma | Mode::Tdma => {
            let s = if mode == Mode::Fdma {
                fdma_solve(channels, cfg, oma)?
            } else {
                tdma_solve(channels, cfg, oma)?
            };
            ModeOutcome {
                r1: s.rates.r1,
                r2: s.rates.r2,
                iters: s.iterations,
                converged: s.converged,
                residual: 0.0,
                trajectory: s.trajectory,
            }
        }
    };
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeOutcome {
    pub r1: f64,
    pub r2: f64,
    pub iters: usize,
    pub converged: bool,
    pub residual: f64,
    /// Sum rate after every iteration.
    pub trajectory: Vec<f64>,
}

/// Runs every `(value, trial, mode)` of `spec`.
///
/// Rows come back ordered by swept value, then mode (in `spec.modes` order),
/// then trial, regardless of the worker count. Solver failures become rows
/// with `NaN` rates and `converged = false`.
pub fn run_monte_carlo(
    spec: &SweepSpec,
    cfg: &SystemConfig<f64>,
    pdd: &PddConfig<f64>,
    oma: &OmaConfig<f64>,
    opts: RunOptions,
) -> Result<Vec<TrialResult>> {
    spec.validate()?;
    cfg.validate()?;
    pdd.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
    let items: Vec<(usize, usize)> = (0..spec.values.len())
        .flat_map(|v| (0..spec.trials).map(move |t| (v, t)))
        .collect();
    let per_item: Vec<Result<Vec<TrialResult>>> = pool.install(|| {
        items
            .par_iter()
            .map(|&(vi, trial)| run_item(spec, cfg, pdd, oma, opts, vi, trial))
            .collect()
    });
    let mut blocks = Vec::with_capacity(per_item.len());
    for b in per_item {
        blocks.push(b?);
    }
    // blocks[vi * trials + trial][mode]
    let mut rows = Vec::with_capacity(blocks.len() * spec.modes.len());
    for vi in 0..spec.values.len() {
        for mi in 0..spec.modes.len() {
            for trial in 0..spec.trials {
                rows.push(blocks[vi * spec.trials + trial][mi].clone());
            }
        }
    }
    Ok(rows)
}

fn run_item(
    spec: &SweepSpec,
    base: &SystemConfig<f64>,
    pdd: &PddConfig<f64>,
    oma: &OmaConfig<f64>,
    opts: RunOptions,
    vi: usize,
    trial: usize,
) -> Result<Vec<TrialResult>> {
    let value = spec.values[vi];
    let (cfg, phase) = spec.point(base, value);
    let channels = ChannelRealization::sample(&cfg, trial_seed(spec.master_seed, trial))?;
    let hash = channels.fingerprint();
    debug!("value {value} trial {trial}: channel hash {hash:016x}");
    let phase_name = phase.name();
    Ok(spec
        .modes
        .iter()
        .map(|&mode| {
            let start = Instant::now();
            let out = run_mode(mode, phase, &channels, &cfg, pdd, oma);
            let wall_ms = if opts.timing {
                start.elapsed().as_secs_f64() * 1e3
            } else {
                0.0
            };
            let out = out.unwrap_or_else(|e| {
                warn!("{mode} at {}={value}, trial {trial}: {e}", spec.var);
                ModeOutcome {
                    r1: f64::NAN,
                    r2: f64::NAN,
                    iters: 0,
                    converged: false,
                    residual: f64::NAN,
                    trajectory: Vec::new(),
                }
            });
            TrialResult {
                trial,
                mode: mode.to_string(),
                phase_mode: if mode.is_noma() { phase_name } else { "continuous" }.to_string(),
                swept_var: spec.var.to_string(),
                swept_value: value,
                r1: out.r1,
                r2: out.r2,
                rsum: out.r1 + out.r2,
                iters: out.iters,
                converged: out.converged,
                residual: out.residual,
                wall_ms,
                channel_hash: hash,
            }
        })
        .collect())
}
