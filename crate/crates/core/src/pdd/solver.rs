use log::{debug, warn};

use super::blocks::{
    build_phase_quadratic, dual_or_penalty_step, project_abar, project_tbar, project_wbar,
    update_alpha, update_aux, update_t, update_w, DualStep,
};
use super::config::PddConfig;
use super::state::{PddState, Residuals};
use crate::error::{Error, Result};
use crate::quadratic::PhaseQuadratic;
use crate::scalar::Real;
use crate::system::{noma_rates, ChannelRealization, PhaseVector, Rates, SystemConfig};
use crate::trellis::{exhaustive_search, quantize_phases, trellis_search, TrellisConfig};

/// How the phase block (step 7) is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    /// Cyclic closed-form coordinate updates over the unit circle.
    Continuous,
    /// Trellis search over the `M_IRS`-ary alphabet.
    Trellis(TrellisConfig),
    /// Continuous iterations, then nearest-symbol rounding of the final phases.
    Quantize { m_irs: usize },
    /// Exhaustive enumeration of the alphabet (small `M` only).
    Exhaustive { m_irs: usize },
}

impl PhaseMode {
    pub fn alphabet_size(&self) -> Option<usize> {
        match *self {
            PhaseMode::Continuous => None,
            PhaseMode::Trellis(t) => Some(t.m_irs),
            PhaseMode::Quantize { m_irs } | PhaseMode::Exhaustive { m_irs } => Some(m_irs),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PhaseMode::Continuous => "continuous",
            PhaseMode::Trellis(_) => "trellis",
            PhaseMode::Quantize { .. } => "quantize",
            PhaseMode::Exhaustive { .. } => "exhaustive",
        }
    }
}

/// Whether the design accounts for the channel estimation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Robustness {
    /// `σ_h²` enters every update.
    Robust,
    /// The design assumes `σ_h² = 0`; rates are still scored with the true value.
    NonRobust,
}

/// Feasibility of the auxiliary copies and the phases at termination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Feasibility {
    pub power: bool,
    pub power_split: bool,
    pub ordering: bool,
    pub unit_modulus: bool,
    pub residuals_within_eta: bool,
}

impl Feasibility {
    pub fn all(&self) -> bool {
        self.power && self.power_split && self.ordering && self.unit_modulus && self.residuals_within_eta
    }
}

/// Bookkeeping of one outer iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<T> {
    pub sum_rate: T,
    pub residuals: Residuals<T>,
    /// `γ` in effect during the block updates.
    pub gamma: T,
    pub step: DualStep,
    /// Bound objective before step 1 and after each of steps 1 to 7
    /// (present only when tracing is enabled).
    pub block_objectives: Option<[T; 8]>,
}

#[derive(Debug, Clone)]
pub struct SolveReport<T> {
    pub rates: Rates<T>,
    pub iterations: usize,
    pub residuals: Residuals<T>,
    pub gamma: T,
    pub converged: bool,
    pub feasibility: Feasibility,
    /// Sum rate (bits) after every outer iteration.
    pub trajectory: Vec<T>,
    pub records: Vec<IterationRecord<T>>,
    /// Times the power-split projection saw a negative first component.
    pub negative_direction_count: usize,
    /// Times a projection was undefined and the previous value kept.
    pub projection_fallbacks: usize,
    /// Final iterate. With [`PddConfig::gain_target`] set, channel-valued
    /// entries (`T`, `T̄`, `Λ_h`, `Λ_t`, `ĥ`) are in the rescaled units;
    /// `W`, `W̄` and `Λ_w` are in the caller's units.
    pub state: PddState<T>,
}

impl<T: Real> SolveReport<T> {
    pub fn max_residual(&self) -> T {
        self.residuals.max()
    }
}

/// PDD outer loop with cyclic closed-form block updates.
#[derive(Debug, Clone)]
pub struct PddSolver<T> {
    pub system: SystemConfig<T>,
    pub pdd: PddConfig<T>,
    pub phase_mode: PhaseMode,
    pub robustness: Robustness,
    /// Record the bound objective after every block.
    pub trace_objectives: bool,
}

impl<T: Real> PddSolver<T> {
    pub fn new(system: SystemConfig<T>, pdd: PddConfig<T>) -> Self {
        Self {
            system,
            pdd,
            phase_mode: PhaseMode::Continuous,
            robustness: Robustness::Robust,
            trace_objectives: false,
        }
    }

    pub fn with_phase_mode(mut self, mode: PhaseMode) -> Self {
        self.phase_mode = mode;
        self
    }

    pub fn with_robustness(mut self, robustness: Robustness) -> Self {
        self.robustness = robustness;
        self
    }

    pub fn with_tracing(mut self, on: bool) -> Self {
        self.trace_objectives = on;
        self
    }

    pub fn solve(&self, channels: &ChannelRealization<T>) -> Result<SolveReport<T>> {
        self.system.validate()?;
        self.pdd.validate()?;
        if channels.n_antennas() != self.system.n_antennas {
            return Err(Error::dimension(format!(
                "channels have {} antennas, config {}",
                channels.n_antennas(),
                self.system.n_antennas
            )));
        }
        if let Some(m_irs) = self.phase_mode.alphabet_size() {
            if m_irs == 0 {
                return Err(Error::invalid("alphabet size must be at least 1"));
            }
        }

        if let Some(target) = self.pdd.gain_target {
            let gain = self.system.power * channels.mean_gain();
            if gain > T::zero() && gain.is_finite() {
                // unit power, channels scaled by c·√P, noise by c², errors by c²P
                let p = self.system.power;
                let c2 = target / gain;
                let mut inner = self.clone();
                inner.pdd.gain_target = None;
                inner.system.power = T::one();
                inner.system.noise_var = self.system.noise_var * c2;
                inner.system.err_var_au = self.system.err_var_au * c2 * p;
                inner.system.err_var_iu = self.system.err_var_iu * c2 * p;
                let mut r = inner.solve(&channels.scaled((c2 * p).sqrt()))?;
                let root = p.sqrt();
                r.state.w = r.state.w.scale_real(root);
                r.state.w_bar = r.state.w_bar.scale_real(root);
                r.state.lambda_w = r.state.lambda_w.scale_real(root);
                r.feasibility.power = r.state.w_bar.frobenius_norm_sqr() <= p * (T::one() + T::lit(1e-9));
                return Ok(r);
            }
        }

        let sigma_true = channels.effective_error_variance(&self.system);
        let sigma_design = match self.robustness {
            Robustness::Robust => sigma_true,
            Robustness::NonRobust => T::zero(),
        };
        let sigma_n = self.system.noise_var;

        if let PhaseMode::Quantize { m_irs } = self.phase_mode {
            let continuous = self.clone().with_phase_mode(PhaseMode::Continuous);
            let mut r = continuous.solve(channels)?;
            r.state.v = quantize_phases(&r.state.v, m_irs)?;
            r.state.refresh_effective_channels(channels)?;
            r.rates = noma_rates(
                [&r.state.h_eff[0], &r.state.h_eff[1]],
                &r.state.w_bar,
                r.state.alpha_bar,
                sigma_true,
                sigma_n,
            )?;
            r.feasibility = self.feasibility(&r.state, &r.residuals);
            return Ok(r);
        }

        let mut s = PddState::init(channels, &self.system, &self.pdd)?;
        if let Some(m_irs) = self.phase_mode.alphabet_size() {
            s.v = PhaseVector::discrete(vec![m_irs - 1; channels.n_irs()], m_irs)?;
            s.refresh_effective_channels(channels)?;
            s.t = super::state::coupled_t(&s.w, &s.h_eff);
            s.t_bar = super::state::feasible_copy(&s.t);
        }

        let score = |s: &PddState<T>| -> Result<Rates<T>> {
            noma_rates(
                [&s.h_eff[0], &s.h_eff[1]],
                &s.w_bar,
                s.alpha_bar,
                sigma_true,
                sigma_n,
            )
        };

        let mut prev = score(&s)?.sum;
        if estimates_vanish(channels) {
            // every design scores zero; the feasible initial point is final
            let residuals = s.residuals();
            return Ok(SolveReport {
                rates: score(&s)?,
                iterations: 1,
                residuals,
                gamma: s.gamma,
                converged: true,
                feasibility: self.feasibility(&s, &residuals),
                trajectory: vec![prev],
                records: vec![IterationRecord {
                    sum_rate: prev,
                    residuals,
                    gamma: s.gamma,
                    step: DualStep::Duals,
                    block_objectives: None,
                }],
                negative_direction_count: 0,
                projection_fallbacks: 0,
                state: s,
            });
        }
        let mut trajectory = Vec::new();
        let mut records = Vec::new();
        let mut negative = 0usize;
        let mut fallbacks = 0usize;
        let mut converged = false;
        let mut residuals = s.residuals();

        for iter in 0..self.pdd.max_outer_iters {
            let gamma = s.gamma;
            let mut trace = [T::zero(); 8];
            let mut mark = |slot: usize, s: &PddState<T>| {
                if self.trace_objectives {
                    trace[slot] = s.bound_objective(sigma_design, sigma_n);
                }
            };
            mark(0, &s);
            update_aux(&mut s, sigma_design, sigma_n);
            mark(1, &s);
            update_w(&mut s, sigma_design)?;
            mark(2, &s);
            update_alpha(&mut s);
            mark(3, &s);
            update_t(&mut s);
            mark(4, &s);
            s.t_bar = project_tbar(&s.t, &s.lambda_t, s.gamma);
            mark(5, &s);
            s.w_bar = project_wbar(&s.w, &s.lambda_w, s.gamma, self.system.power);
            match project_abar(s.alpha, s.lambda_a, s.gamma) {
                Ok(p) => {
                    s.alpha_bar = p.alpha_bar;
                    if p.negative_direction {
                        negative += 1;
                    }
                }
                Err(Error::ProjectionUndefined(msg)) => {
                    warn!("{msg}; keeping the previous power split");
                    fallbacks += 1;
                }
                Err(e) => return Err(e),
            }
            mark(6, &s);
            if channels.n_irs() > 0 {
                let quad = build_phase_quadratic(&s, channels)?;
                self.update_phases(&mut s, &quad)?;
                s.refresh_effective_channels(channels)?;
            }
            mark(7, &s);

            residuals = s.residuals();
            let step = dual_or_penalty_step(&mut s, &residuals, &self.pdd);
            let rate = score(&s)?.sum;
            trajectory.push(rate);
            records.push(IterationRecord {
                sum_rate: rate,
                residuals,
                gamma,
                step,
                block_objectives: self.trace_objectives.then_some(trace),
            });
            debug!(
                "iter {iter}: Rsum {rate}, residual {}, gamma {gamma}, {step:?}",
                residuals.max()
            );
            let done = (rate - prev).abs() < self.pdd.epsilon && residuals.max() <= self.pdd.eta;
            prev = rate;
            if done {
                converged = true;
                break;
            }
        }

        let rates = score(&s)?;
        let feasibility = self.feasibility(&s, &residuals);
        Ok(SolveReport {
            rates,
            iterations: trajectory.len(),
            residuals,
            gamma: s.gamma,
            converged,
            feasibility,
            trajectory,
            records,
            negative_direction_count: negative,
            projection_fallbacks: fallbacks,
            state: s,
        })
    }

    fn update_phases(&self, s: &mut PddState<T>, quad: &PhaseQuadratic<T>) -> Result<()> {
        match self.phase_mode {
            PhaseMode::Continuous => quad.coordinate_sweeps(&mut s.v, self.pdd.inner_phase_sweeps),
            PhaseMode::Trellis(cfg) => {
                let cfg = TrellisConfig {
                    memory: cfg.memory.min(quad.dim()),
                    ..cfg
                };
                let candidate = trellis_search(quad, &cfg, Some(&s.v))?;
                keep_better(s, candidate, quad);
            }
            // quantization happens once, after the continuous iterations
            PhaseMode::Quantize { .. } => {
                quad.coordinate_sweeps(&mut s.v, self.pdd.inner_phase_sweeps)
            }
            PhaseMode::Exhaustive { m_irs } => {
                let candidate = exhaustive_search(quad, m_irs)?;
                keep_better(s, candidate, quad);
            }
        }
        Ok(())
    }

    fn feasibility(&self, s: &PddState<T>, r: &Residuals<T>) -> Feasibility {
        let tol = T::lit(1e-9);
        let split = s.alpha_bar[0] * s.alpha_bar[0] + s.alpha_bar[1] * s.alpha_bar[1];
        Feasibility {
            power: s.w_bar.frobenius_norm_sqr() <= self.system.power + tol,
            power_split: (split - T::one()).abs() <= tol,
            ordering: s.t_bar[0][0].norm_sqr() >= s.t_bar[1][1].norm_sqr() - tol,
            unit_modulus: s.v.modulus_defect() <= T::lit(crate::system::UNIT_MODULUS_TOL),
            residuals_within_eta: r.max() <= self.pdd.eta,
        }
    }
}

fn estimates_vanish<T: Real>(channels: &ChannelRealization<T>) -> bool {
    use num_traits::Zero;
    (0..2).all(|k| {
        channels.h_au_est[k].iter().all(|x| x.is_zero())
            && channels.h_c_est(k).as_slice().iter().all(|x| x.is_zero())
    })
}

/// Keeps the current alphabet-valued phases when the search result is
/// strictly worse on the benchmark, so the phase block never ascends.
fn keep_better<T: Real>(s: &mut PddState<T>, candidate: PhaseVector<T>, quad: &PhaseQuadratic<T>) {
    if s.v.alphabet_size() == candidate.alphabet_size()
        && quad.benchmark(s.v.as_slice()) < quad.benchmark(candidate.as_slice())
    {
        return;
    }
    s.v = candidate;
}
