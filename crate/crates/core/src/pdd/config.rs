use crate::error::{Error, Result};
use crate::scalar::Real;

/// Penalty-dual-decomposition parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PddConfig<T> {
    /// Initial penalty parameter `γ⁰`.
    pub gamma0: T,
    /// Penalty decrease factor `ζ ∈ (0, 1)`.
    pub zeta: T,
    /// Residual threshold `η` that switches between dual and penalty updates.
    pub eta: T,
    /// Outer stopping tolerance `ε` on the sum-rate change (bits).
    pub epsilon: T,
    pub max_outer_iters: usize,
    /// Cyclic coordinate passes over the phases per outer iteration.
    pub inner_phase_sweeps: usize,
    /// Initial value of every dual entry.
    pub dual_init: T,
    /// `γ` is never decreased below this.
    pub gamma_floor: T,
    /// When set, the solver iterates on an equivalent problem with unit
    /// power whose channels, noise and error variances are rescaled so that
    /// `max_k E‖ĥ[k]‖²` equals this value. Rates are invariant under the
    /// rescaling; the penalty terms and `η` are not, and this fixes the
    /// units that `γ⁰` is calibrated against.
    pub gain_target: Option<T>,
}

/// Default of [`PddConfig::gain_target`].
pub const DEFAULT_GAIN_TARGET: f64 = 1.0;

impl<T: Real> Default for PddConfig<T> {
    fn default() -> Self {
        Self {
            gamma0: T::lit(2.0661),
            zeta: T::lit(0.7),
            eta: T::lit(0.1),
            epsilon: T::lit(0.001),
            max_outer_iters: 500,
            inner_phase_sweeps: 1,
            dual_init: T::lit(0.1),
            gamma_floor: T::lit(1e-8),
            gain_target: Some(T::lit(DEFAULT_GAIN_TARGET)),
        }
    }
}

impl<T: Real> PddConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.zeta > T::zero() && self.zeta < T::one()) {
            return Err(Error::invalid(format!("zeta = {} is outside (0, 1)", self.zeta)));
        }
        if !(self.eta > T::zero() && self.epsilon > T::zero() && self.gamma0 > T::zero()) {
            return Err(Error::invalid("eta, epsilon and gamma0 must be positive"));
        }
        if !(self.gamma_floor > T::zero()) || !self.dual_init.is_finite() {
            return Err(Error::invalid("gamma floor must be positive and dual init finite"));
        }
        if let Some(g) = self.gain_target {
            if !(g > T::zero() && g.is_finite()) {
                return Err(Error::invalid(format!("gain target {g} must be positive and finite")));
            }
        }
        if self.max_outer_iters == 0 {
            return Err(Error::invalid("at least one outer iteration is required"));
        }
        Ok(())
    }
}
