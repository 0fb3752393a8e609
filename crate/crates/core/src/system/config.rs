use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of served users. The model is hard-wired to one strong/weak pair.
pub const USERS: usize = 2;

/// Scenario description: dimensions, powers, error variances and geometry.
///
/// All quantities are linear except the shadowing spread and the gain
/// offset, which are in dB. Distances are in km.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig<T> {
    /// AP antenna count `N`.
    pub n_antennas: usize,
    /// IRS element count `M`; zero disables the IRS.
    pub n_irs: usize,
    /// Total transmit power `P`.
    pub power: T,
    pub noise_var: T,
    /// Per-entry estimation-error variance of the direct AP-user channels.
    pub err_var_au: T,
    /// Per-entry estimation-error variance of the IRS-user channels.
    pub err_var_iu: T,
    pub d_au: [T; 2],
    pub d_iu: [T; 2],
    pub d_ai: T,
    /// Log-normal shadowing standard deviation in dB; zero disables shadowing.
    pub shadow_std_db: T,
    /// Gain added to every link's path loss before it enters the channel
    /// statistics, i.e. the receive-side normalization that puts channel
    /// gains in units of the noise floor.
    pub gain_offset_db: T,
    pub master_seed: u64,
}

impl<T: Real> Default for SystemConfig<T> {
    fn default() -> Self {
        Self {
            n_antennas: 2,
            n_irs: 20,
            power: T::one(),
            noise_var: T::one(),
            err_var_au: T::lit(0.1),
            err_var_iu: T::lit(0.1),
            d_au: [T::lit(0.06); 2],
            d_iu: [T::lit(0.01); 2],
            d_ai: T::lit(0.05),
            shadow_std_db: T::lit(8.0),
            gain_offset_db: T::lit(DEFAULT_GAIN_OFFSET_DB),
            master_seed: 0,
        }
    }
}

/// Default receive-side normalization in dB (see [`SystemConfig::gain_offset_db`]).
pub const DEFAULT_GAIN_OFFSET_DB: f64 = 100.0;

impl<T: Real> SystemConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n_antennas == 0 {
            return Err(Error::invalid("antenna count must be positive"));
        }
        if !(self.power > T::zero()) {
            return Err(Error::invalid("transmit power must be positive"));
        }
        if !(self.noise_var > T::zero()) {
            return Err(Error::invalid("noise variance must be positive"));
        }
        if !(self.err_var_au >= T::zero() && self.err_var_iu >= T::zero()) {
            return Err(Error::invalid("error variances must be non-negative"));
        }
        let distances = self.d_au.iter().chain(&self.d_iu).chain(std::iter::once(&self.d_ai));
        for d in distances {
            if !(*d > T::zero()) {
                return Err(Error::invalid(format!("distance {d} km is not positive")));
            }
        }
        if !(self.shadow_std_db >= T::zero()) || !self.gain_offset_db.is_finite() {
            return Err(Error::invalid("shadowing spread and gain offset must be finite"));
        }
        Ok(())
    }

    /// Sets both estimation-error variances from a single value in dB.
    pub fn with_error_db(mut self, db: T) -> Self {
        let lin = db_to_linear(db);
        self.err_var_au = lin;
        self.err_var_iu = lin;
        self
    }

    /// Effective error variance `σ_AU² + M·σ_IU²·β_AI` for a given AP-IRS gain.
    pub fn effective_error_variance(&self, beta_ai: T) -> T {
        self.err_var_au + T::lit(self.n_irs as f64) * self.err_var_iu * beta_ai
    }
}

/// 3GPP-style large-scale fading: `10 log10 β = −127.8 − 27 log10 d + Z`.
pub fn pathloss_linear<T: Real>(d_km: T, z_db: T) -> Result<T> {
    if !(d_km > T::zero()) {
        return Err(Error::invalid(format!("distance {d_km} km is not positive")));
    }
    Ok(db_to_linear(T::lit(-127.8) - T::lit(27.0) * d_km.log10() + z_db))
}

#[inline]
pub fn db_to_linear<T: Real>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

#[inline]
pub fn linear_to_db<T: Real>(lin: T) -> T {
    T::lit(10.0) * lin.log10()
}

/// Large-scale coefficients of one realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeScaleGains<T> {
    pub beta_au: [T; 2],
    pub beta_iu: [T; 2],
    pub beta_ai: T,
}

impl<T: Real> LargeScaleGains<T> {
    /// Draws shadowing for every link and applies the configured offset.
    ///
    /// The draw order is fixed (AU1, AU2, IU1, IU2, AI) so a stream always
    /// yields the same gains for the same geometry.
    pub fn draw<R: Rng + ?Sized>(cfg: &SystemConfig<T>, rng: &mut R) -> Result<Self> {
        let mut link = |d: T| -> Result<T> {
            let z = T::standard_normal(rng) * cfg.shadow_std_db;
            pathloss_linear(d, z + cfg.gain_offset_db)
        };
        let beta_au = [link(cfg.d_au[0])?, link(cfg.d_au[1])?];
        let beta_iu = [link(cfg.d_iu[0])?, link(cfg.d_iu[1])?];
        let beta_ai = link(cfg.d_ai)?;
        Ok(Self {
            beta_au,
            beta_iu,
            beta_ai,
        })
    }

    /// Gains without shadowing.
    pub fn mean(cfg: &SystemConfig<T>) -> Result<Self> {
        let link = |d: T| pathloss_linear(d, cfg.gain_offset_db);
        Ok(Self {
            beta_au: [link(cfg.d_au[0])?, link(cfg.d_au[1])?],
            beta_iu: [link(cfg.d_iu[0])?, link(cfg.d_iu[1])?],
            beta_ai: link(cfg.d_ai)?,
        })
    }

    pub fn uniform(beta: T) -> Self {
        Self {
            beta_au: [beta; 2],
            beta_iu: [beta; 2],
            beta_ai: beta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        ((a - b) / b).abs() < 1e-12
    }

    #[test]
    fn pathloss_substitution() {
        assert!(close(pathloss_linear(0.1, 0.0).unwrap(), 10f64.powf(-10.08)));
        assert!(close(pathloss_linear(0.1, 0.0).unwrap(), 8.317637711026709e-11));
        assert!(close(pathloss_linear(1.0, 0.0).unwrap(), 10f64.powf(-12.78)));
        assert!(close(pathloss_linear(0.1, 8.0).unwrap(), 10f64.powf(-9.28)));
    }

    #[test]
    fn pathloss_rejects_non_positive_distance() {
        assert!(matches!(pathloss_linear(0.0, 0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(pathloss_linear(-1.0, 0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn effective_error_variance_substitution() {
        let cfg = SystemConfig::<f64> {
            err_var_au: 0.1,
            err_var_iu: 0.1,
            n_irs: 20,
            ..Default::default()
        };
        assert!((cfg.effective_error_variance(0.01) - 0.12).abs() < 1e-15);

        let no_iu = SystemConfig::<f64> {
            err_var_iu: 0.0,
            ..cfg.clone()
        };
        assert_eq!(no_iu.effective_error_variance(0.01), 0.1);

        let doubled = SystemConfig::<f64> { n_irs: 40, ..cfg.clone() };
        let base = cfg.effective_error_variance(0.01) - cfg.err_var_au;
        let twice = doubled.effective_error_variance(0.01) - doubled.err_var_au;
        assert!((twice - 2.0 * base).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        let ok = SystemConfig::<f64>::default();
        assert!(ok.validate().is_ok());
        assert!(SystemConfig { power: 0.0, ..ok.clone() }.validate().is_err());
        assert!(SystemConfig { d_ai: 0.0, ..ok.clone() }.validate().is_err());
        assert!(SystemConfig { err_var_au: -1.0, ..ok.clone() }.validate().is_err());
        assert!(SystemConfig { n_antennas: 0, ..ok }.validate().is_err());
    }
}
