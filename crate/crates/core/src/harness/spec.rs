use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pdd::PhaseMode;
use crate::system::{db_to_linear, SystemConfig};
use crate::trellis::TrellisConfig;

/// Transmission scheme and CSI assumption of one row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    NomaRobust,
    NomaNonRobust,
    NomaPerfect,
    Fdma,
    Tdma,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::NomaRobust,
        Mode::NomaNonRobust,
        Mode::NomaPerfect,
        Mode::Fdma,
        Mode::Tdma,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::NomaRobust => "noma-robust",
            Mode::NomaNonRobust => "noma-nonrobust",
            Mode::NomaPerfect => "noma-perfect",
            Mode::Fdma => "fdma",
            Mode::Tdma => "tdma",
        }
    }

    pub fn is_noma(&self) -> bool {
        matches!(self, Mode::NomaRobust | Mode::NomaNonRobust | Mode::NomaPerfect)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown mode '{s}'")))
    }
}

/// Phase-block strategy selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseKind {
    Continuous,
    Trellis,
    Quantize,
    Exhaustive,
}

impl PhaseKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseKind::Continuous => "continuous",
            PhaseKind::Trellis => "trellis",
            PhaseKind::Quantize => "quantize",
            PhaseKind::Exhaustive => "exhaustive",
        }
    }

    pub fn to_mode(self, m_irs: usize, memory: usize) -> PhaseMode {
        match self {
            PhaseKind::Continuous => PhaseMode::Continuous,
            PhaseKind::Trellis => PhaseMode::Trellis(TrellisConfig::new(m_irs, memory)),
            PhaseKind::Quantize => PhaseMode::Quantize { m_irs },
            PhaseKind::Exhaustive => PhaseMode::Exhaustive { m_irs },
        }
    }
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "continuous" => Ok(PhaseKind::Continuous),
            "trellis" => Ok(PhaseKind::Trellis),
            "quantize" => Ok(PhaseKind::Quantize),
            "exhaustive" => Ok(PhaseKind::Exhaustive),
            _ => Err(Error::invalid(format!("unknown phase mode '{s}'"))),
        }
    }
}

/// Parameter varied across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVar {
    /// IRS size `M`.
    M,
    /// Transmit power `P` (linear).
    P,
    /// Both estimation-error variances, in dB.
    SigmaSq,
    /// Trellis memory `T`.
    TMemory,
}

impl SweepVar {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVar::M => "M",
            SweepVar::P => "P",
            SweepVar::SigmaSq => "sigma_sq",
            SweepVar::TMemory => "T_memory",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(SweepVar::M),
            "P" | "p" => Ok(SweepVar::P),
            "sigma_sq" | "sigma-sq" | "sigma" => Ok(SweepVar::SigmaSq),
            "T_memory" | "T" | "t-memory" | "t_memory" => Ok(SweepVar::TMemory),
            _ => Err(Error::invalid(format!("unknown sweep variable '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub values: Vec<f64>,
    pub modes: Vec<Mode>,
    pub phase: PhaseKind,
    pub m_irs: usize,
    pub trellis_memory: usize,
    pub trials: usize,
    pub master_seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("at least one trial is required"));
        }
        if self.values.is_empty() || self.modes.is_empty() {
            return Err(Error::invalid("sweep values and modes must be non-empty"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("sweep values must be finite"));
        }
        let integral = matches!(self.var, SweepVar::M | SweepVar::TMemory);
        if integral && self.values.iter().any(|v| *v < 0.0 || v.fract() != 0.0) {
            return Err(Error::invalid(format!("{} takes non-negative integers", self.var)));
        }
        Ok(())
    }

    /// Scenario and phase strategy for one swept value.
    pub fn point(&self, base: &SystemConfig<f64>, value: f64) -> (SystemConfig<f64>, PhaseMode) {
        let mut cfg = base.clone();
        let mut memory = self.trellis_memory;
        match self.var {
            SweepVar::M => cfg.n_irs = value as usize,
            SweepVar::P => cfg.power = value,
            SweepVar::SigmaSq => {
                let v = db_to_linear(value);
                cfg.err_var_au = v;
                cfg.err_var_iu = v;
            }
            SweepVar::TMemory => memory = value as usize,
        }
        (cfg, self.phase.to_mode(self.m_irs, memory))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Mode::ALL {
            assert_eq!(m.as_str().parse::<Mode>().unwrap(), m);
        }
        for p in [PhaseKind::Continuous, PhaseKind::Trellis, PhaseKind::Quantize, PhaseKind::Exhaustive] {
            assert_eq!(p.as_str().parse::<PhaseKind>().unwrap(), p);
        }
        for v in [SweepVar::M, SweepVar::P, SweepVar::SigmaSq, SweepVar::TMemory] {
            assert_eq!(v.as_str().parse::<SweepVar>().unwrap(), v);
        }
        assert!("cdma".parse::<Mode>().is_err());
    }

    #[test]
    fn sweep_points_apply_values() {
        let spec = SweepSpec {
            var: SweepVar::SigmaSq,
            values: vec![-10.0],
            modes: vec![Mode::NomaRobust],
            phase: PhaseKind::Trellis,
            m_irs: 4,
            trellis_memory: 3,
            trials: 1,
            master_seed: 0,
        };
        let (cfg, _) = spec.point(&SystemConfig::default(), -10.0);
        assert!((cfg.err_var_au - 0.1).abs() < 1e-15);
        let spec = SweepSpec { var: SweepVar::TMemory, ..spec };
        let (_, mode) = spec.point(&SystemConfig::default(), 2.0);
        assert_eq!(mode, PhaseMode::Trellis(TrellisConfig::new(4, 2)));
        let bad = SweepSpec { var: SweepVar::M, values: vec![2.5], ..spec };
        assert!(bad.validate().is_err());
    }
}
