//! Robust joint active/passive beamforming for an IRS-aided two-user NOMA
//! downlink under imperfect CSI.
//!
//! The numeric core is generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which is what the harness and CLI use.
//!
//! - [`system`]: channel model, estimation errors, worst-case NOMA rates.
//! - [`pdd`]: penalty-dual-decomposition solver with closed-form blocks.
//! - [`trellis`]: discrete phase search (trellis, quantization, exhaustive).
//! - [`oma`]: FDMA/TDMA alternating-optimization baselines.
//! - [`harness`]: Monte-Carlo sweeps, output and complexity table.

pub mod error;
pub mod linalg;
pub mod scalar;
pub mod system;
pub mod quadratic;
pub mod trellis;
pub mod pdd;
pub mod oma;
pub mod harness;

pub use error::{Error, Result};
pub use pdd::{PddConfig, PddSolver, PhaseMode, Robustness, SolveReport};
pub use scalar::{Real, C};
pub use system::{ChannelRealization, PhaseVector, Rates, SystemConfig};
pub use trellis::TrellisConfig;

pub type SystemConfigF64 = system::SystemConfig<f64>;
pub type ChannelsF64 = system::ChannelRealization<f64>;
pub type PhaseVectorF64 = system::PhaseVector<f64>;
pub type RatesF64 = system::Rates<f64>;
pub type PddConfigF64 = pdd::PddConfig<f64>;
pub type PddSolverF64 = pdd::PddSolver<f64>;
pub type SolveReportF64 = pdd::SolveReport<f64>;
pub type OmaConfigF64 = oma::OmaConfig<f64>;
pub type OmaSolutionF64 = oma::OmaSolution<f64>;
pub type PhaseQuadraticF64 = quadratic::PhaseQuadratic<f64>;
pub type ComplexF64 = scalar::C<f64>;
