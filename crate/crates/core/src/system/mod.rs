//! Channel model of the IRS-aided two-user downlink: large-scale fading,
//! Rayleigh small-scale fading with statistically injected estimation
//! errors, cascaded/effective channels and the worst-case NOMA rates.

mod channel;
mod config;
mod phase;
mod rates;

pub use channel::{cascaded_channel, effective_channel, ChannelRealization};
pub use config::{
    db_to_linear, linear_to_db, pathloss_linear, LargeScaleGains, SystemConfig,
    DEFAULT_GAIN_OFFSET_DB, USERS,
};
pub use phase::{alphabet, alphabet_symbol, PhaseVector, UNIT_MODULUS_TOL};
pub use rates::{noma_rates, Rates, POWER_SPLIT_TOL};

pub(crate) use rates::log2_one_plus;
