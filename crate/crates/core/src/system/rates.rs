use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::{Real, C};

/// Tolerance on `α₁² + α₂² = 1`.
pub const POWER_SPLIT_TOL: f64 = 1e-9;

/// Per-user and sum rates in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rates<T> {
    pub r1: T,
    pub r2: T,
    pub sum: T,
}

/// Worst-case NOMA rates with SIC at the strong user (user 1).
///
/// `w` holds the beamformers as columns; `alpha` are the amplitude
/// coefficients of the superposition. The effective error variance enters
/// both denominators scaled by the total beamforming power.
pub fn noma_rates<T: Real>(
    h_eff: [&[C<T>]; 2],
    w: &CMatrix<T>,
    alpha: [T; 2],
    sigma_h_sq: T,
    sigma_n_sq: T,
) -> Result<Rates<T>> {
    let split = alpha[0] * alpha[0] + alpha[1] * alpha[1];
    if !((split - T::one()).abs() <= T::lit(POWER_SPLIT_TOL)) {
        return Err(Error::invalid(format!(
            "power split α₁²+α₂² = {split} is not 1"
        )));
    }
    if !(sigma_h_sq >= T::zero() && sigma_n_sq >= T::zero()) {
        return Err(Error::invalid("variances must be non-negative"));
    }
    if w.cols() != 2 || h_eff.iter().any(|h| h.len() != w.rows()) {
        return Err(Error::dimension(format!(
            "beamformer {}x{} against channels of length {}/{}",
            w.rows(),
            w.cols(),
            h_eff[0].len(),
            h_eff[1].len()
        )));
    }
    let w1 = w.column(0);
    let w2 = w.column(1);
    let g11 = linalg::dot(h_eff[0], &w1).norm_sqr();
    let g21 = linalg::dot(h_eff[1], &w1).norm_sqr();
    let g22 = linalg::dot(h_eff[1], &w2).norm_sqr();
    let floor = sigma_h_sq * w.frobenius_norm_sqr() + sigma_n_sq;
    let (a1, a2) = (alpha[0] * alpha[0], alpha[1] * alpha[1]);
    let r1 = log2_one_plus(a1 * g11, floor);
    let r2 = log2_one_plus(a2 * g22, a1 * g21 + floor);
    Ok(Rates { r1, r2, sum: r1 + r2 })
}

/// `log2(1 + s/d)` that returns 0 for a zero signal even when `d = 0`.
pub(crate) fn log2_one_plus<T: Real>(signal: T, denom: T) -> T {
    if signal <= T::zero() {
        return T::zero();
    }
    (T::one() + signal / denom).log2()
}
