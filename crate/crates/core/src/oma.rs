//! IRS-aided FDMA and TDMA baselines: MRT beamforming, coordinate phase
//! updates that maximize the effective channel gain, and the closed-form
//! two-user power split.

use log::warn;
use num_traits::Zero;

use crate::error::Result;
use crate::linalg::{self, CMatrix};
use crate::quadratic::PhaseQuadratic;
use crate::scalar::{Real, C};
use crate::system::{log2_one_plus, ChannelRealization, PhaseVector, Rates, SystemConfig, USERS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmaConfig<T> {
    pub max_iters: usize,
    /// Stop when the sum rate changes by less than this (bits).
    pub tol: T,
    /// Cyclic passes over the phases per AO round.
    pub phase_sweeps: usize,
}

impl<T: Real> Default for OmaConfig<T> {
    fn default() -> Self {
        Self {
            max_iters: 200,
            tol: T::lit(1e-4),
            phase_sweeps: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmaScheme {
    Fdma,
    Tdma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmaSolution<T> {
    pub scheme: OmaScheme,
    pub beamformers: [Vec<C<T>>; USERS],
    pub powers: [T; 2],
    /// One shared vector for FDMA, one per user (time slot) for TDMA.
    pub phases: Vec<PhaseVector<T>>,
    pub rates: Rates<T>,
    pub iterations: usize,
    pub trajectory: Vec<T>,
    pub converged: bool,
    /// A user had a zero effective channel with positive power.
    pub zero_channel: bool,
    /// The power-split discriminant went negative and was clamped.
    pub discriminant_clamped: bool,
}

/// Result of [`power_allocation_closed_form`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit<T> {
    pub p1: T,
    pub p2: T,
    pub discriminant_clamped: bool,
    /// Both gains were zero; the split defaults to `P/2` each.
    pub degenerate: bool,
}

/// `√P_k·ĥᴴ/‖ĥ‖`; returns the zero vector and `true` when `ĥ = 0` and `P_k > 0`.
pub fn mrt_beamformer<T: Real>(h_eff: &[C<T>], p_k: T) -> (Vec<C<T>>, bool) {
    let norm = linalg::norm_sqr(h_eff).sqrt();
    if !(norm > T::zero()) {
        return (vec![C::zero(); h_eff.len()], p_k > T::zero());
    }
    let s = p_k.max(T::zero()).sqrt() / norm;
    (h_eff.iter().map(|h| h.conj() * s).collect(), false)
}

/// Per-user OMA rate with half the bandwidth (or time): the error and noise
/// powers are halved inside the log and the prelog is `½`.
pub fn oma_user_rate<T: Real>(gain: T, power: T, sigma_h_sq: T, sigma_n_sq: T) -> T {
    let half = T::lit(0.5);
    half * log2_one_plus(power * gain, half * (power * sigma_h_sq + sigma_n_sq))
}

/// The power-split objective before the `½` prelog.
pub fn power_split_objective<T: Real>(p1: T, g: [T; 2], sigma_h_sq: T, sigma_n_sq: T, power: T) -> T {
    let two = T::lit(2.0);
    two * (oma_user_rate(g[0], p1, sigma_h_sq, sigma_n_sq)
        + oma_user_rate(g[1], power - p1, sigma_h_sq, sigma_n_sq))
}

/// Stationary point of the two-user OMA sum rate in `P₁` with `P₂ = P − P₁`.
///
/// The first-order condition is `A·P₁² + B·P₁ + C = 0` with
/// `A = ¼σ_h⁴(g₂ − g₁)`. The root is evaluated as `−2C/(B + √(B² − 4AC))`,
/// algebraically equal to `(−B + √(B² − 4AC))/2A` but finite as `A → 0`,
/// and clamped to `[0, P]`.
pub fn power_allocation_closed_form<T: Real>(
    g1: T,
    g2: T,
    sigma_h_sq: T,
    sigma_n_sq: T,
    power: T,
) -> PowerSplit<T> {
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    if !(g1 > T::zero()) && !(g2 > T::zero()) {
        warn!("both OMA gains are zero; splitting power evenly");
        return PowerSplit {
            p1: power * half,
            p2: power * half,
            discriminant_clamped: false,
            degenerate: true,
        };
    }
    let (s, n, p) = (sigma_h_sq, sigma_n_sq, power);
    let s2 = s * s;
    let a = quarter * s2 * (g2 - g1);
    let b = half * g2 * s * n + n * g1 * g2 + half * p * s2 * g1 + p * s * g1 * g2 + half * g1 * s * n;
    let c = quarter * n * n * g2
        - quarter * n * n * g1
        - half * p * p * s * g1 * g2
        - half * p * n * s * g1
        - quarter * p * p * s2 * g1
        - half * p * n * g1 * g2;
    let mut disc = b * b - T::lit(4.0) * a * c;
    let mut clamped = false;
    if disc < T::zero() {
        warn!("power split discriminant {disc} clamped to zero");
        disc = T::zero();
        clamped = true;
    }
    let den = b + disc.sqrt();
    let p1 = if den > T::zero() { -(c + c) / den } else { p * half };
    let p1 = p1.max(T::zero()).min(p);
    PowerSplit {
        p1,
        p2: p - p1,
        discriminant_clamped: clamped,
        degenerate: false,
    }
}

/// Gain quadratic `Σ_k ‖ĥ_AU[k] + v·Ĥ_c[k]‖²` over `users`, stored with
/// negated `A` so that minimizing it maximizes the gain.
fn gain_quadratic<T: Real>(channels: &ChannelRealization<T>, users: &[usize]) -> PhaseQuadratic<T> {
    let m = channels.n_irs();
    let mut a = CMatrix::zeros(m, m);
    let mut c = vec![C::zero(); m];
    for &k in users {
        let hc = channels.h_c_est(k);
        let hau = &channels.h_au_est[k];
        for i in 0..m {
            let row_i = hc.row(i);
            for j in 0..m {
                a[(i, j)] = a[(i, j)] - linalg::dot(row_i, &linalg::conj(hc.row(j)));
            }
            c[i] = c[i] + linalg::dot(hau, &linalg::conj(row_i));
        }
    }
    PhaseQuadratic { a, c }
}

/// Shared-phase update: cyclic `θ_i ∝ Σ_{j≠i} θ_j a_ji + c_i` with
/// `A = Σ_k Ĥ_c[k]Ĥ_c[k]ᴴ`, `c = Σ_k ĥ_AU[k]Ĥ_c[k]ᴴ`.
pub fn fdma_phase_update<T: Real>(
    channels: &ChannelRealization<T>,
    v: &mut PhaseVector<T>,
    sweeps: usize,
) {
    gain_quadratic(channels, &[0, 1]).coordinate_sweeps(v, sweeps);
}

/// Per-slot update maximizing `‖ĥ[k]‖²` for user `k` alone.
pub fn tdma_phase_update<T: Real>(
    channels: &ChannelRealization<T>,
    k: usize,
    v: &mut PhaseVector<T>,
    sweeps: usize,
) {
    gain_quadratic(channels, &[k]).coordinate_sweeps(v, sweeps);
}

fn gain<T: Real>(channels: &ChannelRealization<T>, k: usize, v: &PhaseVector<T>) -> Result<T> {
    let h = crate::system::effective_channel(&channels.h_au_est[k], v, channels.h_c_est(k))?;
    Ok(linalg::norm_sqr(&h))
}

struct Evaluation<T> {
    beams: [Vec<C<T>>; USERS],
    rates: Rates<T>,
    zero_channel: bool,
}

fn evaluate<T: Real>(
    channels: &ChannelRealization<T>,
    phases: [&PhaseVector<T>; 2],
    powers: [T; 2],
    sigma_h_sq: T,
    sigma_n_sq: T,
) -> Result<Evaluation<T>> {
    let hs = [
        crate::system::effective_channel(&channels.h_au_est[0], phases[0], channels.h_c_est(0))?,
        crate::system::effective_channel(&channels.h_au_est[1], phases[1], channels.h_c_est(1))?,
    ];
    let (w1, z1) = mrt_beamformer(&hs[0], powers[0]);
    let (w2, z2) = mrt_beamformer(&hs[1], powers[1]);
    let rate = |h: &[C<T>], w: &[C<T>]| {
        let signal = linalg::dot(h, w).norm_sqr();
        let half = T::lit(0.5);
        half * log2_one_plus(signal, half * (sigma_h_sq * linalg::norm_sqr(w) + sigma_n_sq))
    };
    let r1 = rate(&hs[0], &w1);
    let r2 = rate(&hs[1], &w2);
    Ok(Evaluation {
        beams: [w1, w2],
        rates: Rates { r1, r2, sum: r1 + r2 },
        zero_channel: z1 || z2,
    })
}

/// Alternating optimization for FDMA: MRT beams, shared phases, power split.
///
/// A round that would lower the sum rate is reverted and ends the loop, so
/// the returned trajectory is non-decreasing.
pub fn fdma_solve<T: Real>(
    channels: &ChannelRealization<T>,
    cfg: &SystemConfig<T>,
    oma: &OmaConfig<T>,
) -> Result<OmaSolution<T>> {
    cfg.validate()?;
    let sigma_h = channels.effective_error_variance(cfg);
    let sigma_n = cfg.noise_var;
    let half = T::lit(0.5);
    let mut v = PhaseVector::ones(channels.n_irs());
    let mut powers = [cfg.power * half; 2];
    let mut best = evaluate(channels, [&v, &v], powers, sigma_h, sigma_n)?;
    let mut trajectory = vec![best.rates.sum];
    let mut clamped = false;
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..oma.max_iters {
        iterations += 1;
        let mut v_next = v.clone();
        fdma_phase_update(channels, &mut v_next, oma.phase_sweeps);
        let g = [gain(channels, 0, &v_next)?, gain(channels, 1, &v_next)?];
        let split = power_allocation_closed_form(g[0], g[1], sigma_h, sigma_n, cfg.power);
        let next_powers = [split.p1, split.p2];
        let eval = evaluate(channels, [&v_next, &v_next], next_powers, sigma_h, sigma_n)?;
        let prev = best.rates.sum;
        if eval.rates.sum < prev {
            converged = true;
            break;
        }
        clamped |= split.discriminant_clamped;
        v = v_next;
        powers = next_powers;
        best = eval;
        trajectory.push(best.rates.sum);
        if best.rates.sum - prev < oma.tol {
            converged = true;
            break;
        }
    }
    Ok(OmaSolution {
        scheme: OmaScheme::Fdma,
        beamformers: best.beams,
        powers,
        phases: vec![v],
        rates: best.rates,
        iterations,
        trajectory,
        converged,
        zero_channel: best.zero_channel,
        discriminant_clamped: clamped,
    })
}

/// TDMA: each slot's phases maximize its own user's gain, then MRT beams and
/// the closed-form power split.
pub fn tdma_solve<T: Real>(
    channels: &ChannelRealization<T>,
    cfg: &SystemConfig<T>,
    oma: &OmaConfig<T>,
) -> Result<OmaSolution<T>> {
    cfg.validate()?;
    let sigma_h = channels.effective_error_variance(cfg);
    let sigma_n = cfg.noise_var;
    let half = T::lit(0.5);
    let m = channels.n_irs();
    let mut phases = [PhaseVector::ones(m), PhaseVector::ones(m)];
    let initial = evaluate(channels, [&phases[0], &phases[1]], [cfg.power * half; 2], sigma_h, sigma_n)?;
    let mut trajectory = vec![initial.rates.sum];
    let mut gains = [gain(channels, 0, &phases[0])?, gain(channels, 1, &phases[1])?];
    let mut iterations = 0;
    let mut converged = false;
    let mut eval = initial;
    let mut powers = [cfg.power * half; 2];
    let mut clamped = false;
    for _ in 0..oma.max_iters {
        iterations += 1;
        for (k, v) in phases.iter_mut().enumerate() {
            tdma_phase_update(channels, k, v, oma.phase_sweeps);
        }
        let next = [gain(channels, 0, &phases[0])?, gain(channels, 1, &phases[1])?];
        let split = power_allocation_closed_form(next[0], next[1], sigma_h, sigma_n, cfg.power);
        clamped |= split.discriminant_clamped;
        powers = [split.p1, split.p2];
        let prev = eval.rates.sum;
        eval = evaluate(channels, [&phases[0], &phases[1]], powers, sigma_h, sigma_n)?;
        trajectory.push(eval.rates.sum);
        let stalled = (0..2).all(|k| next[k] - gains[k] <= oma.tol * gains[k].max(T::min_positive_value()));
        gains = next;
        if stalled || eval.rates.sum - prev < oma.tol {
            converged = true;
            break;
        }
    }
    let [p0, p1] = phases;
    Ok(OmaSolution {
        scheme: OmaScheme::Tdma,
        beamformers: eval.beams,
        powers,
        phases: vec![p0, p1],
        rates: eval.rates,
        iterations,
        trajectory,
        converged,
        zero_channel: eval.zero_channel,
        discriminant_clamped: clamped,
    })
}
