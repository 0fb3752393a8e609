use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{LargeScaleGains, SystemConfig, USERS};
use super::phase::PhaseVector;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::scalar::{complex_gaussian, Real, C};

/// Independent RNG streams of one trial. Each channel component has its own
/// stream so a realization with `M` IRS elements is an exact prefix of one
/// with more elements, and scaling a variance never shifts another draw.
mod stream {
    pub const SHADOWING: u64 = 0;
    pub const H_AU: [u64; 2] = [1, 2];
    pub const H_IU: [u64; 2] = [3, 4];
    pub const G_AI: u64 = 5;
    pub const ERR_AU: [u64; 2] = [6, 7];
    pub const ERR_IU: [u64; 2] = [8, 9];
}

/// True and estimated channels of one Monte-Carlo trial.
///
/// Channels are row vectors (`1×N`, `1×M`); `g_ai` is `M×N`. The estimated
/// cascaded channels are always rebuilt from `h_iu_est` and `g_ai`, never
/// stored independently.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization<T> {
    pub h_au_true: [Vec<C<T>>; USERS],
    pub h_iu_true: [Vec<C<T>>; USERS],
    pub g_ai: CMatrix<T>,
    pub h_au_est: [Vec<C<T>>; USERS],
    pub h_iu_est: [Vec<C<T>>; USERS],
    h_c_est: [CMatrix<T>; USERS],
    pub gains: LargeScaleGains<T>,
}

/// `diag(h_iu)·g_ai`: row `m` of `g_ai` scaled by `h_iu[m]`.
pub fn cascaded_channel<T: Real>(h_iu: &[C<T>], g_ai: &CMatrix<T>) -> Result<CMatrix<T>> {
    if h_iu.len() != g_ai.rows() {
        return Err(Error::dimension(format!(
            "IRS channel of length {} against {}x{} AP-IRS channel",
            h_iu.len(),
            g_ai.rows(),
            g_ai.cols()
        )));
    }
    Ok(CMatrix::from_fn(g_ai.rows(), g_ai.cols(), |m, n| h_iu[m] * g_ai[(m, n)]))
}

/// `h_au + v·H_c`.
pub fn effective_channel<T: Real>(
    h_au: &[C<T>],
    v: &PhaseVector<T>,
    h_c: &CMatrix<T>,
) -> Result<Vec<C<T>>> {
    if h_c.cols() != h_au.len() {
        return Err(Error::dimension(format!(
            "direct channel of length {} against cascaded channel with {} columns",
            h_au.len(),
            h_c.cols()
        )));
    }
    let reflected = h_c.vec_mul(v.as_slice())?;
    Ok(linalg::add(h_au, &reflected))
}

impl<T: Real> ChannelRealization<T> {
    /// Draws one realization; deterministic in `(cfg, trial_seed)`.
    pub fn sample(cfg: &SystemConfig<T>, trial_seed: u64) -> Result<Self> {
        cfg.validate()?;
        let mut rng = stream_rng(trial_seed, stream::SHADOWING);
        let gains = LargeScaleGains::draw(cfg, &mut rng)?;
        Self::sample_with_gains(cfg, gains, trial_seed)
    }

    /// Draws small-scale fading and estimation errors for given large-scale gains.
    pub fn sample_with_gains(
        cfg: &SystemConfig<T>,
        gains: LargeScaleGains<T>,
        trial_seed: u64,
    ) -> Result<Self> {
        let n = cfg.n_antennas;
        let m = cfg.n_irs;
        let draw = |id: u64, len: usize, var: T| -> Vec<C<T>> {
            let mut rng = stream_rng(trial_seed, id);
            (0..len).map(|_| complex_gaussian(&mut rng, var)).collect()
        };
        let h_au_true = [0, 1].map(|k| draw(stream::H_AU[k], n, gains.beta_au[k]));
        let h_iu_true = [0, 1].map(|k| draw(stream::H_IU[k], m, gains.beta_iu[k]));
        let g_ai = CMatrix::from_rows(m, n, draw(stream::G_AI, m * n, gains.beta_ai))?;
        let h_au_est = [0, 1].map(|k| {
            linalg::sub(&h_au_true[k], &draw(stream::ERR_AU[k], n, cfg.err_var_au))
        });
        let h_iu_est = [0, 1].map(|k| {
            linalg::sub(&h_iu_true[k], &draw(stream::ERR_IU[k], m, cfg.err_var_iu))
        });
        let mut out = Self::assemble(h_au_true, h_iu_true, g_ai, h_au_est, h_iu_est, gains)?;
        out.order_users();
        Ok(out)
    }

    /// Builds a realization from explicit components.
    pub fn assemble(
        h_au_true: [Vec<C<T>>; USERS],
        h_iu_true: [Vec<C<T>>; USERS],
        g_ai: CMatrix<T>,
        h_au_est: [Vec<C<T>>; USERS],
        h_iu_est: [Vec<C<T>>; USERS],
        gains: LargeScaleGains<T>,
    ) -> Result<Self> {
        let (m, n) = (g_ai.rows(), g_ai.cols());
        for k in 0..USERS {
            if h_au_true[k].len() != n || h_au_est[k].len() != n {
                return Err(Error::dimension("direct channel length differs from AP antennas"));
            }
            if h_iu_true[k].len() != m || h_iu_est[k].len() != m {
                return Err(Error::dimension("IRS channel length differs from IRS size"));
            }
        }
        let h_c_est = [
            cascaded_channel(&h_iu_est[0], &g_ai)?,
            cascaded_channel(&h_iu_est[1], &g_ai)?,
        ];
        Ok(Self {
            h_au_true,
            h_iu_true,
            g_ai,
            h_au_est,
            h_iu_est,
            h_c_est,
            gains,
        })
    }

    /// Puts the user with the stronger all-ones effective channel first.
    fn order_users(&mut self) {
        let ones = PhaseVector::ones(self.n_irs());
        let strength = |k: usize| -> T {
            effective_channel(&self.h_au_est[k], &ones, &self.h_c_est[k])
                .map(|h| linalg::norm_sqr(&h))
                .unwrap_or_else(|_| T::zero())
        };
        if strength(1) > strength(0) {
            self.h_au_true.swap(0, 1);
            self.h_iu_true.swap(0, 1);
            self.h_au_est.swap(0, 1);
            self.h_iu_est.swap(0, 1);
            self.h_c_est.swap(0, 1);
            self.gains.beta_au.swap(0, 1);
            self.gains.beta_iu.swap(0, 1);
        }
    }

    /// Same truth, with the estimates replaced by the true channels.
    pub fn with_perfect_csi(&self) -> Self {
        let mut out = self.clone();
        out.h_au_est = self.h_au_true.clone();
        out.h_iu_est = self.h_iu_true.clone();
        out.h_c_est = [0, 1].map(|k| {
            cascaded_channel(&out.h_iu_est[k], &out.g_ai).expect("shapes validated at assembly")
        });
        out
    }

    /// Drops the IRS (`M = 0`), keeping the direct channels.
    pub fn without_irs(&self) -> Self {
        let n = self.n_antennas();
        let mut out = self.clone();
        out.h_iu_true = [Vec::new(), Vec::new()];
        out.h_iu_est = [Vec::new(), Vec::new()];
        out.g_ai = CMatrix::zeros(0, n);
        out.h_c_est = [CMatrix::zeros(0, n), CMatrix::zeros(0, n)];
        out
    }

    #[inline]
    pub fn n_antennas(&self) -> usize {
        self.h_au_est[0].len()
    }

    #[inline]
    pub fn n_irs(&self) -> usize {
        self.g_ai.rows()
    }

    /// Estimated cascaded channel `Ĥ_c[k] = diag(ĥ_IU[k])·G_AI`.
    #[inline]
    pub fn h_c_est(&self, k: usize) -> &CMatrix<T> {
        &self.h_c_est[k]
    }

    pub fn h_c_true(&self, k: usize) -> CMatrix<T> {
        cascaded_channel(&self.h_iu_true[k], &self.g_ai).expect("shapes validated at assembly")
    }

    /// Estimated effective channels `ĥ[k] = ĥ_AU[k] + v·Ĥ_c[k]` of both users.
    pub fn effective_channels(&self, v: &PhaseVector<T>) -> Result<[Vec<C<T>>; USERS]> {
        Ok([
            effective_channel(&self.h_au_est[0], v, &self.h_c_est[0])?,
            effective_channel(&self.h_au_est[1], v, &self.h_c_est[1])?,
        ])
    }

    /// Effective estimation error `h̃[k] = (h_AU − ĥ_AU) + v·(H_c − Ĥ_c)`.
    pub fn effective_error(&self, k: usize, v: &PhaseVector<T>) -> Result<Vec<C<T>>> {
        let direct = linalg::sub(&self.h_au_true[k], &self.h_au_est[k]);
        let cascade = self.h_c_true(k).sub(&self.h_c_est[k]);
        effective_channel(&direct, v, &cascade)
    }

    /// Effective error variance `σ_h²` of this realization.
    pub fn effective_error_variance(&self, cfg: &SystemConfig<T>) -> T {
        cfg.err_var_au
            + T::lit(self.n_irs() as f64) * cfg.err_var_iu * self.gains.beta_ai
    }

    /// Largest per-user channel power averaged over random phases,
    /// `max_k ‖ĥ_AU[k]‖² + ‖Ĥ_c[k]‖_F²`.
    pub fn mean_gain(&self) -> T {
        (0..USERS)
            .map(|k| linalg::norm_sqr(&self.h_au_est[k]) + self.h_c_est[k].frobenius_norm_sqr())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Every user-side channel (true and estimated) multiplied by `c`, so
    /// effective channels and their errors scale by `c`.
    pub fn scaled(&self, c: T) -> Self {
        let s = |v: &[C<T>]| linalg::scale(v, C::new(c, T::zero()));
        let mut out = self.clone();
        out.h_au_true = [s(&self.h_au_true[0]), s(&self.h_au_true[1])];
        out.h_iu_true = [s(&self.h_iu_true[0]), s(&self.h_iu_true[1])];
        out.h_au_est = [s(&self.h_au_est[0]), s(&self.h_au_est[1])];
        out.h_iu_est = [s(&self.h_iu_est[0]), s(&self.h_iu_est[1])];
        out.h_c_est = [0, 1].map(|k| {
            cascaded_channel(&out.h_iu_est[k], &out.g_ai).expect("shapes validated at assembly")
        });
        out
    }

    /// FNV-1a digest over every stored value; equal realizations hash equal.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::default();
        let mut put = |v: &[C<T>]| {
            for c in v {
                h.write(c.re.to_f64_lossy().to_bits());
                h.write(c.im.to_f64_lossy().to_bits());
            }
        };
        for k in 0..USERS {
            put(&self.h_au_true[k]);
            put(&self.h_iu_true[k]);
            put(&self.h_au_est[k]);
            put(&self.h_iu_est[k]);
        }
        put(self.g_ai.as_slice());
        h.0
    }

    pub fn is_zero(&self) -> bool {
        let zero = |v: &[C<T>]| v.iter().all(|c| c.is_zero());
        (0..USERS).all(|k| {
            zero(&self.h_au_true[k])
                && zero(&self.h_iu_true[k])
                && zero(&self.h_au_est[k])
                && zero(&self.h_iu_est[k])
        }) && zero(self.g_ai.as_slice())
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

struct Fnv(u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
}

impl Fnv {
    fn write(&mut self, word: u64) {
        for b in word.to_le_bytes() {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}
