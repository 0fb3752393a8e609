use num_traits::Zero;

use super::config::PddConfig;
use crate::error::Result;
use crate::linalg::{self, CMatrix};
use crate::scalar::{Real, C};
use crate::system::{ChannelRealization, PhaseVector, SystemConfig, USERS};

/// A 2×2 complex block indexed `[i][j]` (beam `i`, user `j`).
pub type Mat2<T> = [[C<T>; 2]; 2];

/// Every primal, auxiliary and dual variable of the solver.
///
/// `t[i][j]` tracks `w_iᴴ·ĥ[j]ᴴ`; barred fields are the constrained copies
/// (`w_bar` in the power ball, `alpha_bar` on the unit circle, `t_bar` with
/// `|t̄₁₁| ≥ |t̄₂₂|`).
#[derive(Debug, Clone, PartialEq)]
pub struct PddState<T> {
    /// Beamformers `w₁, w₂` as columns (`N×2`).
    pub w: CMatrix<T>,
    pub alpha: [T; 2],
    pub v: PhaseVector<T>,
    pub t: Mat2<T>,
    pub t_bar: Mat2<T>,
    pub w_bar: CMatrix<T>,
    pub alpha_bar: [T; 2],
    pub lambda_w: CMatrix<T>,
    pub lambda_h: Mat2<T>,
    pub lambda_t: Mat2<T>,
    pub lambda_a: [T; 2],
    pub gamma: T,
    pub q: [C<T>; 2],
    pub d: [T; 2],
    /// Estimated effective channels `ĥ[j]` for the current `v`.
    pub h_eff: [Vec<C<T>>; USERS],
}

/// Constraint violations checked at the end of every outer iteration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Residuals<T> {
    /// `‖T − WᴴĤᴴ‖_F`
    pub coupling: T,
    /// `‖W − W̄‖_F`
    pub beam: T,
    /// `‖T − T̄‖_F`
    pub t_copy: T,
    /// `‖a − ā‖`
    pub alpha: T,
}

impl<T: Real> Residuals<T> {
    pub fn max(&self) -> T {
        self.coupling.max(self.beam).max(self.t_copy).max(self.alpha)
    }
}

/// `WᴴĤᴴ`: entry `(i, j)` is `conj(ĥ[j]·w_i)`.
pub fn coupled_t<T: Real>(w: &CMatrix<T>, h_eff: &[Vec<C<T>>; USERS]) -> Mat2<T> {
    let cols = [w.column(0), w.column(1)];
    let mut out = [[C::zero(); 2]; 2];
    for (i, wi) in cols.iter().enumerate() {
        for (j, hj) in h_eff.iter().enumerate() {
            out[i][j] = linalg::dot(hj, wi).conj();
        }
    }
    out
}

/// `T` projected onto `|t̄₁₁| ≥ |t̄₂₂|`.
pub(crate) fn feasible_copy<T: Real>(t: &Mat2<T>) -> Mat2<T> {
    super::blocks::project_tbar(t, &[[C::zero(); 2]; 2], T::zero())
}

pub(crate) fn mat2_from_fn<T: Real>(mut f: impl FnMut(usize, usize) -> C<T>) -> Mat2<T> {
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

pub(crate) fn mat2_dist<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    let mut s = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            s = s + (a[i][j] - b[i][j]).norm_sqr();
        }
    }
    s.sqrt()
}

impl<T: Real> PddState<T> {
    /// Feasible starting point.
    ///
    /// `W⁰` is the purely imaginary all-`0.9·j·√(P/2KN)` matrix, `v⁰ = 1`,
    /// `a⁰ = [√½, √½]`, `T = WᴴĤᴴ`, `W̄ = W`, `ā = a`, every dual entry is
    /// `dual_init` and `γ = γ⁰`. `T̄` is `T` projected onto the ordering
    /// constraint, which leaves it unchanged whenever `|t₁₁| ≥ |t₂₂|`.
    pub fn init(
        channels: &ChannelRealization<T>,
        cfg: &SystemConfig<T>,
        pdd: &PddConfig<T>,
    ) -> Result<Self> {
        let n = channels.n_antennas();
        let m = channels.n_irs();
        let k = T::lit(USERS as f64);
        let amp = T::lit(0.9) * (cfg.power / (T::lit(2.0) * k * T::lit(n as f64))).sqrt();
        let w = CMatrix::filled(n, USERS, C::new(T::zero(), amp));
        let v = PhaseVector::ones(m);
        let h_eff = channels.effective_channels(&v)?;
        let t = coupled_t(&w, &h_eff);
        let t_bar = feasible_copy(&t);
        let half = T::lit(0.5).sqrt();
        let dual = C::new(pdd.dual_init, T::zero());
        Ok(Self {
            w_bar: w.clone(),
            lambda_w: CMatrix::filled(n, USERS, dual),
            w,
            alpha: [half, half],
            alpha_bar: [half, half],
            v,
            t_bar,
            t,
            lambda_h: [[dual; 2]; 2],
            lambda_t: [[dual; 2]; 2],
            lambda_a: [pdd.dual_init; 2],
            gamma: pdd.gamma0,
            q: [C::zero(); 2],
            d: [T::one(); 2],
            h_eff,
        })
    }

    pub fn refresh_effective_channels(&mut self, channels: &ChannelRealization<T>) -> Result<()> {
        self.h_eff = channels.effective_channels(&self.v)?;
        Ok(())
    }

    /// Signal-plus-error floor `σ_h²(‖w₁‖² + ‖w₂‖²) + σ_n²`.
    fn floor(&self, sigma_h_sq: T, sigma_n_sq: T) -> T {
        sigma_h_sq * self.w.frobenius_norm_sqr() + sigma_n_sq
    }

    /// `f₁(q₁)` and `f₂(q₂)` at the current variables.
    pub fn mse_terms(&self, sigma_h_sq: T, sigma_n_sq: T) -> [T; 2] {
        let pw = self.w.frobenius_norm_sqr();
        let [a1, a2] = self.alpha;
        let [q1, q2] = self.q;
        let one = C::new(T::one(), T::zero());
        let f1 = (one - q1.conj() * self.t[0][0] * a1).norm_sqr()
            + sigma_h_sq * q1.norm_sqr() * pw
            + sigma_n_sq * q1.norm_sqr();
        let f2 = (one - q2.conj() * self.t[1][1] * a2).norm_sqr()
            + a1 * a1 * (q2.conj() * self.t[0][1]).norm_sqr()
            + sigma_h_sq * q2.norm_sqr() * pw
            + sigma_n_sq * q2.norm_sqr();
        [f1, f2]
    }

    /// Augmented-Lagrangian penalty `Q_γ`.
    pub fn penalty(&self) -> T {
        let g = self.gamma;
        let gc = C::new(g, T::zero());
        let beams = self
            .w
            .sub(&self.w_bar)
            .add(&self.lambda_w.scale(gc))
            .frobenius_norm_sqr();
        let coupled = coupled_t(&self.w, &self.h_eff);
        let mut h_terms = T::zero();
        let mut t_terms = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                h_terms = h_terms + (self.t[i][j] - coupled[i][j] + self.lambda_h[i][j] * g).norm_sqr();
                t_terms = t_terms + (self.t[i][j] - self.t_bar[i][j] + self.lambda_t[i][j] * g).norm_sqr();
            }
        }
        let a_terms: T = (0..2)
            .map(|i| {
                let r = self.alpha[i] - self.alpha_bar[i] + g * self.lambda_a[i];
                r * r
            })
            .sum();
        (beams + h_terms + t_terms + a_terms) / (T::lit(2.0) * g)
    }

    /// BSUM surrogate `Σ d_i f_i(q_i) + Q_γ` with `q, d` held fixed.
    pub fn surrogate_objective(&self, sigma_h_sq: T, sigma_n_sq: T) -> T {
        let f = self.mse_terms(sigma_h_sq, sigma_n_sq);
        self.d[0] * f[0] + self.d[1] * f[1] + self.penalty()
    }

    /// Negated lower bound plus penalty, `Σ (d_i f_i − ln d_i) − 2 + Q_γ`.
    ///
    /// Every block update, including the `(q, d)` refresh, is an exact
    /// minimization of this function over its block.
    pub fn bound_objective(&self, sigma_h_sq: T, sigma_n_sq: T) -> T {
        let f = self.mse_terms(sigma_h_sq, sigma_n_sq);
        let mut s = -T::lit(2.0);
        for i in 0..2 {
            s = s + self.d[i] * f[i] - self.d[i].ln();
        }
        s + self.penalty()
    }

    /// `ln(1 + SINR₁) + ln(1 + SINR₂)` written in terms of `t`.
    pub fn aux_sum_rate_nats(&self, sigma_h_sq: T, sigma_n_sq: T) -> T {
        let floor = self.floor(sigma_h_sq, sigma_n_sq);
        let [a1, a2] = self.alpha;
        let s1 = a1 * a1 * self.t[0][0].norm_sqr() / floor;
        let s2 = a2 * a2 * self.t[1][1].norm_sqr() / (a1 * a1 * self.t[0][1].norm_sqr() + floor);
        s1.ln_1p() + s2.ln_1p()
    }

    /// `Σ (ln d_i − d_i f_i) + 2` at the current `q, d`.
    pub fn lower_bound_nats(&self, sigma_h_sq: T, sigma_n_sq: T) -> T {
        let f = self.mse_terms(sigma_h_sq, sigma_n_sq);
        let mut s = T::lit(2.0);
        for i in 0..2 {
            s = s + self.d[i].ln() - self.d[i] * f[i];
        }
        s
    }

    pub fn residuals(&self) -> Residuals<T> {
        let coupled = coupled_t(&self.w, &self.h_eff);
        let da0 = self.alpha[0] - self.alpha_bar[0];
        let da1 = self.alpha[1] - self.alpha_bar[1];
        Residuals {
            coupling: mat2_dist(&self.t, &coupled),
            beam: self.w.sub(&self.w_bar).frobenius_norm(),
            t_copy: mat2_dist(&self.t, &self.t_bar),
            alpha: (da0 * da0 + da1 * da1).sqrt(),
        }
    }
}
