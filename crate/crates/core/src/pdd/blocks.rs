//! Closed-form block updates of one PDD outer iteration.

use num_traits::Zero;

use super::config::PddConfig;
use super::state::{coupled_t, mat2_from_fn, Mat2, PddState, Residuals};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::quadratic::PhaseQuadratic;
use crate::scalar::{Real, C};
use crate::system::ChannelRealization;

fn re<T: Real>(x: T) -> C<T> {
    C::new(x, T::zero())
}

/// Optimal MMSE receivers `q_i` and weights `d_i = 1 + SINR_i`.
pub fn update_aux<T: Real>(s: &mut PddState<T>, sigma_h_sq: T, sigma_n_sq: T) {
    let floor = sigma_h_sq * s.w.frobenius_norm_sqr() + sigma_n_sq;
    let [a1, a2] = s.alpha;
    let den1 = a1 * a1 * s.t[0][0].norm_sqr() + floor;
    let interf = a1 * a1 * s.t[0][1].norm_sqr() + floor;
    let den2 = a2 * a2 * s.t[1][1].norm_sqr() + interf;
    s.q[0] = s.t[0][0] * a1 / den1;
    s.q[1] = s.t[1][1] * a2 / den2;
    s.d[0] = den1 / floor;
    s.d[1] = den2 / interf;
}

/// Joint minimizer over `w₁, w₂`; both share one `N×N` system matrix.
pub fn update_w<T: Real>(s: &mut PddState<T>, sigma_h_sq: T) -> Result<()> {
    let n = s.w.rows();
    let g = s.gamma;
    let two_g = T::lit(2.0) * g;
    let weight = s.d[0] * s.q[0].norm_sqr() + s.d[1] * s.q[1].norm_sqr();
    let diag = two_g * sigma_h_sq * weight + T::one();
    let mut m = CMatrix::identity(n).scale_real(diag);
    for h in &s.h_eff {
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = m[(r, c)] + h[r].conj() * h[c];
            }
        }
    }
    let mut rhs = s.w_bar.sub(&s.lambda_w.scale(re(g)));
    for i in 0..2 {
        for (j, h) in s.h_eff.iter().enumerate() {
            let coef = (s.t[i][j] + s.lambda_h[i][j] * g).conj();
            for r in 0..n {
                rhs[(r, i)] = rhs[(r, i)] + h[r].conj() * coef;
            }
        }
    }
    s.w = m.solve(&rhs)?;
    Ok(())
}

/// Unconstrained minimizer over `α₁, α₂`; the unit-norm constraint lives on `ā`.
pub fn update_alpha<T: Real>(s: &mut PddState<T>) {
    let g = s.gamma;
    let two_g = T::lit(2.0) * g;
    let [d1, d2] = s.d;
    let [q1, q2] = s.q;
    let num1 = two_g * d1 * (q1.conj() * s.t[0][0]).re + s.alpha_bar[0] - g * s.lambda_a[0];
    let den1 = T::one()
        + two_g * d1 * q1.norm_sqr() * s.t[0][0].norm_sqr()
        + two_g * d2 * q2.norm_sqr() * s.t[0][1].norm_sqr();
    let num2 = two_g * d2 * (q2.conj() * s.t[1][1]).re + s.alpha_bar[1] - g * s.lambda_a[1];
    let den2 = T::one() + two_g * d2 * q2.norm_sqr() * s.t[1][1].norm_sqr();
    s.alpha = [num1 / den1, num2 / den2];
}

/// Element-wise minimizer over `T`.
pub fn update_t<T: Real>(s: &mut PddState<T>) {
    let g = s.gamma;
    let two_g = T::lit(2.0) * g;
    let two = T::lit(2.0);
    let coupled = coupled_t(&s.w, &s.h_eff);
    let base = |i: usize, j: usize| {
        coupled[i][j] + s.t_bar[i][j] - (s.lambda_h[i][j] + s.lambda_t[i][j]) * g
    };
    let [d1, d2] = s.d;
    let [q1, q2] = s.q;
    let [a1, a2] = s.alpha;
    let t11 = (q1 * (two_g * d1 * a1) + base(0, 0)) / (two_g * d1 * q1.norm_sqr() * a1 * a1 + two);
    let t12 = base(0, 1) / (two_g * d2 * a1 * a1 * q2.norm_sqr() + two);
    let t21 = base(1, 0) / two;
    let t22 = (q2 * (two_g * d2 * a2) + base(1, 1)) / (two_g * d2 * q2.norm_sqr() * a2 * a2 + two);
    s.t = [[t11, t12], [t21, t22]];
}

/// The two diagonal candidates printed for the infeasible case of the
/// `T̄` projection: diagonals `(y₁₁ − y₂₂)/2` and `(y₁₁ + y₂₂)/2`.
pub fn tbar_printed_candidates<T: Real>(y: &Mat2<T>) -> [Mat2<T>; 2] {
    let half = T::lit(0.5);
    let minus = (y[0][0] - y[1][1]) * half;
    let plus = (y[0][0] + y[1][1]) * half;
    [
        [[minus, y[0][1]], [y[1][0], minus]],
        [[plus, y[0][1]], [y[1][0], plus]],
    ]
}

/// Euclidean projection of `Y = T + γΛ_t` onto `{|t̄₁₁| ≥ |t̄₂₂|}`.
///
/// When infeasible the nearest point equalizes both moduli at
/// `(|y₁₁| + |y₂₂|)/2` while keeping each phase (`y₁₁ = 0` borrows the phase
/// of `y₂₂`). Its distance never exceeds that of either printed candidate.
pub fn project_tbar<T: Real>(t: &Mat2<T>, lambda_t: &Mat2<T>, gamma: T) -> Mat2<T> {
    let y = mat2_from_fn(|i, j| t[i][j] + lambda_t[i][j] * gamma);
    let (m11, m22) = (y[0][0].norm(), y[1][1].norm());
    if m11 >= m22 {
        return y;
    }
    let r = (m11 + m22) * T::lit(0.5);
    let phase22 = y[1][1] / m22;
    let phase11 = if m11 > T::zero() { y[0][0] / m11 } else { phase22 };
    let mut out = y;
    out[0][0] = phase11 * r;
    out[1][1] = phase22 * r;
    out
}

/// Projection of `W + γΛ_w` onto the ball `‖·‖_F ≤ √P`.
pub fn project_wbar<T: Real>(w: &CMatrix<T>, lambda_w: &CMatrix<T>, gamma: T, power: T) -> CMatrix<T> {
    let y = w.add(&lambda_w.scale(re(gamma)));
    let norm = y.frobenius_norm();
    let radius = power.sqrt();
    if norm <= radius {
        y
    } else {
        y.scale_real(radius / norm)
    }
}

/// Projection of `a + γλ_a` onto the unit circle.
///
/// Returns the exact nearest point; `negative_direction` reports whether the
/// first component of the input was negative, the only case in which the
/// printed closed form (which forces `ᾱ₁ ≥ 0`) differs from it.
pub fn project_abar<T: Real>(alpha: [T; 2], lambda_a: [T; 2], gamma: T) -> Result<AbarProjection<T>> {
    let u = [alpha[0] + gamma * lambda_a[0], alpha[1] + gamma * lambda_a[1]];
    let norm = u[0].hypot(u[1]);
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(Error::ProjectionUndefined(
            "power split projection of the zero vector".into(),
        ));
    }
    Ok(AbarProjection {
        alpha_bar: [u[0] / norm, u[1] / norm],
        negative_direction: u[0] < T::zero(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbarProjection<T> {
    pub alpha_bar: [T; 2],
    pub negative_direction: bool,
}

/// Phase subproblem in `v` with every other block fixed.
///
/// `A = (1/2γ) Σ_ij g_ij g_ijᴴ` and `c = (1/2γ) Σ_ij b_ij g_ijᴴ` with
/// `g_ij = Ĥ_c[j]·w_i` and `b_ij = t_ij* + γλ_{h,ij}* − ĥ_AU[j]·w_i`.
pub fn build_phase_quadratic<T: Real>(
    s: &PddState<T>,
    channels: &ChannelRealization<T>,
) -> Result<PhaseQuadratic<T>> {
    let m = channels.n_irs();
    let scale = T::one() / (T::lit(2.0) * s.gamma);
    let mut a = CMatrix::zeros(m, m);
    let mut c = vec![C::zero(); m];
    for i in 0..2 {
        let wi = s.w.column(i);
        for j in 0..2 {
            let g = channels.h_c_est(j).mul_vec(&wi)?;
            let b = (s.t[i][j] + s.lambda_h[i][j] * s.gamma).conj()
                - linalg::dot(&channels.h_au_est[j], &wi);
            for r in 0..m {
                let gr = g[r] * scale;
                for col in 0..m {
                    a[(r, col)] = a[(r, col)] + gr * g[col].conj();
                }
                c[r] = c[r] + b * g[r].conj() * scale;
            }
        }
    }
    PhaseQuadratic::new(a, c)
}

/// Outcome of the step-10 branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualStep {
    Duals,
    Penalty,
}

/// Dual ascent when every residual is within `η`, otherwise `γ ← max(ζγ, floor)`.
pub fn dual_or_penalty_step<T: Real>(
    s: &mut PddState<T>,
    residuals: &Residuals<T>,
    pdd: &PddConfig<T>,
) -> DualStep {
    if residuals.max() <= pdd.eta {
        let inv = T::one() / s.gamma;
        let coupled = coupled_t(&s.w, &s.h_eff);
        for i in 0..2 {
            for j in 0..2 {
                s.lambda_h[i][j] = s.lambda_h[i][j] + (s.t[i][j] - coupled[i][j]) * inv;
                s.lambda_t[i][j] = s.lambda_t[i][j] + (s.t[i][j] - s.t_bar[i][j]) * inv;
            }
            s.lambda_a[i] = s.lambda_a[i] + (s.alpha[i] - s.alpha_bar[i]) * inv;
        }
        s.lambda_w = s.lambda_w.add(&s.w.sub(&s.w_bar).scale_real(inv));
        DualStep::Duals
    } else {
        s.gamma = (s.gamma * pdd.zeta).max(pdd.gamma_floor);
        DualStep::Penalty
    }
}
