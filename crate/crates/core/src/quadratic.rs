//! The unit-modulus quadratic `f(v) = v·A·vᴴ − 2·Re{c·vᴴ}` that every
//! phase-shift update in the crate minimizes, and its sequential
//! decomposition used by the trellis search.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{Real, C};
use crate::system::PhaseVector;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseQuadratic<T> {
    /// Hermitian positive semidefinite `M×M`.
    pub a: CMatrix<T>,
    /// Row vector of length `M`.
    pub c: Vec<C<T>>,
}

impl<T: Real> PhaseQuadratic<T> {
    pub fn new(a: CMatrix<T>, c: Vec<C<T>>) -> Result<Self> {
        if a.rows() != a.cols() || a.rows() != c.len() {
            return Err(Error::dimension(format!(
                "quadratic with {}x{} matrix and linear term of length {}",
                a.rows(),
                a.cols(),
                c.len()
            )));
        }
        Ok(Self { a, c })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            a: CMatrix::zeros(m, m),
            c: vec![C::zero(); m],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// `v·A·vᴴ − 2·Re{c·vᴴ}`.
    pub fn objective(&self, v: &[C<T>]) -> T {
        debug_assert_eq!(v.len(), self.dim());
        let av = self.a.mul_vec(&conj_vec(v)).expect("dimension checked");
        let quad: C<T> = v.iter().zip(&av).fold(C::zero(), |acc, (x, y)| acc + *x * *y);
        let lin: C<T> = self
            .c
            .iter()
            .zip(v)
            .fold(C::zero(), |acc, (c, t)| acc + *c * t.conj());
        quad.re - T::lit(2.0) * lin.re
    }

    /// Sequential benchmark `Σ_j Re{ Σ_{i<j} θ_j*·a_ij·θ_i − c_j·θ_j* }`.
    ///
    /// For unit-modulus `v`: `objective(v) = 2·benchmark(v) + Re{tr A}`.
    pub fn benchmark(&self, v: &[C<T>]) -> T {
        debug_assert_eq!(v.len(), self.dim());
        (0..self.dim()).map(|j| self.benchmark_term(j, v)).sum()
    }

    /// Term `j` of [`benchmark`](Self::benchmark); reads `v[..=j]` only.
    pub fn benchmark_term(&self, j: usize, v: &[C<T>]) -> T {
        let cross = self.cross_sum(j, |i| v[i]);
        ((cross - self.c[j]) * v[j].conj()).re
    }

    /// `Σ_{i<j} a_ij·θ_i` with `θ_i` supplied by `theta`.
    #[inline]
    pub(crate) fn cross_sum(&self, j: usize, theta: impl Fn(usize) -> C<T>) -> C<T> {
        (0..j).fold(C::zero(), |acc, i| acc + self.a[(i, j)] * theta(i))
    }

    /// `c_k − Σ_{i≠k} θ_i·a_ik`; its phase is the exact minimizer over `θ_k`.
    pub fn coordinate_numerator(&self, k: usize, v: &[C<T>]) -> C<T> {
        let mut acc = self.c[k];
        for (i, t) in v.iter().enumerate() {
            if i != k {
                acc = acc - *t * self.a[(i, k)];
            }
        }
        acc
    }

    /// Cyclic exact coordinate minimization over unit-modulus phases.
    ///
    /// Each pass visits `θ_1..θ_M` in order; a zero numerator keeps the
    /// current value.
    pub fn coordinate_sweeps(&self, v: &mut PhaseVector<T>, sweeps: usize) {
        for _ in 0..sweeps {
            for k in 0..self.dim() {
                let num = self.coordinate_numerator(k, v.as_slice());
                v.set_normalized(k, num);
            }
        }
    }
}

fn conj_vec<T: Real>(v: &[C<T>]) -> Vec<C<T>> {
    v.iter().map(|x| x.conj()).collect()
}
