use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::{unit, Real, C};

/// Tolerance on `|θ| = 1` accepted at construction.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// IRS reflection coefficients `v = [θ_1, …, θ_M]`.
///
/// When `alphabet` is set every entry is one of the `M_IRS` symbols
/// `exp(j2πq/M_IRS)`, `q = 1..=M_IRS`, and `indices` holds `q − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseVector<T> {
    theta: Vec<C<T>>,
    alphabet: Option<usize>,
    indices: Option<Vec<usize>>,
}

/// Symbol `exp(j2π(index+1)/m_irs)` of the discrete alphabet (0-based index).
pub fn alphabet_symbol<T: Real>(index: usize, m_irs: usize) -> C<T> {
    debug_assert!(index < m_irs);
    if (index + 1) % m_irs == 0 {
        // exact 1 for the last symbol, cos/sin round otherwise
        return C::one();
    }
    unit(T::TAU() * T::lit((index + 1) as f64) / T::lit(m_irs as f64))
}

pub fn alphabet<T: Real>(m_irs: usize) -> Vec<C<T>> {
    (0..m_irs).map(|q| alphabet_symbol(q, m_irs)).collect()
}

impl<T: Real> PhaseVector<T> {
    /// `v = 1`, the all-ones start (also the last alphabet symbol).
    pub fn ones(m: usize) -> Self {
        Self {
            theta: vec![C::one(); m],
            alphabet: None,
            indices: None,
        }
    }

    pub fn from_angles(angles: &[T]) -> Self {
        Self {
            theta: angles.iter().map(|a| unit(*a)).collect(),
            alphabet: None,
            indices: None,
        }
    }

    /// Continuous phases; rejects entries off the unit circle.
    pub fn new(theta: Vec<C<T>>) -> Result<Self> {
        let tol = T::lit(UNIT_MODULUS_TOL);
        if let Some((m, t)) = theta
            .iter()
            .enumerate()
            .find(|(_, t)| !((t.norm() - T::one()).abs() <= tol))
        {
            return Err(Error::invalid(format!("|theta[{m}]| = {} is not 1", t.norm())));
        }
        Ok(Self {
            theta,
            alphabet: None,
            indices: None,
        })
    }

    /// Discrete phases from 0-based alphabet indices.
    pub fn discrete(indices: Vec<usize>, m_irs: usize) -> Result<Self> {
        if m_irs == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if let Some(bad) = indices.iter().find(|&&q| q >= m_irs) {
            return Err(Error::invalid(format!("phase index {bad} outside alphabet of {m_irs}")));
        }
        Ok(Self {
            theta: indices.iter().map(|&q| alphabet_symbol(q, m_irs)).collect(),
            alphabet: Some(m_irs),
            indices: Some(indices),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.theta.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[C<T>] {
        &self.theta
    }

    pub fn alphabet_size(&self) -> Option<usize> {
        self.alphabet
    }

    pub fn indices(&self) -> Option<&[usize]> {
        self.indices.as_deref()
    }

    /// Largest `||θ_m| − 1|`.
    pub fn modulus_defect(&self) -> T {
        self.theta
            .iter()
            .map(|t| (t.norm() - T::one()).abs())
            .fold(T::zero(), T::max)
    }

    /// Replaces entry `m` with a continuous value, dropping any alphabet tag.
    pub(crate) fn set_continuous(&mut self, m: usize, value: C<T>) {
        self.theta[m] = value;
        self.alphabet = None;
        self.indices = None;
    }

    /// Sets `θ_m = numerator/|numerator|`. A zero numerator leaves `θ_m`
    /// untouched (every unit value is then optimal).
    pub(crate) fn set_normalized(&mut self, m: usize, numerator: C<T>) {
        let mag = numerator.norm();
        if mag > T::zero() && mag.is_finite() {
            self.set_continuous(m, numerator / mag);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_symbols_lie_on_circle() {
        for m_irs in 1..9 {
            for s in alphabet::<f64>(m_irs) {
                assert!((s.norm() - 1.0).abs() < 1e-15);
            }
        }
        let quad: Vec<C<f64>> = alphabet(4);
        assert!((quad[0] - C::new(0.0, 1.0)).norm() < 1e-15);
        assert!((quad[1] - C::new(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(quad[3], C::one());
    }

    #[test]
    fn rejects_off_circle() {
        assert!(PhaseVector::new(vec![C::new(1.0, 0.0), C::new(0.5, 0.0)]).is_err());
        assert!(PhaseVector::<f64>::discrete(vec![0, 4], 4).is_err());
    }
}
