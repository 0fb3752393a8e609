//! Real scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Floating point type the solvers are generic over: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + Sum
    + Send
    + Sync
    + 'static
{
    /// One draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

impl Real for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

/// Circularly-symmetric complex Gaussian draw with the given total variance.
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, variance: T) -> C<T> {
    let s = (variance / T::lit(2.0)).sqrt();
    C::new(T::standard_normal(rng) * s, T::standard_normal(rng) * s)
}

/// Unit-modulus complex number with the given angle.
#[inline]
pub fn unit<T: Real>(angle: T) -> C<T> {
    C::new(angle.cos(), angle.sin())
}
