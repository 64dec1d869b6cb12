//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

/// Numerical thresholds that scale with the precision of the scalar type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum entrywise deviation `|m - m†|` accepted as Hermitian.
    pub hermitian: f64,
    /// Eigenvalues in `[-psd, 0)` are clipped to zero; anything lower is rejected.
    pub psd: f64,
    /// Reconstruction residual per unit dimension.
    pub recon_per_dim: f64,
    /// Accepted deviation of a density matrix trace from one.
    pub trace: f64,
    /// Accepted deviation of `Σ K†K` from the identity.
    pub trace_preserving: f64,
    /// Normalization slack for pure-state vectors.
    pub unit_norm: f64,
}

impl Tolerances {
    pub fn recon(&self, dim: usize) -> f64 {
        self.recon_per_dim * dim as f64
    }
}

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Sum + Send + Sync + 'static
{
    const TOLERANCES: Tolerances;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f64 {
    const TOLERANCES: Tolerances = Tolerances {
        hermitian: 1e-8,
        psd: 1e-8,
        recon_per_dim: 1e-10,
        trace: 1e-10,
        trace_preserving: 1e-8,
        unit_norm: 1e-12,
    };
}

impl Real for f32 {
    const TOLERANCES: Tolerances = Tolerances {
        hermitian: 1e-4,
        psd: 1e-4,
        recon_per_dim: 1e-5,
        trace: 1e-5,
        trace_preserving: 1e-4,
        unit_norm: 1e-5,
    };
}

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}
