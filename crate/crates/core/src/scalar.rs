//! Scalar traits shared by every layer of the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Coefficient ring of a multivector.
///
/// Integer and rational types give exact Clifford arithmetic; the analytic
/// layers additionally require [`Real`].
pub trait Scalar:
    Num + Neg<Output = Self> + Copy + PartialEq + Debug + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + Copy + PartialEq + Debug + Send + Sync + 'static
{
}

/// Floating-point scalar (`f32` or `f64`) used for fields, quadrature and
/// the frequency/theorem layers.
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + Display + LowerExp + Sum {
    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
