//! Clifford-algebra fields, ball quadrature and the frequency/three-balls
//! machinery for eigenfunctions of the Dirac operator `D u = λ u` on
//! `ℝ^{n+1}`.
//!
//! Everything numeric is generic over [`Real`] (`f32`/`f64`); the Clifford
//! layer is generic over any [`Scalar`] ring, so integer and rational
//! coefficients give exact algebra. The aliases below fix `f64`.

// `!(x > 0.0)` is used throughout so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clifford;
pub mod error;
pub mod field;
pub mod frequency;
pub mod quadrature;
pub mod scalar;
pub mod theorem;

pub use clifford::{blade_product, BladeIndex, Multivector, MAX_DIM};
pub use error::{Error, Result};
pub use field::{families, EigenSpec, ExpPolyField, ExpTerm, FieldBundle, Point};
pub use frequency::{
    DriftPolynomial, FrequencyConfig, FrequencyProfile, GridSpacing, MonotonicityReport,
};
pub use quadrature::{BallRule, QuadOrders, Reduction, UnitBallRule};
pub use scalar::{Real, Scalar};
pub use theorem::{InequalityReport, RadiiTriple, TheoremConfig, TheoremConstants};

pub type Multivector64 = Multivector<f64>;
pub type Field64 = ExpPolyField<f64>;
pub type Point64 = Point<f64>;
pub type UnitBallRule64 = UnitBallRule<f64>;
pub type FrequencyConfig64 = FrequencyConfig<f64>;
pub type RadiiTriple64 = RadiiTriple<f64>;
