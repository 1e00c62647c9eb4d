//! Numerical laboratory for harmonic quasiregular maps of the disk and ball.

pub mod analytic;
pub mod ball;
pub mod constants;
pub mod error;
pub mod harness;
pub mod identities;
pub mod planar;
pub mod quadrature;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ComplexSeries64 = analytic::ComplexSeries<f64>;
pub type ComplexSeries32 = analytic::ComplexSeries<f32>;
pub type PlanarHarmonicMap64 = planar::PlanarHarmonicMap<f64>;
pub type PlanarHarmonicMap32 = planar::PlanarHarmonicMap<f32>;
pub type Matrix64 = ball::Matrix<f64>;
pub type LinearBallMap64 = ball::LinearBallMap<f64>;
pub type LinearBallMap32 = ball::LinearBallMap<f32>;
