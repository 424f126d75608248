//! Clifford algebra, tensor calculus and Killing spinors on three-dimensional
//! homogeneous Weyl geometries.
//!
//! Everything is generic over a [`scalar::Real`]; the `*64` aliases below fix
//! `f64`, which is what the checks and the command-line tool use.

pub mod cliff;
pub mod error;
pub mod homgeo;
pub mod identities;
pub mod killing;
pub mod multilin;
pub mod sampling;
pub mod scalar;
pub mod spincurv;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Spinor64 = cliff::Spinor<f64>;
pub type Mat2x64 = cliff::Mat2<f64>;
pub type FrameTensor64 = multilin::FrameTensor<f64>;
pub type SpinorTensor64 = multilin::SpinorTensor<f64>;
pub type Geometry64 = homgeo::HomogeneousWeylGeometry<f64>;
pub type Density64 = homgeo::WeightedDensity<f64>;
pub type CurvaturePackage64 = homgeo::CurvaturePackage<f64>;
pub type GtReport64 = homgeo::GtReport<f64>;
pub type SpinConnection64 = spincurv::SpinConnection<f64>;
pub type KillingBasis64 = killing::KillingBasis<f64>;
pub type GroupArc64 = killing::GroupArc<f64>;
