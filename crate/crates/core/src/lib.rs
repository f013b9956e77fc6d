//! Magnetically induced vacuum dichroism and birefringence in a model where
//! the photon is the spin-1 bound state of a fermion pair and its spin-0
//! partner mixes with it in a magnetic field.
//!
//! The numerical modules are generic over [`Real`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`.

pub mod axion;
pub mod cli;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod exclusion;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use scalar::Real;
pub use spin::{Axis, BasisState, PolarizationSpec};

pub type StateVector = spin::StateVector<f64>;
pub type ModelParams = dynamics::ModelParams<f64>;
pub type FieldRegion = dynamics::FieldRegion<f64>;
pub type Geometry = dynamics::Geometry<f64>;
pub type MixedEigensystem = dynamics::MixedEigensystem<f64>;
pub type Observables = dynamics::Observables<f64>;
pub type AxionParams = axion::AxionParams<f64>;
pub type DictionaryConvention = axion::DictionaryConvention<f64>;
pub type ExperimentConfig = exclusion::ExperimentConfig<f64>;
pub type CurvePoint = exclusion::CurvePoint<f64>;
pub type ScanRow = exclusion::ScanRow<f64>;
