//! Exact tube formulas, derivative operators and spectra for isometry-invariant
//! valuations on real and complex space forms.

pub mod algebra;
pub mod cli;
pub mod emit;
pub mod error;
pub mod flat;
pub mod scalar;
pub mod sl2;
pub mod spaceform;
pub mod verify;

pub use error::{Error, Result};
