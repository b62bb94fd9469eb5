//! Valuations on the complex and real space forms of curvature λ.
//!
//! The curved families carry the superscript λ; every coefficient lives in ℚ(λ, π̂).

pub mod bases;
pub mod derivative;
pub mod kernel;
pub mod spectral;
pub mod structure;
pub mod tube;
