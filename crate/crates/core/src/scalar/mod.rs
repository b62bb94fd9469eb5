//! Exact coefficient arithmetic.

mod field;
pub mod json;
pub mod numeric;
pub mod omega;
pub mod poly;
mod rho;
mod ring;
mod trig;

pub use field::Scalar;
pub use omega::{binomial, binomial_s, double_factorial, double_factorial_s, factorial, factorial_s, omega};
pub use poly::Poly;
pub use rho::RhoScalar;
pub use ring::{Field, Ring};
pub use trig::{TrigExp, TrigPoly};
