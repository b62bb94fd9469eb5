//! Bases, expressions, sparse matrices and exact linear algebra.

mod basis;
mod expr;
pub mod linalg;
mod matrix;

pub use basis::{Basis, Family, Label};
pub use expr::ValExpr;
pub use matrix::OperatorMatrix;
