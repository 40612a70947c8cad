//! Scalars (exact cyclotomic and complex float) and dense matrices over them.

mod cyclotomic;
mod laurent;
mod matrix;
mod scalar;
mod serial;

pub use cyclotomic::{cyclotomic_polynomial, totient, CycScalar};
pub use laurent::LaurentPoly;
pub use matrix::{basis_vector, inner, vec_near_zero, vec_scale, vec_sub, Mat};
pub use scalar::{Mode, Ring, Scalar};
pub use serial::DynMat;

/// Default absolute tolerance for float-mode zero tests.
pub const DEFAULT_TOL: f64 = 1e-9;
