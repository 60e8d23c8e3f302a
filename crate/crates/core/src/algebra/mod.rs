//! Scalars, labeled matrices and determinant kernels.

pub mod det;
pub mod matrix;
pub mod scalar;

pub use det::cofactor_determinant;
pub use matrix::{
    braiding, compose, dagger, determinant, direct_sum, direct_sum_all, permutation,
    principal_minor_sum, Label, LabeledMatrix,
};
pub use scalar::{int, ratio, Complex, Rational, Scalar, COMPLEX_TOLERANCE};
