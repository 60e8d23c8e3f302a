//! Determinantal circuits, their Pfaffian compilation, and forest counting.
//!
//! Every fast evaluator in this crate has an exponential-time reference in
//! [`oracle`] or alongside it, and the test suites compare the two.

pub mod algebra;
pub mod circuit;
pub mod compiler;
pub mod error;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod pfaffian;
pub mod random;

pub use algebra::{Complex, Label, LabeledMatrix, Rational, Scalar};
pub use circuit::{Circuit, Stack};
pub use error::{Error, Result};
pub use graph::Graph;
pub use oracle::Tensor;
pub use pfaffian::{PfGate, PfaffianCircuit, SkewMatrix};
