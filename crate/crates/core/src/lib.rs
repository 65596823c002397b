//! Exact linear algebra for twisted tensor products of algebras, coalgebras and
//! Frobenius algebras, with diagram checks that return witnesses on failure.

pub mod error;
pub mod gallery;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod tensor;
pub mod twist;

pub use error::{Error, Result};
pub use report::{DiagramReport, Report, Status};
pub use scalar::{FieldSpec, Scalar};
