//! Coefficient tensors of multilinear forms on finite sequence spaces, their
//! sup-norms, and checks of the summing inequalities they satisfy.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod ksz;
pub mod norms;
pub mod pairing;
pub mod sum;
pub mod tensor;

pub use error::{LabError, Result};
pub use tensor::{CoefficientTensor, MultiIndex, Scalar, ScalarField, VectorTuple};
