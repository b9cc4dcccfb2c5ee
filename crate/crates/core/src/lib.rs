//! Exact computations for the real Gelfand order: the category of
//! linear-algebra data describing its modules, lattices and normal forms,
//! finite-dimensional algebra checks and the Harish-Chandra bridge.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod field;
pub mod hc;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod repq;
pub mod scalar;
pub mod series;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
pub use field::Field;
pub use matrix::Matrix;
pub use scalar::Scalar;
