//! Dense linear algebra over small prime fields.

mod field;
mod matrix;
mod subspace;
mod vector;

pub use field::Field;
pub use matrix::MatrixGF;
pub use subspace::{EchelonBuilder, Quotient, SubspaceGF};
pub use vector::VectorGF;
