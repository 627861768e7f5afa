//! Explicit permutation representations of nonsplit extensions
//! `1 → M → H → A_k → 1` with elementary abelian `M`, together with the
//! module theory and cohomology needed to build and certify them.

pub mod cohom;
pub mod error;
pub mod ext;
pub mod gf;
pub mod gmod;
pub mod perm;
pub mod pipelines;

pub use error::{Error, Result};
