//! Exact computation of non-symmetric and bisymmetric Macdonald polynomials.

pub mod cache;
pub mod error;
pub mod evalsym;
pub mod hecke;
pub mod linalg;
pub mod macdonald;
pub mod perm;
pub mod pieri;
pub mod scalars;
pub mod sparts;
pub mod verify;
pub mod xpoly;

pub use error::{Error, Result};
pub use perm::Perm;
pub use scalars::{QTPoly, QTScalar};
pub use xpoly::{EvalPoint, Exps, XPoly};
