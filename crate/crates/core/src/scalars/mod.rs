//! The coefficient field `Q(q,t)`.
//!
//! [`QTPoly`] is an integer-coefficient polynomial in `q, t`; [`QTScalar`] is a
//! reduced fraction of two of them. Every scalar is kept in a canonical form so
//! that `==` is mathematical equality.

mod bracket;
mod parse;
mod qtpoly;
mod qtscalar;
pub(crate) mod render;

pub use bracket::{bracket, bracket_factorial, Param};
pub use qtpoly::{QTMono, QTPoly};
pub use qtscalar::QTScalar;
