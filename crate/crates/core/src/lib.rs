//! Exact-arithmetic toolkit for chamber decompositions of rational vector
//! spaces, the green-path groupoids attached to them, and hyperplane
//! arrangement recognition, together with a polygon-diagonal model family
//! that exercises all of it.

pub mod exact;
pub mod fan;
pub mod forms;
pub mod groupoid;
pub mod model;
pub mod polygon;
pub mod render;

pub use exact::{Int, Rational, RationalMatrix, RationalVector};
