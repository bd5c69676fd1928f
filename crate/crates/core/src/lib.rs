//! Exact arithmetic for theta blocks, Jacobi forms and antisymmetric
//! paramodular Borcherds products.
//!
//! Exponent conventions are shared by every module: powers of `q` are stored
//! as integers in units of 1/24 and powers of `ζ` in units of 1/2.

pub mod arith;
pub mod borcherds;
pub mod diophantine;
pub mod error;
pub mod jacobi;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use series::{BiLaurentPoly, JacobiSeries, LaurentPoly};
