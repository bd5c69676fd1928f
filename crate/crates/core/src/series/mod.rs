//! Exact sparse arithmetic for Laurent polynomials and truncated q-series.

mod bilaurent;
pub(crate) mod dense;
mod jacobi_series;
mod laurent;

pub use bilaurent::{bl_identity_check, BiLaurentPoly};
pub use jacobi_series::JacobiSeries;
pub use laurent::LaurentPoly;
