//! `ψ = (φ|V₂ − mΞ)/φ` for an inflation point.

use num_bigint::BigInt;

use super::point::InflationPoint;
use crate::error::{Error, Result};
use crate::jacobi::vm_apply;
use crate::series::JacobiSeries;
use crate::theta::theta_block_series;

/// Every stage of the construction, kept for cross-checks.
#[derive(Clone, Debug)]
pub struct PsiConstruction {
    pub phi: JacobiSeries,
    pub phi_v2: JacobiSeries,
    pub xi: JacobiSeries,
    pub numerator: JacobiSeries,
    pub psi: JacobiSeries,
}

/// Builds `ψ` known for q-orders `n < prec`.
///
/// `φ` is expanded to q-order `2(prec + 2)` so that `φ|V₂` and the numerator
/// are known below `prec + 2`; dividing by `φ = O(q²)` brings that back to
/// `prec`. The division is exact row by row or fails with `NotDivisibleAt`.
pub fn construct_psi(point: &InflationPoint, prec: i64) -> Result<PsiConstruction> {
    if prec < 0 {
        return Err(Error::InvalidArgument(format!("precision must be nonnegative, got {prec}")));
    }
    let (phi_spec, xi_spec) = (point.phi_spec(), point.xi_spec());
    if xi_spec.index2() != 2 * phi_spec.index2() {
        return Err(Error::IndexMismatch {
            expected: 2 * phi_spec.index2(),
            found: xi_spec.index2(),
        });
    }
    let num_prec24 = 24 * (prec + 2);
    let (phi, xi) = rayon::join(
        || theta_block_series(&phi_spec, 2 * num_prec24),
        || theta_block_series(&xi_spec, num_prec24),
    );
    let (phi, xi) = (phi?, xi?);
    let phi_v2 = vm_apply(&phi, 2, point.k())?;
    let numerator = phi_v2.sub(&xi.scale(&BigInt::from(point.m())));
    let psi = numerator
        .div_exact(&phi)?
        .truncate(24 * prec)
        .with_metadata(0, 2 * point.level());
    Ok(PsiConstruction { phi, phi_v2, xi, numerator, psi })
}

/// `ψ` known for q-orders `n < prec`; see [`construct_psi`].
pub fn build_psi(point: &InflationPoint, prec: i64) -> Result<JacobiSeries> {
    construct_psi(point, prec).map(|c| c.psi)
}
