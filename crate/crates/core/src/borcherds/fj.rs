//! Leading Fourier-Jacobi coefficients of `Borch(ψ)` from
//! `TB · exp(−Σ_m (ψ|V_m) ξ^{Nm})`.

use num_bigint::BigInt;

use super::point::InflationPoint;
use super::product::borch_invariants;
use super::psi::build_psi;
use crate::error::{Error, Result};
use crate::jacobi::{vm_apply_scaled, FJExpansion};
use crate::series::JacobiSeries;
use crate::theta::{theta_block_series, ThetaBlockSpec};

/// Highest supported `ξ`-order, in units of `N`.
pub const MAX_XI_ORDERS: usize = 3;

/// `φ_N, φ_{2N}, φ_{3N}` (the first `xi_orders` of them) known below
/// `q^prec`, built from `ψ` and the theta block whose germ is its q⁰ row:
///
/// `φ_N = TB`, `φ_{2N} = −TB·ψ`, `φ_{3N} = TB·(ψ² − 2·ψ|V₂)/2`.
pub fn fj_from_psi(psi: &JacobiSeries, level: i64, xi_orders: usize, prec: i64) -> Result<FJExpansion> {
    if xi_orders == 0 || xi_orders > MAX_XI_ORDERS {
        return Err(Error::InvalidArgument(format!(
            "xi_orders must lie in 1..={MAX_XI_ORDERS}, got {xi_orders}"
        )));
    }
    let inv = borch_invariants(psi)?;
    let (weight, eps) = match (inv.weight(), inv.eps()) {
        (Some(k), Some(e)) => (k, e),
        _ => return Err(Error::HalfIntegralInput),
    };
    let spec = ThetaBlockSpec::from_germ(&psi.row(0)?)?;
    // TB = O(q^A) and ψ² = O(q^{−2N₀}); two extra orders cover the shifts for
    // N₀ ≤ 1 and A ≥ 0.
    let tb = theta_block_series(&spec, 24 * (prec + 2))?;
    let needed = if xi_orders >= 3 { 2 * prec } else { prec + 2 };
    if psi.prec24() < 24 * needed {
        return Err(Error::InsufficientPrecision {
            needed24: 24 * needed,
            available24: psi.prec24(),
        });
    }
    let target = 24 * prec;
    let mut coeffs = vec![tb.truncate(target)];
    if xi_orders >= 2 {
        coeffs.push(tb.mul(psi).neg());
    }
    if xi_orders >= 3 {
        let square = psi.mul(psi);
        let v2 = vm_apply_scaled(psi, 2)?;
        let half = square.sub(&v2).div_scalar_exact(&BigInt::from(2))?;
        coeffs.push(tb.mul(&half));
    }
    for (m, c) in coeffs.iter_mut().enumerate() {
        if c.prec24() < target {
            return Err(Error::InsufficientPrecision { needed24: target, available24: c.prec24() });
        }
        *c = c.truncate(target);
        debug_assert_eq!(c.index2(), level * 2 * (m as i64 + 1));
    }
    Ok(FJExpansion { level, weight, eps, coeffs })
}

/// Builds `ψ` for `point` and expands; see [`fj_from_psi`].
pub fn fj_expansion(point: &InflationPoint, xi_orders: usize, prec: i64) -> Result<FJExpansion> {
    let psi_prec = if xi_orders >= 3 { 2 * prec } else { prec + 2 };
    let psi = build_psi(point, psi_prec)?;
    fj_from_psi(&psi, point.level(), xi_orders, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borcherds::{construct_psi, family_inflation_point};
    use crate::diophantine::FamilyId;
    use crate::jacobi::involution_check;

    #[test]
    fn level_17_passes_the_involution() {
        let p = family_inflation_point(FamilyId::Fam1, 1, 0).unwrap();
        let fj = fj_expansion(&p, 3, 5).unwrap();
        assert_eq!((fj.weight, fj.eps, fj.involution_sign()), (8, -1, -1));
        assert_eq!(fj.coeffs.len(), 3);
        assert!(fj.coeffs.iter().all(|c| c.prec24() == 24 * 5));
        assert_eq!(involution_check(&fj).unwrap(), vec![]);
        assert!(!fj.phi(3).is_zero());
    }

    #[test]
    fn second_coefficient_is_the_negated_numerator() {
        let p = family_inflation_point(FamilyId::Fam2, 1, 0).unwrap();
        let fj = fj_expansion(&p, 2, 4).unwrap();
        let c = construct_psi(&p, 8).unwrap();
        assert_eq!(fj.phi(2), &c.numerator.neg().truncate(24 * 4));
        assert_eq!(fj.phi(1), &c.phi.truncate(24 * 4));
        let one = fj_expansion(&p, 1, 4).unwrap();
        assert_eq!(one.coeffs, vec![fj.phi(1).clone()]);
        assert!(fj_expansion(&p, 4, 4).is_err());
    }
}
