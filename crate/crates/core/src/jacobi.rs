//! Hecke operators `V_m`, additive-lift Fourier-Jacobi coefficients and the
//! involution condition.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::series::JacobiSeries;

/// Integral weight `k`, or `HalfIntegralInput`.
fn integral_weight(phi: &JacobiSeries) -> Result<i64> {
    if phi.weight2() % 2 != 0 {
        return Err(Error::HalfIntegralInput);
    }
    Ok(phi.weight2() / 2)
}

/// Number of integral q-orders `n` with `24n < prec24`.
fn known_orders(prec24: i64) -> i64 {
    (prec24 + 23).div_euclid(24)
}

/// `m^{max(0, 1−k)} · (φ|V_m)`, which has integral coefficients for every
/// integral weight `k`.
///
/// `c(n,r; φ|V_m) = Σ_{d | (n,r,m)} d^{k−1} c(nm/d², r/d; φ)`. If `φ` is known
/// for `n < P` the result is known for `n < ⌈P/m⌉`.
pub fn vm_apply_scaled(phi: &JacobiSeries, m: i64) -> Result<JacobiSeries> {
    if m <= 0 {
        return Err(Error::InvalidArgument(format!("V_m needs m > 0, got {m}")));
    }
    let k = integral_weight(phi)?;
    let p_in = known_orders(phi.prec24());
    let p_out = Integer::div_ceil(&p_in, &m);
    let mut terms = Vec::with_capacity(phi.term_count());
    for (q24, r2, c) in phi.terms() {
        if q24 % 24 != 0 || r2 % 2 != 0 {
            return Err(Error::HalfIntegralInput);
        }
        let (n_src, r_src) = (q24 / 24, r2 / 2);
        for d in divisors(m as u64) {
            let d = d as i64;
            let e = m / d;
            if n_src % e != 0 {
                continue;
            }
            let n = n_src / e * d;
            if n >= p_out {
                continue;
            }
            // d^{k−1} m^{max(0,1−k)}
            let weight = if k >= 1 {
                BigInt::from(d).pow((k - 1) as u32)
            } else {
                BigInt::from(e).pow((1 - k) as u32)
            };
            terms.push((24 * n, 2 * r_src * d, c * weight));
        }
    }
    Ok(JacobiSeries::from_terms(
        phi.weight2(),
        phi.index2() * m,
        24 * p_out,
        terms,
    ))
}

/// `φ|V_m`; fails with `NonIntegralCoefficient` when weight `k ≤ 0` makes a
/// coefficient non-integral.
pub fn vm_apply(phi: &JacobiSeries, m: i64, k: i64) -> Result<JacobiSeries> {
    if phi.weight2() != 2 * k {
        return Err(Error::InvalidArgument(format!(
            "weight {k} does not match the series weight {}/2",
            phi.weight2()
        )));
    }
    let scaled = vm_apply_scaled(phi, m)?;
    if k >= 1 {
        return Ok(scaled);
    }
    let scale = BigInt::from(m).pow((1 - k) as u32);
    let mut terms = Vec::with_capacity(scaled.term_count());
    for (q24, r2, c) in scaled.terms() {
        let (q, rem) = c.div_rem(&scale);
        if !rem.is_zero() {
            return Err(Error::NonIntegralCoefficient { n: q24 / 24, r: r2 / 2 });
        }
        terms.push((q24, r2, q));
    }
    Ok(JacobiSeries::from_terms(scaled.weight2(), scaled.index2(), scaled.prec24(), terms))
}

/// Fourier-Jacobi coefficients of `Grit(ψ)` without the Eisenstein term:
/// entry `m − 1` is `m^{max(0,1−k)} · (ψ|V_m)` (see [`vm_apply_scaled`]).
pub fn grit_fj(psi: &JacobiSeries, m_max: i64) -> Result<Vec<JacobiSeries>> {
    integral_weight(psi)?;
    if !eisenstein_free(psi) {
        return Err(Error::EisensteinTermRequired);
    }
    (1..=m_max).map(|m| vm_apply_scaled(psi, m)).collect()
}

/// Fourier-Jacobi coefficients `φ_{Nm}`, `m = 1..=coeffs.len()`, of a
/// paramodular form of level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FJExpansion {
    pub level: i64,
    pub weight: i64,
    pub eps: i32,
    pub coeffs: Vec<JacobiSeries>,
}

impl FJExpansion {
    /// `(−1)^k ε`.
    pub fn involution_sign(&self) -> i32 {
        if self.weight % 2 == 0 {
            self.eps
        } else {
            -self.eps
        }
    }

    /// `φ_{Nm}` for `m ≥ 1`.
    pub fn phi(&self, m: usize) -> &JacobiSeries {
        &self.coeffs[m - 1]
    }
}

/// One failure of `c(n,r; φ_{Nm}) = (−1)^k ε c(m,r; φ_{Nn})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionViolation {
    pub n: i64,
    pub m: i64,
    pub r: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Checks the involution condition for all `1 ≤ n, m ≤ m_max`.
pub fn involution_check(fj: &FJExpansion) -> Result<Vec<InvolutionViolation>> {
    let m_max = fj.coeffs.len() as i64;
    for phi in &fj.coeffs {
        if phi.prec24() <= 24 * m_max {
            return Err(Error::InsufficientPrecision {
                needed24: 24 * m_max,
                available24: phi.prec24(),
            });
        }
    }
    let sign = BigInt::from(fj.involution_sign());
    let mut out = Vec::new();
    for m in 1..=m_max {
        for n in 1..=m_max {
            let a = fj.phi(m as usize).row(24 * n)?;
            let b = fj.phi(n as usize).row(24 * m)?;
            let rs: BTreeSet<i64> = a.terms().chain(b.terms()).map(|(r, _)| r).collect();
            for r2 in rs {
                let lhs = a.coeff(r2);
                let rhs = &sign * b.coeff(r2);
                if lhs != rhs {
                    out.push(InvolutionViolation { n, m, r: r2 / 2, lhs, rhs });
                }
            }
        }
    }
    Ok(out)
}

/// `true` when `c(0,0)` vanishes or the weight has no Eisenstein term.
pub fn eisenstein_free(phi: &JacobiSeries) -> bool {
    let k2 = phi.weight2();
    !(k2 % 4 == 0 && k2 >= 8) || phi.coeff(0, 0).map(|c| c.is_zero()).unwrap_or(true)
}

/// `q`-order of the lowest nonzero term, rounded down to an integer.
pub fn ord_q(phi: &JacobiSeries) -> Option<i64> {
    phi.low24().map(|e| e.div_euclid(24))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{theta_block_series, ThetaBlockSpec};
    use proptest::prelude::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Direct divisor-sum oracle for a single coefficient, exact over ℚ and
    /// returned scaled by `m^{max(0,1−k)}`.
    fn vm_oracle(phi: &JacobiSeries, m: i64, k: i64, n: i64, r: i64) -> BigInt {
        let g = n.gcd(&r).gcd(&m);
        let mut acc = BigInt::zero();
        for d in 1..=g {
            if g % d != 0 {
                continue;
            }
            let c = phi.coeff_nr(n * m / (d * d), r / d).unwrap();
            let w = if k >= 1 { int(d).pow((k - 1) as u32) } else { int(m / d).pow((1 - k) as u32) };
            acc += c * w;
        }
        acc
    }

    fn toy(k2: i64) -> JacobiSeries {
        JacobiSeries::from_terms(
            k2,
            2,
            24 * 12,
            [(-24i64, 0i64, 1i64), (0, 0, 4), (0, 2, 3), (0, -2, 3), (0, 4, 2), (0, -4, 2), (24, 6, 5), (48, 4, -7), (96, 8, 11), (144, 2, 2)],
        )
    }

    #[test]
    fn v1_is_identity() {
        let phi = toy(4);
        assert_eq!(vm_apply(&phi, 1, 2).unwrap(), phi);
    }

    #[test]
    fn vm_matches_divisor_sum() {
        for k in [0i64, 1, 2, 3] {
            let phi = toy(2 * k);
            for m in 1..=4 {
                let v = vm_apply_scaled(&phi, m).unwrap();
                assert_eq!(v.index2(), 2 * m);
                for n in -4..v.prec24() / 24 {
                    for r in -20..=20 {
                        assert_eq!(v.coeff_nr(n, r).unwrap(), vm_oracle(&phi, m, k, n, r), "k={k} m={m} ({n},{r})");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_zero_is_rational() {
        let phi = toy(0);
        // q⁰ζ² under V₂: c(0,2) + ½ c(0,1) = 2 + 3/2
        assert!(matches!(vm_apply(&phi, 2, 0), Err(Error::NonIntegralCoefficient { .. })));
        let scaled = vm_apply_scaled(&phi, 2).unwrap();
        assert_eq!(scaled.coeff_nr(0, 2).unwrap(), int(7));
    }

    #[test]
    fn single_term_collapses() {
        // only d = 5 survives: c(15, 5; φ|V₅) = 5 c(3, 1; φ)
        let phi = JacobiSeries::from_terms(4, 2, 24 * 100, [(24 * 3, 2, 1)]);
        let v = vm_apply(&phi, 5, 2).unwrap();
        assert_eq!(v.terms().collect::<Vec<_>>(), vec![(24 * 15, 10, &int(5))]);
        // gcd(n, r, m) = 1 puts the source at c(nm, r)
        let src = JacobiSeries::from_terms(4, 2, 24 * 40, [(24 * 15, 2, 1)]);
        assert_eq!(vm_apply(&src, 5, 2).unwrap().coeff_nr(3, 1).unwrap(), int(1));
    }

    #[test]
    fn precision_contract() {
        let phi = toy(2);
        assert_eq!(vm_apply_scaled(&phi, 2).unwrap().prec24(), 24 * 6);
        assert_eq!(vm_apply_scaled(&phi, 5).unwrap().prec24(), 24 * 3);
        let half = JacobiSeries::from_terms(1, 1, 48, [(3, 1, 1)]);
        assert_eq!(vm_apply_scaled(&half, 2), Err(Error::HalfIntegralInput));
    }

    #[test]
    fn grit_fj_first_entry() {
        let psi = toy(0);
        let fj = grit_fj(&psi, 3).unwrap();
        assert_eq!(fj[0], psi);
        assert_eq!(fj[2].index2(), 6);
        let eis = toy(8);
        assert_eq!(grit_fj(&eis, 2), Err(Error::EisensteinTermRequired));
        assert!(!eisenstein_free(&eis));
        assert!(eisenstein_free(&toy(0)));
    }

    #[test]
    fn involution_on_symmetric_diagonal() {
        let tb = theta_block_series(&ThetaBlockSpec::from_list(2, &[1, 1, 1, 2, 2, 2, 3, 3, 4, 5]).unwrap(), 24 * 6).unwrap();
        let fj = FJExpansion { level: 37, weight: 2, eps: 1, coeffs: vec![tb.clone()] };
        assert!(involution_check(&fj).unwrap().is_empty());
        // an antisymmetric sign forces c(1, r) = −c(1, r)
        let anti = FJExpansion { eps: -1, ..fj };
        let v = involution_check(&anti).unwrap();
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.n == 1 && x.m == 1));
        let short = FJExpansion { level: 37, weight: 2, eps: 1, coeffs: vec![tb.truncate(24)] };
        assert!(matches!(involution_check(&short), Err(Error::InsufficientPrecision { .. })));
        assert_eq!(ord_q(&tb), Some(1));
    }

    proptest! {
        #[test]
        fn vm_is_linear(a in prop::collection::vec((0i64..8, -6i64..6, -9i64..9), 0..10),
                        b in prop::collection::vec((0i64..8, -6i64..6, -9i64..9), 0..10),
                        m in 1i64..5) {
            let mk = |t: &Vec<(i64, i64, i64)>| JacobiSeries::from_terms(4, 2, 24 * 8, t.iter().map(|&(n, r, c)| (24 * n, 2 * r, c)));
            let (sa, sb) = (mk(&a), mk(&b));
            let lhs = vm_apply(&sa.add(&sb), m, 2).unwrap();
            let rhs = vm_apply(&sa, m, 2).unwrap().add(&vm_apply(&sb, m, 2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
