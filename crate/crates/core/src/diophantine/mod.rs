//! The algebraic set `A_c ⊂ ℂ²⁴` whose nontrivial integral points give
//! theta-block quotients with integral `ψ`: its defining forms, the exact
//! Laurent identity, the two known lines and a box search.

mod br24;
mod family;
mod forms;
mod search;

pub use br24::{br24_check, br24_lhs, br24_rhs, quotient_factor};
pub use family::{family_membership_symbolic, family_point, FamilyId, FamilySpec};
pub use forms::{ac_polynomial, ac_power_sum_form, explicit_relation, Exponents, HomogeneousForm, PowerSum, PowerSumForm};
pub use search::{canonical_form, search_points};

use crate::error::{Error, Result};

pub const ENTRIES: usize = 24;

/// The inflation vector carrying both families.
pub const FAMILY_C: [i64; ENTRIES] = [5, 3, 3, 3, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];

pub(crate) fn check_len(v: &[i64]) -> Result<()> {
    if v.len() != ENTRIES {
        return Err(Error::InvalidArgument(format!("expected {ENTRIES} entries, got {}", v.len())));
    }
    Ok(())
}

/// 24 positive entries with product 1080.
pub(crate) fn check_inflation(c: &[i64]) -> Result<()> {
    check_len(c)?;
    if c.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidArgument("inflation entries must be positive".into()));
    }
    let prod: i64 = c.iter().product();
    if prod != crate::borcherds::INFLATION_PRODUCT {
        return Err(Error::InvalidArgument(format!(
            "inflation product is {prod}, expected {}",
            crate::borcherds::INFLATION_PRODUCT
        )));
    }
    Ok(())
}

/// `(m ∏_{d_j≠0} c_j = 1080, Σ c_j² d_j² = 2 Σ d_j², Σ d_j² even)` with
/// `m = ∏_{d_j=0} c_j`.
pub fn lemma2_check(c: &[i64], d: &[i64]) -> (bool, bool, bool) {
    let m: i64 = c.iter().zip(d).filter(|(_, &x)| x == 0).map(|(c, _)| c).product();
    let rest: i64 = c.iter().zip(d).filter(|(_, &x)| x != 0).map(|(c, _)| c).product();
    let sq: i64 = d.iter().map(|x| x * x).sum();
    let weighted: i64 = c.iter().zip(d).map(|(c, x)| c * c * x * x).sum();
    (
        m * rest == crate::borcherds::INFLATION_PRODUCT,
        weighted == 2 * sq,
        sq % 2 == 0,
    )
}
