//! The two projective lines `Fam1`, `Fam2` inside `A_c` for the inflation
//! vector [`FAMILY_C`](super::FAMILY_C).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{check_inflation, ENTRIES};
use crate::error::{Error, Result};
use crate::series::{bl_identity_check, BiLaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Fam1,
    Fam2,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Fam1 => write!(f, "Fam1"),
            FamilyId::Fam2 => write!(f, "Fam2"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fam1" | "1" => Ok(FamilyId::Fam1),
            "fam2" | "2" => Ok(FamilyId::Fam2),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

// (p, q) with d_j = p·α + q·β
const FAM1: [(i64, i64); ENTRIES] = [
    (0, 1), (0, 2), (1, 1), (-1, 1), (1, 2), (2, 0), (1, 0), (0, 4),
    (2, 3), (1, 3), (0, 3), (-1, 3), (2, 2), (0, 2), (-1, 2), (-2, 2),
    (2, 1), (1, 1), (0, 1), (-1, 1), (-2, 1), (1, 0), (0, 0), (0, 0),
];

const FAM2: [(i64, i64); ENTRIES] = [
    (0, 1), (1, 1), (1, 0), (1, -1), (1, 2), (1, -2), (0, 2), (2, 0),
    (2, 2), (2, 1), (2, -1), (2, -2), (1, 3), (1, 1), (1, 0), (0, 4),
    (1, -1), (0, 3), (0, 2), (1, -3), (0, 1), (0, 1), (0, 0), (0, 0),
];

/// A line `d_j = p_j α + q_j β` in `ℤ²⁴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub entries: [(i64, i64); ENTRIES],
}

impl FamilySpec {
    pub fn of(id: FamilyId) -> Self {
        let entries = match id {
            FamilyId::Fam1 => FAM1,
            FamilyId::Fam2 => FAM2,
        };
        Self { id, entries }
    }

    pub fn fam1() -> Self {
        Self::of(FamilyId::Fam1)
    }

    pub fn fam2() -> Self {
        Self::of(FamilyId::Fam2)
    }
}

/// `d_j = p_j α + q_j β`, signs kept.
pub fn family_point(spec: &FamilySpec, alpha: i64, beta: i64) -> Vec<i64> {
    spec.entries.iter().map(|&(p, q)| p * alpha + q * beta).collect()
}

/// Proves that the whole line lies in `A_c`.
///
/// With formal `u = ζ^α`, `v = ζ^β` every `X_j = ζ^{d_j/2}` becomes
/// `u^{p_j/2} v^{q_j/2}` and the Laurent identity turns into
/// `m ∏(X_j^{c_j} − X_j^{−c_j}) = (σ₂ − σ₁ + 24) ∏(X_j − X_j^{−1})`
/// over the entries that are not identically zero, where `m` collects `c_j`
/// of the identically zero ones. An identity in `u, v` holds at every
/// specialization, including those where further entries vanish.
pub fn family_membership_symbolic(spec: &FamilySpec, c: &[i64]) -> Result<bool> {
    check_inflation(c)?;
    let x = |p: i64, q: i64, k: i64| BiLaurentPoly::monomial(k * p, k * q, 1);
    let mut m = BigInt::from(1);
    let mut num = BiLaurentPoly::one();
    let mut den = BiLaurentPoly::one();
    let mut s1 = BiLaurentPoly::zero();
    let mut sq = BiLaurentPoly::zero();
    for (&(p, q), &cj) in spec.entries.iter().zip(c) {
        let r = x(p, q, 2).add(&x(p, q, -2));
        sq = sq.add(&(&r * &r));
        s1 = s1.add(&r);
        if (p, q) == (0, 0) {
            m *= cj;
            continue;
        }
        num = &num * &x(p, q, cj).sub(&x(p, q, -cj));
        den = &den * &x(p, q, 1).sub(&x(p, q, -1));
    }
    // 2σ₂ = σ₁² − Σ r_j²; compare doubled sides to stay integral
    let rhs2 = (&s1 * &s1).sub(&sq).sub(&s1.scale(&BigInt::from(2))).add(&BiLaurentPoly::constant(48));
    Ok(bl_identity_check(&num, &den, &rhs2, &(m * 2)))
}
