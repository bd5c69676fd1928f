//! Laurent polynomials in two formal variables `u^{1/2}`, `v^{1/2}`.

use std::collections::BTreeMap;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;

/// Keys are `(u-exponent, v-exponent)` in units of 1/2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiLaurentPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(u2: i64, v2: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(u2, v2, &c.into());
        p
    }

    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for ((u, v), c) in iter {
            p.add_term(u, v, &c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u2: i64, v2: i64) -> BigInt {
        self.terms.get(&(u2, v2)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn add_term(&mut self, u2: i64, v2: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((u2, v2)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(u2, v2));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(u, v), c) in &other.terms {
            out.add_term(u, v, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(u, v), c) in &other.terms {
            out.add_term(u, v, &-c);
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }
}

impl<'a> Mul<&'a BiLaurentPoly> for &'a BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn mul(self, rhs: &'a BiLaurentPoly) -> BiLaurentPoly {
        let mut acc: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(ua, va), ca) in &self.terms {
            for (&(ub, vb), cb) in &rhs.terms {
                *acc.entry((ua + ub, va + vb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiLaurentPoly { terms: acc }
    }
}

/// `true` iff `scalar · lhs_num = rhs · lhs_den`.
pub fn bl_identity_check(lhs_num: &BiLaurentPoly, lhs_den: &BiLaurentPoly, rhs: &BiLaurentPoly, scalar: &BigInt) -> bool {
    assert!(!lhs_den.is_zero(), "identity check needs a nonzero denominator");
    lhs_num.scale(scalar) == rhs * lhs_den
}
