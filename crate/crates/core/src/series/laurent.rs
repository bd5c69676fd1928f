//! Laurent polynomials in `ζ^{1/2}` with big integer coefficients.
//!
//! Exponents are stored as integers in units of 1/2, so `ζ` is the key `2`
//! and `ζ^{-1/2}` is the key `-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c · ζ^{exp2/2}`.
    pub fn monomial(exp2: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp2, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exp2, coeff)` pairs, summing repeated exponents.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c.into());
        }
        p
    }

    /// `ζ^{d/2} − ζ^{−d/2}`, the elementary factor of a baby theta block.
    pub fn half_difference(d: i64) -> Self {
        Self::from_terms([(d, 1i64), (-d, -1i64)])
    }

    /// `ζ^d + ζ^{−d}`.
    pub fn symmetric_pair(d: i64) -> Self {
        Self::from_terms([(2 * d, 1i64), (-2 * d, 1i64)])
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

    pub fn coeff(&self, exp2: i64) -> BigInt {
        self.terms.get(&exp2).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, exp2: i64) -> Option<&BigInt> {
        self.terms.get(&exp2)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn into_terms(self) -> BTreeMap<i64, BigInt> {
        self.terms
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `c · ζ^{exp2/2}` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp2: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp2) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// Multiplies by `ζ^{shift2/2}`.
    pub fn shift(&self, shift2: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + shift2, c.clone())).collect(),
        }
    }

    /// Substitutes `ζ → ζ^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution by zeta^0 collapses the polynomial");
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// `ζ → ζ^{-1}`.
    pub fn mirror(&self) -> Self {
        self.substitute_power(-1)
    }

    /// Value at `ζ = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / b` in `Z[ζ^{1/2}, ζ^{-1/2}]`.
    ///
    /// Long division anchored at the lowest exponent of `b`; every step must
    /// divide exactly over the integers and the final remainder must vanish.
    pub fn div_exact(&self, b: &LaurentPoly) -> Result<LaurentPoly> {
        let (b_lo, b_hi) = match (b.min_exp(), b.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(Error::DivideByZero),
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let a_lo = self.min_exp().unwrap();
        let a_hi = self.max_exp().unwrap();
        let q_lo = a_lo - b_lo;
        let q_hi = a_hi - b_hi;
        if q_hi < q_lo {
            return Err(Error::NotDivisible(format!(
                "zeta-span of dividend [{a_lo}, {a_hi}]/2 is narrower than divisor [{b_lo}, {b_hi}]/2"
            )));
        }
        let lead = &b.terms[&b_lo];
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        for qe in q_lo..=q_hi {
            let Some(r) = rem.remove(&(qe + b_lo)) else {
                continue;
            };
            let (q, rr) = r.div_rem(lead);
            if !rr.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "coefficient {r} at zeta^({}/2) is not a multiple of the leading coefficient {lead}",
                    qe + b_lo
                )));
            }
            for (&be, bc) in b.terms.range(b_lo + 1..) {
                let key = qe + be;
                let entry = rem.entry(key).or_insert_with(BigInt::zero);
                *entry -= &q * bc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qe, q);
        }
        if let Some((&e, c)) = rem.iter().next() {
            return Err(Error::NotDivisible(format!(
                "nonzero remainder {c} at zeta^({e}/2)"
            )));
        }
        Ok(Self { terms: quot })
    }

    /// `true` when `p(ζ^{-1}) = sign · p(ζ)`.
    pub fn has_reflection_sign(&self, sign: i32) -> bool {
        self.terms.iter().all(|(&e, c)| match self.terms.get(&-e) {
            Some(m) => {
                if sign > 0 {
                    m == c
                } else {
                    *m == -c
                }
            }
            None => false,
        })
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let exp = if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("{e}/2")
            };
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z^{exp}")?,
                (_, false) => write!(f, "{abs}*z^{exp}")?,
            }
        }
        Ok(())
    }
}
