//! The homogeneous equations cutting out `A_c`, one for each even degree.
//!
//! The `z^{2n}` condition only involves the weighted power sums
//! `w_{2i} = Σ_j (1 − c_j^{2i}) d_j^{2i}` and `p_{2i} = Σ_j d_j^{2i}`, so forms
//! are generated in that basis and expanded to monomials in `d` on demand.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{check_inflation, ENTRIES};
use crate::arith::{bernoulli_numbers, binomial_row, factorial, zeta_one_minus_2n};
use crate::error::{Error, Result};

/// A power-sum symbol of degree `2i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PowerSum {
    /// `Σ_j (1 − c_j^{2i}) d_j^{2i}`
    W(u32),
    /// `Σ_j d_j^{2i}`
    P(u32),
}

impl PowerSum {
    pub fn degree(self) -> u32 {
        match self {
            PowerSum::W(i) | PowerSum::P(i) => 2 * i,
        }
    }

    /// Per-entry weight: `1 − c^{2i}` or `1`.
    fn weight(self, c: i64) -> BigInt {
        match self {
            PowerSum::W(i) => BigInt::one() - BigInt::from(c).pow(2 * i),
            PowerSum::P(_) => BigInt::one(),
        }
    }
}

impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerSum::W(i) => write!(f, "w{}", 2 * i),
            PowerSum::P(i) => write!(f, "p{}", 2 * i),
        }
    }
}

type PsMonomial = Vec<(PowerSum, u32)>;

fn ps_monomial_mul(a: &PsMonomial, b: &PsMonomial) -> PsMonomial {
    let mut m: BTreeMap<PowerSum, u32> = a.iter().copied().collect();
    for &(s, e) in b {
        *m.entry(s).or_insert(0) += e;
    }
    m.into_iter().collect()
}

/// A polynomial in the power-sum symbols with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PowerSumForm {
    terms: BTreeMap<PsMonomial, BigRational>,
}

impl PowerSumForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: BigRational) -> Self {
        let mut f = Self::zero();
        f.add_term(Vec::new(), q);
        f
    }

    pub fn symbol(s: PowerSum) -> Self {
        let mut f = Self::zero();
        f.add_term(vec![(s, 1)], BigRational::one());
        f
    }

    /// `Σ_j d_j^{2i}`, with `p₀ = 24`.
    pub fn p(i: u32) -> Self {
        if i == 0 {
            Self::constant(BigRational::from_integer(BigInt::from(ENTRIES)))
        } else {
            Self::symbol(PowerSum::P(i))
        }
    }

    pub fn w(i: u32) -> Self {
        Self::symbol(PowerSum::W(i))
    }

    /// Builds `Σ coeff · ∏ symbol^e` from integer coefficients.
    pub fn from_terms<I, M>(iter: I) -> Self
    where
        I: IntoIterator<Item = (M, i64)>,
        M: IntoIterator<Item = (PowerSum, u32)>,
    {
        let mut f = Self::zero();
        for (m, c) in iter {
            let mono: BTreeMap<PowerSum, u32> = m.into_iter().collect();
            f.add_term(mono.into_iter().collect(), BigRational::from_integer(BigInt::from(c)));
        }
        f
    }

    fn add_term(&mut self, m: PsMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(PowerSum, u32)], &BigRational)> + '_ {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ps_monomial_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Degree in `d` when every term has the same one.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.iter().map(|(s, e)| s.degree() * e).sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Evaluates with the given symbol values.
    pub fn eval_with(&self, mut value: impl FnMut(PowerSum) -> BigInt) -> BigRational {
        let mut cache: BTreeMap<PowerSum, BigInt> = BTreeMap::new();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut prod = BigInt::one();
            for &(s, e) in m {
                let v = cache.entry(s).or_insert_with(|| value(s));
                prod *= v.pow(e);
            }
            acc += c * BigRational::from_integer(prod);
        }
        acc
    }

    /// Exact value at `(c, d)`.
    pub fn eval(&self, c: &[i64], d: &[i64]) -> BigRational {
        self.eval_with(|s| {
            c.iter()
                .zip(d)
                .map(|(&cj, &dj)| s.weight(cj) * BigInt::from(dj).pow(s.degree()))
                .sum()
        })
    }

    /// Expansion into monomials of `d` for a fixed inflation vector `c`.
    pub fn to_homogeneous(&self, c: &[i64]) -> Result<HomogeneousForm> {
        let degree = match self.degree() {
            Some(d) => d,
            None if self.is_zero() => 0,
            None => return Err(Error::InvalidArgument("form is not homogeneous".into())),
        };
        let mut out = HomogeneousForm::zero(degree);
        let mut cache: BTreeMap<PowerSum, HomogeneousForm> = BTreeMap::new();
        for (m, coef) in &self.terms {
            let mut prod = HomogeneousForm::constant(coef.clone());
            for &(s, e) in m {
                let base = cache.entry(s).or_insert_with(|| HomogeneousForm::power_sum(s, c)).clone();
                for _ in 0..e {
                    prod = prod.mul(&base);
                }
            }
            out = out.add(&prod)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PowerSumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (s, e) in m {
                if *e == 1 {
                    write!(f, "*{s}")?;
                } else {
                    write!(f, "*{s}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Exponent vector of a monomial in `d_1..d_24`.
pub type Exponents = [u8; ENTRIES];

/// A homogeneous polynomial in `d_1..d_24` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    monomials: BTreeMap<Exponents, BigRational>,
}

impl HomogeneousForm {
    pub fn zero(degree: u32) -> Self {
        Self { degree, monomials: BTreeMap::new() }
    }

    pub fn constant(q: BigRational) -> Self {
        let mut f = Self::zero(0);
        f.add_monomial([0; ENTRIES], q);
        f
    }

    /// `Σ_j weight_j · d_j^{deg(s)}`.
    fn power_sum(s: PowerSum, c: &[i64]) -> Self {
        let mut f = Self::zero(s.degree());
        for (j, &cj) in c.iter().enumerate() {
            let mut e = [0u8; ENTRIES];
            e[j] = s.degree() as u8;
            f.add_monomial(e, BigRational::from_integer(s.weight(cj)));
        }
        f
    }

    fn add_monomial(&mut self, e: Exponents, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let slot = self.monomials.entry(e).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.monomials.remove(&e);
        }
    }

    /// Builds a form of the given degree; every exponent vector must sum to it.
    pub fn from_monomials<I>(degree: u32, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut f = Self::zero(degree);
        for (e, q) in iter {
            if e.iter().map(|&x| x as u32).sum::<u32>() != degree {
                return Err(Error::InvalidArgument(format!("monomial {e:?} is not of degree {degree}")));
            }
            f.add_monomial(e, q);
        }
        Ok(f)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn coeff(&self, e: &Exponents) -> BigRational {
        self.monomials.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> + '_ {
        self.monomials.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::InvalidArgument(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (e, q) in &other.monomials {
            out.add_monomial(*e, q.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (ea, qa) in &self.monomials {
            for (eb, qb) in &other.monomials {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_monomial(e, qa * qb);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.degree);
        for (e, q) in &self.monomials {
            out.add_monomial(*e, q * s);
        }
        out
    }

    /// Exact value at an integer point.
    pub fn eval(&self, d: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, q) in &self.monomials {
            let mut prod = BigInt::one();
            for (&x, &dj) in e.iter().zip(d) {
                if x > 0 {
                    prod *= BigInt::from(dj).pow(x as u32);
                }
            }
            acc += q * BigRational::from_integer(prod);
        }
        acc
    }

    /// The unique multiple with coprime integer coefficients whose leading
    /// monomial (the largest exponent vector, so `d_1` first) has a positive
    /// coefficient.
    pub fn primitive(&self) -> Self {
        let Some((_, lead)) = self.monomials.iter().next_back() else {
            return self.clone();
        };
        let mut den = BigInt::one();
        for q in self.monomials.values() {
            den = den.lcm(q.denom());
        }
        let mut num = BigInt::zero();
        for q in self.monomials.values() {
            num = num.gcd(&(q * BigRational::from_integer(den.clone())).to_integer());
        }
        let mut s = BigRational::new(den, num);
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// `Some(λ)` with `self = λ·other`, `λ ≠ 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        if self.is_zero() || other.is_zero() || self.degree != other.degree || self.len() != other.len() {
            return None;
        }
        let (e0, q0) = self.monomials.iter().next()?;
        let lambda = q0 / other.monomials.get(e0)?;
        (self == &other.scale(&lambda)).then_some(lambda)
    }
}

/// `z^{2n}` coefficient of `exp(Σ_i a_i w_{2i} z^{2i}) − 1 − (1/540) Σ_i b_i Q_{2i} z^{2i}`
/// in the power-sum basis, with `a_i = (−1)^i ζ(1−2i)/(2i)!`,
/// `b_i = (−1)^i/(2i)!` and
/// `Q_{2i} = Σ_{i<j}[(d_i+d_j)^{2i} + (d_i−d_j)^{2i}] − p_{2i}`.
pub fn ac_power_sum_form(n: u32) -> Result<PowerSumForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("the equations start at degree 2".into()));
    }
    let bern = bernoulli_numbers(2 * n as usize);
    let sign = |i: u32| if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let lin: Vec<PowerSumForm> = (0..=n)
        .map(|i| {
            if i == 0 {
                return PowerSumForm::zero();
            }
            let a = BigRational::from_integer(sign(i)) * zeta_one_minus_2n(i as usize, &bern)
                / BigRational::from_integer(factorial(2 * i as u64));
            PowerSumForm::w(i).scale(&a)
        })
        .collect();
    // j·E_j = Σ_{i=1}^{j} i·L_i·E_{j−i}
    let mut e = vec![PowerSumForm::constant(BigRational::one())];
    for j in 1..=n {
        let mut acc = PowerSumForm::zero();
        for i in 1..=j {
            let term = lin[i as usize].mul(&e[(j - i) as usize]);
            acc = acc.add(&term.scale(&BigRational::from_integer(BigInt::from(i))));
        }
        e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(j))));
    }
    let two_n = 2 * n as u64;
    let binom = binomial_row(two_n);
    let p_top = PowerSumForm::p(n);
    let mut q = p_top.scale(&-BigRational::one());
    for s in (0..=n).map(|t| 2 * t) {
        let pair = PowerSumForm::p(s / 2).mul(&PowerSumForm::p(n - s / 2)).sub(&p_top);
        q = q.add(&pair.scale(&BigRational::from_integer(binom[s as usize].clone())));
    }
    let b = BigRational::new(sign(n), factorial(two_n) * BigInt::from(540));
    Ok(e[n as usize].sub(&q.scale(&b)))
}

/// The primitive integral form of degree `degree` defining `A_c`.
pub fn ac_polynomial(c: &[i64], degree: u32) -> Result<HomogeneousForm> {
    check_inflation(c)?;
    if degree == 0 || degree % 2 != 0 {
        return Err(Error::InvalidArgument(format!("degree must be even and positive, got {degree}")));
    }
    Ok(ac_power_sum_form(degree / 2)?.to_homogeneous(c)?.primitive())
}

/// The hand-expanded `z²`, `z⁴`, `z⁶` relations, written out term by term as
/// `lhs − rhs`:
///
/// * `Σ c_j²d_j² − 2Σ d_j²`
/// * `Σ (46 + 6c_j⁴) d_j⁴ − Σ_{i,j} [15(c_i²−1)(c_j²−1) − 8] d_i²d_j²`
/// * `Σ (128 − 16c_j⁶) d_j⁶ + Σ_{i,j} (224 + 42(1−c_i²)(1−c_j⁴)) d_i²d_j⁴
///   + Σ_{i,j,k} 35 (1−c_i²)(1−c_j²)(1−c_k²) d_i²d_j²d_k²`
pub fn explicit_relation(c: &[i64], degree: u32) -> Result<HomogeneousForm> {
    check_inflation(c)?;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mono = |parts: &[(usize, u8)]| {
        let mut e = [0u8; ENTRIES];
        for &(j, x) in parts {
            e[j] += x;
        }
        e
    };
    let idx = 0..ENTRIES;
    let mut terms: Vec<(Exponents, BigRational)> = Vec::new();
    match degree {
        2 => {
            for j in idx {
                terms.push((mono(&[(j, 2)]), q(c[j] * c[j] - 2)));
            }
        }
        4 => {
            for j in idx.clone() {
                terms.push((mono(&[(j, 4)]), q(46 + 6 * c[j].pow(4))));
            }
            for i in idx.clone() {
                for j in idx.clone() {
                    let w = 15 * (c[i] * c[i] - 1) * (c[j] * c[j] - 1) - 8;
                    terms.push((mono(&[(i, 2), (j, 2)]), q(-w)));
                }
            }
        }
        6 => {
            for j in idx.clone() {
                terms.push((mono(&[(j, 6)]), q(128 - 16 * c[j].pow(6))));
            }
            for i in idx.clone() {
                for j in idx.clone() {
                    let w = 224 + 42 * (1 - c[i] * c[i]) * (1 - c[j].pow(4));
                    terms.push((mono(&[(i, 2), (j, 4)]), q(w)));
                }
            }
            for i in idx.clone() {
                for j in idx.clone() {
                    for k in idx.clone() {
                        let w = 35 * (1 - c[i] * c[i]) * (1 - c[j] * c[j]) * (1 - c[k] * c[k]);
                        terms.push((mono(&[(i, 2), (j, 2), (k, 2)]), q(w)));
                    }
                }
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "explicit relations exist for degrees 2, 4, 6, not {degree}"
            )))
        }
    }
    HomogeneousForm::from_monomials(degree, terms)
}
