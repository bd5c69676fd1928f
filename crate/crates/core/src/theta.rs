//! η-powers, the odd Jacobi theta function, theta blocks and their order
//! function.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::sigma;
use crate::error::{Error, Result};
use crate::series::dense::{Coef, DenseRow};
use crate::series::{JacobiSeries, LaurentPoly};

/// The even finite-support function `f: ℤ → ℤ` of a theta block, stored on
/// `ℓ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaBlockSpec {
    f: BTreeMap<u64, i64>,
}

impl ThetaBlockSpec {
    /// `TB_k(T) = η^{2k} ∏_{t∈T} ϑ_t/η`; entries of `T` must be positive.
    pub fn from_list(k: i64, list: &[i64]) -> Result<Self> {
        let mut f = BTreeMap::new();
        f.insert(0, 2 * k);
        for &t in list {
            if t <= 0 {
                return Err(Error::InvalidArgument(format!(
                    "theta block list entries must be positive, got {t}"
                )));
            }
            *f.entry(t as u64).or_insert(0) += 1;
        }
        Ok(Self::normalized(f))
    }

    /// From the values `f(ℓ)` for `ℓ ≥ 0`; later entries for the same `ℓ` add up.
    pub fn from_f(values: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut f = BTreeMap::new();
        for (l, v) in values {
            *f.entry(l).or_insert(0) += v;
        }
        Self::normalized(f)
    }

    /// Reads `f` off a germ `f(0) + Σ f(ℓ)(ζ^ℓ + ζ^{−ℓ})`.
    pub fn from_germ(germ: &LaurentPoly) -> Result<Self> {
        let mut f = BTreeMap::new();
        for (r2, c) in germ.terms() {
            if r2 % 2 != 0 {
                return Err(Error::HalfIntegralInput);
            }
            if germ.coeff(-r2) != *c {
                return Err(Error::InvalidArgument(format!("germ is not even in zeta: {germ}")));
            }
            let v: i64 = c
                .try_into()
                .map_err(|_| Error::InvalidArgument("germ coefficient out of range".into()))?;
            if r2 >= 0 {
                f.insert((r2 / 2) as u64, v);
            }
        }
        Ok(Self::normalized(f))
    }

    fn normalized(mut f: BTreeMap<u64, i64>) -> Self {
        f.retain(|&l, v| *v != 0 || l == 0);
        f.entry(0).or_insert(0);
        Self { f }
    }

    /// `f(ℓ)` for any integer `ℓ`.
    pub fn f(&self, l: i64) -> i64 {
        self.f.get(&l.unsigned_abs()).copied().unwrap_or(0)
    }

    /// `(ℓ, f(ℓ))` for `ℓ ≥ 1` with `f(ℓ) ≠ 0`.
    pub fn positive_support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.f.iter().filter(|(&l, _)| l > 0).map(|(&l, &v)| (l as i64, v))
    }

    /// `2k = f(0)`.
    pub fn weight2(&self) -> i64 {
        self.f(0)
    }

    /// `2m = Σ_{ℓ≥1} ℓ² f(ℓ)` (half of `Σ_{ℓ∈ℤ} ℓ² f(ℓ)`).
    pub fn index2(&self) -> i64 {
        self.positive_support().map(|(l, v)| l * l * v).sum()
    }

    /// `24A = Σ_{ℓ∈ℤ} f(ℓ)`.
    pub fn a24(&self) -> i64 {
        self.f(0) + 2 * self.positive_support().map(|(_, v)| v).sum::<i64>()
    }

    /// `2B = Σ_{ℓ≥1} ℓ f(ℓ)`.
    pub fn b2(&self) -> i64 {
        self.positive_support().map(|(l, v)| l * v).sum()
    }

    pub fn has_theta_denominator(&self) -> bool {
        self.positive_support().any(|(_, v)| v < 0)
    }

    /// The list `T` (each `ℓ` repeated `f(ℓ)` times); only meaningful without
    /// theta denominator.
    pub fn list(&self) -> Vec<i64> {
        self.positive_support()
            .flat_map(|(l, v)| std::iter::repeat_n(l, v.max(0) as usize))
            .collect()
    }
}

impl fmt::Display for ThetaBlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TB[f(0)={}", self.f(0))?;
        for (l, v) in self.positive_support() {
            write!(f, ", f({l})={v}")?;
        }
        write!(f, "]")
    }
}

/// Coefficients of `∏_{n≥1}(1−qⁿ)^e` up to `q^{n_max−1}`.
fn euler_power(e: i64, n_max: usize) -> Vec<BigInt> {
    // n·a_n = −e Σ_{j=1}^{n} σ(j) a_{n−j}
    let sig: Vec<BigInt> = (0..n_max).map(|j| if j == 0 { BigInt::zero() } else { sigma(j as u64, 1) }).collect();
    let mut a = Vec::with_capacity(n_max);
    if n_max == 0 {
        return a;
    }
    a.push(BigInt::one());
    for n in 1..n_max {
        let s: BigInt = (1..=n).map(|j| &sig[j] * &a[n - j]).sum();
        a.push(-(s * e) / BigInt::from(n));
    }
    a
}

/// Number of rows `q24 = low + 24j` strictly below `prec24`.
fn integral_rows(low24: i64, prec24: i64) -> usize {
    if prec24 <= low24 {
        0
    } else {
        ((prec24 - low24 + 23) / 24) as usize
    }
}

/// `η^e = q^{e/24} ∏(1−qⁿ)^e`, exact below `q^{prec24/24}`.
pub fn eta_pow_series(e: i64, prec24: i64) -> JacobiSeries {
    let coeffs = euler_power(e, integral_rows(e, prec24));
    JacobiSeries::from_rows(
        e,
        0,
        prec24,
        coeffs
            .into_iter()
            .enumerate()
            .map(|(j, c)| (e + 24 * j as i64, LaurentPoly::constant(c))),
    )
}

/// `ϑ_ℓ(τ, z) = Σ_{n∈ℤ} (−1)ⁿ q^{(2n+1)²/8} ζ^{(2n+1)ℓ/2}`.
pub fn theta_ell_series(l: i64, prec24: i64) -> JacobiSeries {
    assert!(l > 0, "theta_ell needs a positive multiplier");
    let mut terms = Vec::new();
    let mut m = 0i64;
    while 3 * (2 * m + 1) * (2 * m + 1) < prec24 {
        let e = 3 * (2 * m + 1) * (2 * m + 1);
        let s = if m % 2 == 0 { 1 } else { -1 };
        terms.push((e, (2 * m + 1) * l, s));
        terms.push((e, -(2 * m + 1) * l, -s));
        m += 1;
    }
    JacobiSeries::from_terms(1, l * l, prec24, terms)
}

/// `BTB_f(ζ) = ∏_{ℓ≥1} (ζ^{ℓ/2} − ζ^{−ℓ/2})^{f(ℓ)}` as a Laurent polynomial.
pub fn baby_theta_block(spec: &ThetaBlockSpec) -> Result<LaurentPoly> {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for (l, v) in spec.positive_support() {
        let factor = LaurentPoly::half_difference(l);
        for _ in 0..v.unsigned_abs() {
            if v > 0 {
                num = &num * &factor;
            } else {
                den = &den * &factor;
            }
        }
    }
    num.div_exact(&den)
}

/// `f(0) + Σ_{ℓ≥1} f(ℓ)(ζ^ℓ + ζ^{−ℓ})`.
pub fn germ(spec: &ThetaBlockSpec) -> LaurentPoly {
    let mut g = LaurentPoly::constant(spec.f(0));
    for (l, v) in spec.positive_support() {
        g = &g + &LaurentPoly::symmetric_pair(l).scale(&BigInt::from(v));
    }
    g
}

/// Expansion of `TB_f` below `q^{prec24/24}`.
///
/// Blocks without theta denominator go through the triple-product series of
/// the `ϑ_ℓ` and an exact η-power; blocks with denominators through the closed
/// product `q^A BTB_f ∏ (1 − qⁿζ^ℓ)^{f(ℓ)}` with geometric series for negative
/// exponents.
pub fn theta_block_series(spec: &ThetaBlockSpec, prec24: i64) -> Result<JacobiSeries> {
    if spec.has_theta_denominator() {
        theta_block_series_product(spec, prec24)
    } else {
        let rows = integral_rows(spec.a24(), prec24);
        if let Some(dense) = theta_rows::<i128>(spec, rows) {
            return Ok(assemble(spec, prec24, &dense));
        }
        let dense = theta_rows::<BigInt>(spec, rows).expect("BigInt kernel cannot overflow");
        Ok(assemble(spec, prec24, &dense))
    }
}

/// Closed-product expansion of `TB_f`; valid for every `f` and used as the
/// reference for [`theta_block_series`].
pub fn theta_block_series_product(spec: &ThetaBlockSpec, prec24: i64) -> Result<JacobiSeries> {
    let rows = integral_rows(spec.a24(), prec24);
    if rows == 0 {
        return Ok(JacobiSeries::zero(spec.weight2(), spec.index2(), prec24));
    }
    let btb = baby_theta_block(spec).map_err(|_| {
        Error::InfiniteZetaSupport(format!(
            "the q^({}/24) coefficient of {spec} is not a Laurent polynomial",
            spec.a24()
        ))
    })?;
    if let Some(dense) = product_rows::<i128>(spec, &btb, rows) {
        return Ok(assemble(spec, prec24, &dense));
    }
    let dense = product_rows::<BigInt>(spec, &btb, rows).expect("BigInt kernel cannot overflow");
    Ok(assemble(spec, prec24, &dense))
}

fn assemble<T: Coef>(spec: &ThetaBlockSpec, prec24: i64, rows: &[DenseRow<T>]) -> JacobiSeries {
    let a24 = spec.a24();
    JacobiSeries::from_rows(
        spec.weight2(),
        spec.index2(),
        prec24,
        rows.iter()
            .enumerate()
            .map(|(j, r)| (a24 + 24 * j as i64, r.to_laurent())),
    )
}

/// `∏ ϑ_ℓ^{f(ℓ)} · η^{f(0) − Σ f(ℓ)}` on integral rows, `None` on overflow.
fn theta_rows<T: Coef>(spec: &ThetaBlockSpec, rows: usize) -> Option<Vec<DenseRow<T>>> {
    if rows == 0 {
        return Some(Vec::new());
    }
    let mut cur: Vec<DenseRow<T>> = vec![DenseRow::empty(); rows];
    cur[0] = DenseRow { lo: 0, c: vec![T::from_big(&BigInt::one())?] };
    for l in spec.list() {
        // ϑ_ℓ = q^{1/8} Σ_{m≥0} (−1)^m q^{m(m+1)/2} (ζ^{(2m+1)ℓ/2} − ζ^{−(2m+1)ℓ/2})
        let mut next: Vec<DenseRow<T>> = vec![DenseRow::empty(); rows];
        let mut m = 0usize;
        while m * (m + 1) / 2 < rows {
            let tri = m * (m + 1) / 2;
            let odd = (2 * m + 1) as i64 * l;
            let neg = m % 2 == 1;
            for j in tri..rows {
                let src = &cur[j - tri];
                if src.is_empty() {
                    continue;
                }
                if !next[j].add_shifted(src, odd, neg) || !next[j].add_shifted(src, -odd, !neg) {
                    return None;
                }
            }
            m += 1;
        }
        for row in &mut next {
            row.trim();
        }
        cur = next;
    }
    let e = spec.weight2() - spec.list().len() as i64;
    let euler: Vec<T> = euler_power(e.abs(), rows)
        .iter()
        .map(T::from_big)
        .collect::<Option<_>>()?;
    if e >= 0 {
        let mut out: Vec<DenseRow<T>> = vec![DenseRow::empty(); rows];
        for (j, slot) in out.iter_mut().enumerate() {
            for i in 0..=j {
                if !slot.add_scaled_shifted(&cur[j - i], &euler[i], 0, false) {
                    return None;
                }
            }
            slot.trim();
        }
        Some(out)
    } else {
        for j in 1..rows {
            let (done, rest) = cur.split_at_mut(j);
            let target = &mut rest[0];
            for i in 1..=j {
                if !target.add_scaled_shifted(&done[j - i], &euler[i], 0, true) {
                    return None;
                }
            }
            target.trim();
        }
        Some(cur)
    }
}

/// `BTB_f · ∏_{n≥1} ∏_ℓ (1 − qⁿζ^ℓ)^{f(ℓ)}` on integral rows.
fn product_rows<T: Coef>(spec: &ThetaBlockSpec, btb: &LaurentPoly, rows: usize) -> Option<Vec<DenseRow<T>>> {
    let mut cur: Vec<DenseRow<T>> = vec![DenseRow::empty(); rows];
    cur[0] = DenseRow::from_laurent(btb)?;
    let mut factors: Vec<(i64, i64)> = vec![(0, spec.f(0))];
    for (l, v) in spec.positive_support() {
        factors.push((l, v));
        factors.push((-l, v));
    }
    for n in (1..rows).rev() {
        for &(l, v) in &factors {
            for _ in 0..v.unsigned_abs() {
                if v > 0 {
                    // multiply by (1 − qⁿζ^ℓ): high rows first
                    for j in (n..rows).rev() {
                        let (lo, hi) = cur.split_at_mut(j);
                        if !hi[0].add_shifted(&lo[j - n], 2 * l, true) {
                            return None;
                        }
                    }
                } else {
                    // divide by (1 − qⁿζ^ℓ): low rows first
                    for j in n..rows {
                        let (lo, hi) = cur.split_at_mut(j);
                        if !hi[0].add_shifted(&lo[j - n], 2 * l, false) {
                            return None;
                        }
                    }
                }
            }
        }
    }
    for row in &mut cur {
        row.trim();
    }
    Some(cur)
}

/// Outcome of the order-function test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderClass {
    /// `min ord > 0`: a cusp form.
    Cusp,
    /// `min ord = 0`: holomorphic at the boundary, reported separately.
    HolomorphicBoundary,
    /// `min ord < 0` and no theta denominator: weakly holomorphic only.
    WeakOnly,
    /// `min ord < 0` with theta denominators: divisibility decides.
    NeedsDivisibilityCheck,
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderClass::Cusp => "cusp",
            OrderClass::HolomorphicBoundary => "holomorphic-boundary",
            OrderClass::WeakOnly => "weak-only",
            OrderClass::NeedsDivisibilityCheck => "needs-divisibility-check",
        })
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `B̄₂(y) = B₂(y − ⌊y⌋)`.
fn bernoulli2_periodic(y: &BigRational) -> BigRational {
    let t = y - y.floor();
    &t * &t - &t + rat(1, 6)
}

/// `ord(TB_f; x) = k/12 + ½ Σ_{ℓ≥1} f(ℓ) B̄₂(ℓx)`.
pub fn ord_at(spec: &ThetaBlockSpec, x: &BigRational) -> BigRational {
    let mut acc = rat(spec.weight2(), 24);
    for (l, v) in spec.positive_support() {
        acc += bernoulli2_periodic(&(x * BigInt::from(l))) * rat(v, 2);
    }
    acc
}

/// Exact minimum of `ord(TB_f; x)` on `[0, 1]` and the resulting class.
pub fn ord_min(spec: &ThetaBlockSpec) -> (BigRational, OrderClass) {
    let mut breaks: Vec<BigRational> = vec![rat(0, 1), rat(1, 1)];
    for (l, _) in spec.positive_support() {
        for j in 1..l {
            breaks.push(rat(j, l));
        }
    }
    breaks.sort();
    breaks.dedup();
    let mut min = ord_at(spec, &breaks[0]);
    for w in breaks.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let end = ord_at(spec, b);
        if end < min {
            min = end;
        }
        // on (a, b) each ⌊ℓx⌋ is constant, so ord = αx² + βx + γ
        let mid = (a + b) / BigInt::from(2);
        let mut alpha = BigRational::zero();
        let mut beta = BigRational::zero();
        for (l, v) in spec.positive_support() {
            let fl = (&mid * BigInt::from(l)).floor();
            let half_v = rat(v, 2);
            alpha += &half_v * BigInt::from(l * l);
            beta -= &half_v * BigInt::from(l) * (fl * BigInt::from(2) + BigInt::one());
        }
        if alpha.is_positive() {
            let vertex = -beta / (alpha * BigInt::from(2));
            if &vertex > a && &vertex < b {
                let val = ord_at(spec, &vertex);
                if val < min {
                    min = val;
                }
            }
        }
    }
    let class = if min.is_positive() {
        OrderClass::Cusp
    } else if min.is_zero() {
        OrderClass::HolomorphicBoundary
    } else if spec.has_theta_denominator() {
        OrderClass::NeedsDivisibilityCheck
    } else {
        OrderClass::WeakOnly
    };
    (min, class)
}
