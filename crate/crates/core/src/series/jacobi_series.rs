//! Truncated Fourier expansions `Σ c(n,r) qⁿ ζʳ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::dense::{self, Coef, DenseRow};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A q-series with Laurent-polynomial coefficients in `ζ^{1/2}`, known exactly
/// for every q-exponent below `prec24/24`.
///
/// q-exponents are stored in units of 1/24 and ζ-exponents in units of 1/2.
/// `weight2` and `index2` are twice the weight and index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiSeries {
    prec24: i64,
    weight2: i64,
    index2: i64,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl JacobiSeries {
    pub fn zero(weight2: i64, index2: i64, prec24: i64) -> Self {
        Self {
            prec24,
            weight2,
            index2,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series 1 (weight 0, index 0).
    pub fn one(prec24: i64) -> Self {
        Self::from_rows(0, 0, prec24, [(0, LaurentPoly::one())])
    }

    /// Builds a series from `(q24, row)` pairs. Rows at or beyond `prec24` are
    /// dropped and repeated exponents are summed.
    pub fn from_rows<I>(weight2: i64, index2: i64, prec24: i64, rows: I) -> Self
    where
        I: IntoIterator<Item = (i64, LaurentPoly)>,
    {
        let mut s = Self::zero(weight2, index2, prec24);
        for (e, row) in rows {
            s.add_row(e, &row);
        }
        s
    }

    /// Builds a series from `(q24, r2, coeff)` triples.
    pub fn from_terms<I, C>(weight2: i64, index2: i64, prec24: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, C)>,
        C: Into<BigInt>,
    {
        let mut rows: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, r, c) in terms {
            rows.entry(e).or_default().add_term(r, &c.into());
        }
        Self::from_rows(weight2, index2, prec24, rows)
    }

    fn add_row(&mut self, e: i64, row: &LaurentPoly) {
        if e >= self.prec24 || row.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&e) {
            Some(old) => old + row,
            None => row.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, sum);
        }
    }

    pub fn prec24(&self) -> i64 {
        self.prec24
    }

    pub fn weight2(&self) -> i64 {
        self.weight2
    }

    pub fn index2(&self) -> i64 {
        self.index2
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Replaces the weight/index metadata.
    pub fn with_metadata(mut self, weight2: i64, index2: i64) -> Self {
        self.weight2 = weight2;
        self.index2 = index2;
        self
    }

    /// Lowest stored q-exponent.
    pub fn low24(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Lowest exponent, or the precision for the zero series (which is known
    /// to vanish below it).
    fn low_or_prec(&self) -> i64 {
        self.low24().unwrap_or(self.prec24)
    }

    pub fn rows(&self) -> impl DoubleEndedIterator<Item = (i64, &LaurentPoly)> + '_ {
        self.coeffs.iter().map(|(&e, p)| (e, p))
    }

    /// The coefficient of `q^{q24/24}`; an error at or beyond the precision.
    pub fn row(&self, q24: i64) -> Result<LaurentPoly> {
        self.check_known(q24)?;
        Ok(self.coeffs.get(&q24).cloned().unwrap_or_default())
    }

    pub fn row_ref(&self, q24: i64) -> Result<Option<&LaurentPoly>> {
        self.check_known(q24)?;
        Ok(self.coeffs.get(&q24))
    }

    pub fn coeff(&self, q24: i64, r2: i64) -> Result<BigInt> {
        self.check_known(q24)?;
        Ok(self.coeffs.get(&q24).map(|p| p.coeff(r2)).unwrap_or_default())
    }

    /// `c(n, r)` for integral `n` and `r`.
    pub fn coeff_nr(&self, n: i64, r: i64) -> Result<BigInt> {
        self.coeff(24 * n, 2 * r)
    }

    fn check_known(&self, q24: i64) -> Result<()> {
        if q24 >= self.prec24 {
            return Err(Error::InsufficientPrecision {
                needed24: q24,
                available24: self.prec24,
            });
        }
        Ok(())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(LaurentPoly::len).sum()
    }

    /// All nonzero terms as `(q24, r2, coeff)`, sorted.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .flat_map(|(&e, p)| p.terms().map(move |(r, c)| (e, r, c)))
    }

    /// Lowers the precision to `min(prec24, self.prec24)`.
    pub fn truncate(&self, prec24: i64) -> Self {
        let prec24 = prec24.min(self.prec24);
        Self {
            prec24,
            weight2: self.weight2,
            index2: self.index2,
            coeffs: self.coeffs.range(..prec24).map(|(&e, p)| (e, p.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.truncate(other.prec24);
        for (e, row) in other.coeffs.range(..out.prec24) {
            if negate {
                out.add_row(*e, &-row);
            } else {
                out.add_row(*e, row);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self {
            prec24: self.prec24,
            weight2: self.weight2,
            index2: self.index2,
            coeffs: if s.is_zero() {
                BTreeMap::new()
            } else {
                self.coeffs.iter().map(|(&e, p)| (e, p.scale(s))).collect()
            },
        }
    }

    /// Divides every coefficient by `d`, failing if any division is inexact.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivideByZero);
        }
        let mut coeffs = BTreeMap::new();
        for (&e, p) in &self.coeffs {
            let mut terms = Vec::with_capacity(p.len());
            for (r, c) in p.terms() {
                let (q, rem) = c.div_rem(d);
                if !rem.is_zero() {
                    return Err(Error::NotDivisibleAt {
                        q24: e,
                        reason: format!("coefficient {c} at zeta^({r}/2) is not a multiple of {d}"),
                    });
                }
                terms.push((r, q));
            }
            coeffs.insert(e, LaurentPoly::from_terms(terms));
        }
        Ok(Self { coeffs, ..self.clone() })
    }

    /// Multiplies by `q^{q24/24} ζ^{r2/2}`; the precision shifts with q.
    pub fn shift(&self, q24: i64, r2: i64) -> Self {
        Self {
            prec24: self.prec24 + q24,
            weight2: self.weight2,
            index2: self.index2,
            coeffs: self.coeffs.iter().map(|(&e, p)| (e + q24, p.shift(r2))).collect(),
        }
    }

    /// `φ(mτ, mz)`: exponents and precision scale by `m`, the index by `m²`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m > 0, "dilation factor must be positive");
        Self {
            prec24: self.prec24 * m,
            weight2: self.weight2,
            index2: self.index2 * m * m,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, p)| (e * m, p.substitute_power(m)))
                .collect(),
        }
    }

    /// Applies `f` to every row.
    pub fn map_rows(&self, mut f: impl FnMut(i64, &LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_rows(
            self.weight2,
            self.index2,
            self.prec24,
            self.coeffs.iter().map(|(&e, p)| (e, f(e, p))),
        )
    }

    /// Common q-step of the stored exponents (0 for at most one row).
    fn q_step(&self) -> i64 {
        let Some(low) = self.low24() else { return 0 };
        self.coeffs.keys().fold(0, |g, &e| g.gcd(&(e - low)))
    }

    /// The half-unit parity shared by every stored ζ-exponent, if uniform.
    fn zeta_parity(&self) -> Option<i64> {
        let mut parity = None;
        for (_, r, _) in self.terms() {
            let p = r.rem_euclid(2);
            if *parity.get_or_insert(p) != p {
                return None;
            }
        }
        Some(parity.unwrap_or(0))
    }

    fn dense_rows<T: Coef>(&self, q0: i64, step: i64, n: usize) -> Option<Vec<DenseRow<T>>> {
        (0..n)
            .map(|i| match self.coeffs.get(&(q0 + step * i as i64)) {
                Some(p) => DenseRow::from_laurent(p),
                None => Some(DenseRow::empty()),
            })
            .collect()
    }

    fn from_dense<T: Coef>(weight2: i64, index2: i64, prec24: i64, q0: i64, step: i64, rows: &[DenseRow<T>]) -> Self {
        Self::from_rows(
            weight2,
            index2,
            prec24,
            rows.iter()
                .enumerate()
                .filter(|(_, r)| !r.is_empty())
                .map(|(i, r)| (q0 + step * i as i64, r.to_laurent())),
        )
    }

    fn joint_step(&self, other: &Self) -> i64 {
        match self.q_step().gcd(&other.q_step()) {
            0 => 24,
            s => s,
        }
    }

    /// Truncated Cauchy product. The result is known below
    /// `min(self.prec + low(other), other.prec + low(self))`; weights and
    /// indices add.
    pub fn mul(&self, other: &Self) -> Self {
        let prec24 = (self.prec24 + other.low_or_prec()).min(other.prec24 + self.low_or_prec());
        let (weight2, index2) = (self.weight2 + other.weight2, self.index2 + other.index2);
        let (Some(la), Some(lb)) = (self.low24(), other.low24()) else {
            return Self::zero(weight2, index2, prec24);
        };
        let step = self.joint_step(other);
        let q0 = la + lb;
        let n_out = rows_below(q0, step, prec24);
        if self.zeta_parity().is_some() && other.zeta_parity().is_some() {
            if let Some(s) = self.mul_dense::<i128>(other, q0, step, n_out, prec24) {
                return s;
            }
            if let Some(s) = self.mul_planes(other, q0, step, n_out, prec24) {
                return s;
            }
            if let Some(s) = self.mul_dense::<BigInt>(other, q0, step, n_out, prec24) {
                return s;
            }
        }
        self.mul_sparse(other)
    }

    fn mul_dense<T: Coef>(&self, other: &Self, q0: i64, step: i64, n_out: usize, prec24: i64) -> Option<Self> {
        let (la, lb) = (self.low24()?, other.low24()?);
        let a = self.dense_rows::<T>(la, step, rows_below(la, step, self.prec24).min(n_out))?;
        let b = other.dense_rows::<T>(lb, step, rows_below(lb, step, other.prec24).min(n_out))?;
        let rows = dense::mul_rows(&a, &b, n_out)?;
        Some(Self::from_dense(
            self.weight2 + other.weight2,
            self.index2 + other.index2,
            prec24,
            q0,
            step,
            &rows,
        ))
    }

    fn mul_planes(&self, other: &Self, q0: i64, step: i64, n_out: usize, prec24: i64) -> Option<Self> {
        let (la, lb) = (self.low24()?, other.low24()?);
        let a = self.dense_rows::<BigInt>(la, step, rows_below(la, step, self.prec24).min(n_out))?;
        let b = other.dense_rows::<BigInt>(lb, step, rows_below(lb, step, other.prec24).min(n_out))?;
        let rows = dense::mul_rows_planes(&a, &b, n_out)?;
        Some(Self::from_dense(
            self.weight2 + other.weight2,
            self.index2 + other.index2,
            prec24,
            q0,
            step,
            &rows,
        ))
    }

    /// Reference product over sparse rows; same contract as [`Self::mul`].
    pub fn mul_sparse(&self, other: &Self) -> Self {
        let prec24 = (self.prec24 + other.low_or_prec()).min(other.prec24 + self.low_or_prec());
        let mut rows: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (ea, pa) in &self.coeffs {
            for (eb, pb) in other.coeffs.range(..prec24 - ea) {
                let prod = pa * pb;
                let slot = rows.entry(ea + eb).or_default();
                *slot = &*slot + &prod;
            }
        }
        Self::from_rows(
            self.weight2 + other.weight2,
            self.index2 + other.index2,
            prec24,
            rows,
        )
    }

    fn quotient_shape(&self, b: &Self) -> Result<(i64, i64, i64, i64)> {
        let lb = b.low24().ok_or(Error::DivideByZero)?;
        let la = self.low_or_prec();
        let q_low = la - lb;
        let prec24 = (self.prec24 - lb).min(b.prec24 - lb + q_low);
        let step = self.joint_step(b);
        Ok((lb, q_low, prec24, step))
    }

    /// Exact quotient `self / b`, solved row by row in ascending q-order with
    /// exact Laurent division by the lowest row of `b`.
    ///
    /// The result is known below `min(self.prec − low(b), b.prec − low(b) + low(q))`
    /// where `low(q) = low(self) − low(b)`. Weights and indices subtract.
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        let (lb, q_low, prec24, step) = self.quotient_shape(b)?;
        if self.is_zero() {
            return Ok(Self::zero(self.weight2 - b.weight2, self.index2 - b.index2, prec24));
        }
        let n_out = rows_below(q_low, step, prec24);
        if self.zeta_parity().is_some() && b.zeta_parity().is_some() {
            let la = self.low24().unwrap();
            let a_rows = self.dense_rows::<BigInt>(la, step, n_out);
            let b_rows = b.dense_rows::<BigInt>(lb, step, n_out.min(rows_below(lb, step, b.prec24)));
            if let (Some(a_rows), Some(b_rows)) = (a_rows, b_rows) {
                if let Some(res) = dense::div_rows(&a_rows, &b_rows, n_out, |t| q_low + step * t as i64) {
                    let rows = res?;
                    return Ok(Self::from_dense(
                        self.weight2 - b.weight2,
                        self.index2 - b.index2,
                        prec24,
                        q_low,
                        step,
                        &rows,
                    ));
                }
            }
        }
        self.div_exact_sparse(b)
    }

    /// Reference quotient over sparse rows; same contract as [`Self::div_exact`].
    pub fn div_exact_sparse(&self, b: &Self) -> Result<Self> {
        let (lb, q_low, prec24, step) = self.quotient_shape(b)?;
        let mut out = Self::zero(self.weight2 - b.weight2, self.index2 - b.index2, prec24);
        if self.is_zero() {
            return Ok(out);
        }
        let b0 = &b.coeffs[&lb];
        for t in 0..rows_below(q_low, step, prec24) {
            let e = q_low + step * t as i64;
            let mut r = self.coeffs.get(&(e + lb)).cloned().unwrap_or_default();
            for (&eq, qrow) in out.coeffs.range(..e) {
                if let Some(brow) = b.coeffs.get(&(e - eq + lb)) {
                    r = &r - &(brow * qrow);
                }
            }
            let q = r.div_exact(b0).map_err(|err| Error::NotDivisibleAt {
                q24: e,
                reason: err.to_string(),
            })?;
            out.add_row(e, &q);
        }
        Ok(out)
    }

    /// Largest absolute coefficient size in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.values().map(LaurentPoly::max_abs_bits).max().unwrap_or(0)
    }

    /// `true` if every coefficient fits in an `i64`.
    pub fn fits_i64(&self) -> bool {
        self.terms().all(|(_, _, c)| c.to_i64().is_some())
    }
}

/// Number of grid rows `q0 + step·t` lying strictly below `prec24`.
fn rows_below(q0: i64, step: i64, prec24: i64) -> usize {
    if prec24 <= q0 {
        0
    } else {
        ((prec24 - q0 + step - 1) / step) as usize
    }
}
