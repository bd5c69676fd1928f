//! Dense row kernels behind [`JacobiSeries`](super::JacobiSeries) products and
//! quotients.
//!
//! A series is "gridded" when all of its q-exponents lie in one residue class
//! `q0 + step·ℤ` and all ζ-exponents (half-units) share one parity. Rows are then
//! stored as contiguous vectors with ζ-stride 2.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Coefficient ring used by the dense kernels. Fixed-width implementations
/// report overflow instead of wrapping so callers can retry with `BigInt`.
pub(crate) trait Coef: Clone + Default {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    /// `self += a·b`; `false` on overflow.
    fn add_mul(&mut self, a: &Self, b: &Self) -> bool;
    /// `self −= a·b`; `false` on overflow.
    fn sub_mul(&mut self, a: &Self, b: &Self) -> bool;
    fn add_assign(&mut self, a: &Self) -> bool;
    fn sub_assign(&mut self, a: &Self) -> bool;
}

impl Coef for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add_mul(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_sub(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn add_assign(&mut self, a: &Self) -> bool {
        match self.checked_add(*a) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn sub_assign(&mut self, a: &Self) -> bool {
        match self.checked_sub(*a) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Coef for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) -> bool {
        *self += a * b;
        true
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) -> bool {
        *self -= a * b;
        true
    }
    fn add_assign(&mut self, a: &Self) -> bool {
        *self += a;
        true
    }
    fn sub_assign(&mut self, a: &Self) -> bool {
        *self -= a;
        true
    }
}

/// One q-row: `c[i]` is the coefficient of `ζ^{(lo + 2i)/2}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub(crate) struct DenseRow<T> {
    pub lo: i64,
    pub c: Vec<T>,
}

impl<T> DenseRow<T> {
    pub fn empty() -> Self {
        Self { lo: 0, c: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn hi(&self) -> i64 {
        self.lo + 2 * (self.c.len() as i64 - 1)
    }
}

impl<T: Coef> DenseRow<T> {
    /// Zero row covering `[lo, hi]` (half-units, same parity).
    pub fn zeros(lo: i64, hi: i64) -> Self {
        debug_assert!((hi - lo).rem_euclid(2) == 0);
        if hi < lo {
            return Self::empty();
        }
        Self {
            lo,
            c: vec![T::default(); ((hi - lo) / 2 + 1) as usize],
        }
    }

    /// Grows the stored window so that it covers `[lo, hi]`.
    pub fn ensure(&mut self, lo: i64, hi: i64) {
        if self.c.is_empty() {
            *self = Self::zeros(lo, hi);
            return;
        }
        if lo < self.lo {
            let extra = ((self.lo - lo) / 2) as usize;
            let mut v = vec![T::default(); extra];
            v.append(&mut self.c);
            self.c = v;
            self.lo = lo;
        }
        if hi > self.hi() {
            let extra = ((hi - self.hi()) / 2) as usize;
            self.c.extend(std::iter::repeat_n(T::default(), extra));
        }
    }

    pub fn trim(&mut self) {
        let Some(first) = self.c.iter().position(|x| !x.is_nil()) else {
            *self = Self::empty();
            return;
        };
        let last = self.c.iter().rposition(|x| !x.is_nil()).unwrap();
        self.c.truncate(last + 1);
        self.c.drain(..first);
        self.lo += 2 * first as i64;
    }

    /// `self ± ζ^{shift/2}·src` (shift even), growing as needed.
    pub fn add_shifted(&mut self, src: &Self, shift: i64, negate: bool) -> bool {
        if src.is_empty() {
            return true;
        }
        self.ensure(src.lo + shift, src.hi() + shift);
        let off = ((src.lo + shift - self.lo) / 2) as usize;
        for (d, s) in self.c[off..].iter_mut().zip(&src.c) {
            let ok = if negate { d.sub_assign(s) } else { d.add_assign(s) };
            if !ok {
                return false;
            }
        }
        true
    }

    /// `self ± scalar·ζ^{shift/2}·src` (shift of the same parity as the rows).
    pub fn add_scaled_shifted(&mut self, src: &Self, scalar: &T, shift: i64, negate: bool) -> bool {
        if src.is_empty() || scalar.is_nil() {
            return true;
        }
        self.ensure(src.lo + shift, src.hi() + shift);
        let off = ((src.lo + shift - self.lo) / 2) as usize;
        for (d, s) in self.c[off..].iter_mut().zip(&src.c) {
            let ok = if negate { d.sub_mul(s, scalar) } else { d.add_mul(s, scalar) };
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_nil())
                .map(|(i, x)| (self.lo + 2 * i as i64, x.to_big())),
        )
    }

    /// Dense copy of `p`; `None` if exponents have mixed parity or a
    /// coefficient does not fit `T`.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
            return Some(Self::empty());
        };
        let mut row = Self::zeros(lo, hi + (hi - lo).rem_euclid(2));
        for (e, c) in p.terms() {
            if (e - lo).rem_euclid(2) != 0 {
                return None;
            }
            row.c[((e - lo) / 2) as usize] = T::from_big(c)?;
        }
        Some(row)
    }
}

/// Cauchy product of two gridded series with the same step, keeping `n_out`
/// rows. `None` on overflow of `T`.
pub(crate) fn mul_rows<T: Coef>(a: &[DenseRow<T>], b: &[DenseRow<T>], n_out: usize) -> Option<Vec<DenseRow<T>>> {
    let mut out = Vec::with_capacity(n_out);
    if a.is_empty() || b.is_empty() {
        out.resize(n_out, DenseRow::empty());
        return Some(out);
    }
    for t in 0..n_out {
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for i in 0..=t.min(a.len() - 1) {
            let Some(br) = b.get(t - i) else { continue };
            let ar = &a[i];
            if ar.is_empty() || br.is_empty() {
                continue;
            }
            lo = lo.min(ar.lo + br.lo);
            hi = hi.max(ar.hi() + br.hi());
        }
        let mut row = DenseRow::<T>::empty();
        if lo <= hi {
            row = DenseRow::zeros(lo, hi);
            for i in 0..=t.min(a.len() - 1) {
                let Some(br) = b.get(t - i) else { continue };
                let ar = &a[i];
                if ar.is_empty() || br.is_empty() {
                    continue;
                }
                let base = ((ar.lo + br.lo - lo) / 2) as usize;
                for (x, av) in ar.c.iter().enumerate() {
                    if av.is_nil() {
                        continue;
                    }
                    for (dst, bv) in row.c[base + x..].iter_mut().zip(&br.c) {
                        if !dst.add_mul(av, bv) {
                            return None;
                        }
                    }
                }
            }
            row.trim();
        }
        out.push(row);
    }
    Some(out)
}

/// A dense row split into signed base-`2^bits` digit planes.
struct Planes {
    lo: i64,
    digits: Vec<Vec<i64>>,
}

impl Planes {
    fn split(row: &DenseRow<BigInt>, bits: u32) -> Self {
        let max_bits = row.c.iter().map(|c| c.bits()).max().unwrap_or(0);
        let count = max_bits.div_ceil(bits as u64).max(1) as usize;
        let mut digits = vec![vec![0i64; row.c.len()]; count];
        let mask = (1u128 << bits) - 1;
        for (i, c) in row.c.iter().enumerate() {
            let (sign, limbs) = c.to_u64_digits();
            if sign == Sign::NoSign {
                continue;
            }
            for (k, plane) in digits.iter_mut().enumerate() {
                let bit = k as u64 * bits as u64;
                let limb = (bit / 64) as usize;
                let shift = bit % 64;
                let lo = *limbs.get(limb).unwrap_or(&0) as u128;
                let hi = *limbs.get(limb + 1).unwrap_or(&0) as u128;
                let window = ((hi << 64) | lo) >> shift;
                let d = (window & mask) as i64;
                plane[i] = if sign == Sign::Minus { -d } else { d };
            }
        }
        Self { lo: row.lo, digits }
    }

    fn len(&self) -> usize {
        self.digits[0].len()
    }

    fn hi(&self) -> i64 {
        self.lo + 2 * (self.len() as i64 - 1)
    }
}

/// Rows of `small` converted to `i64` with the largest bit length and the
/// number of nonzero entries, or `None` if some entry does not fit.
fn narrow(rows: &[DenseRow<BigInt>]) -> Option<(Vec<DenseRow<i64>>, u64, u64)> {
    let mut out = Vec::with_capacity(rows.len());
    let (mut terms, mut bits) = (0u64, 0u64);
    for row in rows {
        let mut c = Vec::with_capacity(row.c.len());
        for x in &row.c {
            c.push(x.to_i64()?);
            bits = bits.max(x.bits());
        }
        terms += c.iter().filter(|x| **x != 0).count() as u64;
        out.push(DenseRow { lo: row.lo, c });
    }
    Some((out, bits, terms))
}

/// Digit width keeping `terms` products of a digit with a `bits`-bit factor
/// inside an `i128` accumulator.
fn plane_bits(bits: u64, terms: u64) -> Option<u32> {
    let count_bits = 64 - (terms + 1).leading_zeros() as u64;
    let digit_bits = (126i64 - bits as i64 - count_bits as i64).min(62);
    (digit_bits >= 8).then_some(digit_bits as u32)
}

/// Truncated product of rows with arbitrary entries and rows whose entries
/// fit in `i64`, on either side. The wide side is split into digit planes
/// so every inner product runs in `i128`. `None` when neither side is
/// narrow.
pub(crate) fn mul_rows_planes(
    a: &[DenseRow<BigInt>],
    b: &[DenseRow<BigInt>],
    n_out: usize,
) -> Option<Vec<DenseRow<BigInt>>> {
    let (wide, (small, bits, terms)) = match narrow(b) {
        Some(n) => (a, n),
        None => (b, narrow(a)?),
    };
    let digit_bits = plane_bits(bits, terms)?;
    let planes: Vec<Option<Planes>> = wide
        .iter()
        .map(|r| (!r.is_empty()).then(|| Planes::split(r, digit_bits)))
        .collect();
    let mut out = Vec::with_capacity(n_out);
    for t in 0..n_out {
        let pairs: Vec<(&DenseRow<i64>, &Planes)> = (0..=t.min(small.len().saturating_sub(1)))
            .filter_map(|i| {
                let sr = &small[i];
                let wp = planes.get(t - i)?.as_ref()?;
                (!sr.is_empty()).then_some((sr, wp))
            })
            .collect();
        let (mut lo, mut hi, mut depth) = (i64::MAX, i64::MIN, 0);
        for &(sr, wp) in &pairs {
            lo = lo.min(sr.lo + wp.lo);
            hi = hi.max(sr.hi() + wp.hi());
            depth = depth.max(wp.digits.len());
        }
        if lo > hi {
            out.push(DenseRow::empty());
            continue;
        }
        let width = ((hi - lo) / 2 + 1) as usize;
        let mut acc = vec![vec![0i128; width]; depth];
        for &(sr, wp) in &pairs {
            for (y, &sv) in sr.c.iter().enumerate() {
                if sv == 0 {
                    continue;
                }
                let base = ((sr.lo + 2 * y as i64 + wp.lo - lo) / 2) as usize;
                let sw = sv as i128;
                for (plane, accp) in wp.digits.iter().zip(acc.iter_mut()) {
                    for (dst, &w) in accp[base..base + wp.len()].iter_mut().zip(plane) {
                        *dst += sw * w as i128;
                    }
                }
            }
        }
        let mut c = vec![BigInt::zero(); width];
        for (x, slot) in c.iter_mut().enumerate() {
            let mut v = BigInt::zero();
            for accp in acc.iter().rev() {
                v <<= digit_bits as usize;
                v += accp[x];
            }
            *slot = v;
        }
        let mut row = DenseRow { lo, c };
        row.trim();
        out.push(row);
    }
    Some(out)
}

/// Reflection sign `s` with `p(ζ^{-1}) = s·p(ζ)` shared by every row, if any.
fn common_reflection_sign<T: Coef>(rows: &[DenseRow<T>]) -> Option<i32> {
    let mut sign = None;
    for row in rows.iter().filter(|r| !r.is_empty()) {
        if row.lo != -row.hi() {
            return None;
        }
        let big: Vec<BigInt> = row.c.iter().map(Coef::to_big).collect();
        let pairs = || big.iter().zip(big.iter().rev());
        let s = if pairs().all(|(x, y)| x == y) {
            1
        } else if pairs().all(|(x, y)| *x == -y) {
            -1
        } else {
            return None;
        };
        if *sign.get_or_insert(s) != s {
            return None;
        }
    }
    Some(sign.unwrap_or(1))
}

/// Exact long division of a dense row by `den` (leading entry nonzero),
/// anchored at the lowest exponent. Errors describe the failing q-exponent.
fn divide_row(num: &DenseRow<BigInt>, den: &DenseRow<i64>, q24: i64) -> Result<DenseRow<BigInt>> {
    if num.is_empty() {
        return Ok(DenseRow::empty());
    }
    let nl = num.c.len();
    let dl = den.c.len();
    if nl < dl {
        return Err(Error::NotDivisibleAt {
            q24,
            reason: "zeta-span of the dividend is narrower than the leading row of the divisor".into(),
        });
    }
    let lead = den.c[0];
    let mut rem = num.c.clone();
    let mut quot = Vec::with_capacity(nl - dl + 1);
    for i in 0..=(nl - dl) {
        let r = std::mem::take(&mut rem[i]);
        if r.is_zero() {
            quot.push(r);
            continue;
        }
        let (qv, rr) = r.div_rem(&BigInt::from(lead));
        if !rr.is_zero() {
            return Err(Error::NotDivisibleAt {
                q24,
                reason: format!("coefficient at zeta^({}/2) is not a multiple of {lead}", num.lo + 2 * i as i64),
            });
        }
        for (j, &b) in den.c.iter().enumerate().skip(1) {
            if b != 0 {
                rem[i + j] -= &qv * b;
            }
        }
        quot.push(qv);
    }
    if let Some(pos) = rem[nl - dl + 1..].iter().position(|x| !x.is_zero()) {
        return Err(Error::NotDivisibleAt {
            q24,
            reason: format!(
                "nonzero remainder at zeta^({}/2)",
                num.lo + 2 * (nl - dl + 1 + pos) as i64
            ),
        });
    }
    let mut out = DenseRow {
        lo: num.lo - den.lo,
        c: quot,
    };
    out.trim();
    Ok(out)
}

/// Solves `a = b·q` row by row for `n_out` rows of `q`.
///
/// `a` rows are aligned with the output (row `t` of `a` sits at
/// `low(q) + low(b) + t·step`); `b[0]` must be nonzero. `q24_of_row` maps an
/// output row index to its q-exponent for error reporting. Returns `None`
/// when `b` is too large for the fixed-width kernel.
pub(crate) fn div_rows(
    a: &[DenseRow<BigInt>],
    b: &[DenseRow<BigInt>],
    n_out: usize,
    q24_of_row: impl Fn(usize) -> i64,
) -> Option<Result<Vec<DenseRow<BigInt>>>> {
    let (b_small, b_bits, b_terms) = narrow(b)?;
    let digit_bits = plane_bits(b_bits, b_terms)?;

    let sym = match (common_reflection_sign(a), common_reflection_sign(b)) {
        (Some(sa), Some(sb)) => Some((sa, sa * sb)),
        _ => None,
    };

    Some(div_rows_planes(a, &b_small, n_out, digit_bits, sym, q24_of_row))
}

fn div_rows_planes(
    a: &[DenseRow<BigInt>],
    b: &[DenseRow<i64>],
    n_out: usize,
    digit_bits: u32,
    sym: Option<(i32, i32)>,
    q24_of_row: impl Fn(usize) -> i64,
) -> Result<Vec<DenseRow<BigInt>>> {
    let b0 = &b[0];
    let mut q_rows: Vec<DenseRow<BigInt>> = Vec::with_capacity(n_out);
    let mut q_planes: Vec<Planes> = Vec::with_capacity(n_out);
    for t in 0..n_out {
        // S_t = Σ_{i≥1} b_i · q_{t−i}
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        let mut max_planes = 0;
        for i in 1..=t.min(b.len().saturating_sub(1)) {
            let (br, qp) = (&b[i], &q_planes[t - i]);
            if br.is_empty() || q_rows[t - i].is_empty() {
                continue;
            }
            lo = lo.min(br.lo + qp.lo);
            hi = hi.max(br.hi() + qp.hi());
            max_planes = max_planes.max(qp.digits.len());
        }
        let mut s_row = DenseRow::<BigInt>::empty();
        if lo <= hi {
            // with a reflection symmetry only exponents ≤ 0 are accumulated
            let top = match sym {
                Some(_) => hi.min(0),
                None => hi,
            };
            let width = ((top - lo) / 2 + 1).max(0) as usize;
            let mut acc = vec![vec![0i128; width]; max_planes];
            for i in 1..=t.min(b.len() - 1) {
                let (br, qp) = (&b[i], &q_planes[t - i]);
                if br.is_empty() || q_rows[t - i].is_empty() {
                    continue;
                }
                for (y, &bv) in br.c.iter().enumerate() {
                    if bv == 0 {
                        continue;
                    }
                    let start = br.lo + 2 * y as i64 + qp.lo;
                    if start > top {
                        break;
                    }
                    let take = (((top - start) / 2 + 1) as usize).min(qp.len());
                    let base = ((start - lo) / 2) as usize;
                    let bw = bv as i128;
                    for (plane, accp) in qp.digits.iter().zip(acc.iter_mut()) {
                        for (dst, &q) in accp[base..base + take].iter_mut().zip(&plane[..take]) {
                            *dst = dst.wrapping_add(bw.wrapping_mul(q as i128));
                        }
                    }
                }
            }
            let mut c = vec![BigInt::zero(); ((hi - lo) / 2 + 1) as usize];
            for x in 0..width {
                let mut v = BigInt::zero();
                for (k, accp) in acc.iter().enumerate().rev() {
                    v <<= digit_bits as usize;
                    if k == acc.len() - 1 {
                        v = BigInt::from(accp[x]);
                    } else {
                        v += accp[x];
                    }
                }
                c[x] = v;
            }
            if let Some((sa, _)) = sym {
                let n = c.len();
                for x in 0..width {
                    let mirror = n - 1 - x;
                    if mirror >= width {
                        c[mirror] = if sa < 0 { -c[x].clone() } else { c[x].clone() };
                    }
                }
            }
            s_row = DenseRow { lo, c };
        }
        // R_t = A_t − S_t
        let mut r = a.get(t).cloned().unwrap_or_else(DenseRow::empty);
        if !s_row.is_empty() {
            r.ensure(s_row.lo, s_row.hi());
            let off = ((s_row.lo - r.lo) / 2) as usize;
            for (d, s) in r.c[off..].iter_mut().zip(&s_row.c) {
                *d -= s;
            }
        }
        r.trim();
        let q = divide_row(&r, b0, q24_of_row(t))?;
        if let Some((_, sq)) = sym {
            let ok = q.is_empty() || {
                q.lo == -q.hi()
                    && q.c.iter().zip(q.c.iter().rev()).all(|(x, y)| if sq < 0 { *x == -y } else { x == y })
            };
            if !ok {
                return Err(Error::NotDivisibleAt {
                    q24: q24_of_row(t),
                    reason: "quotient row breaks the zeta-reflection symmetry of the inputs".into(),
                });
            }
        }
        q_planes.push(if q.is_empty() {
            Planes { lo: 0, digits: vec![Vec::new()] }
        } else {
            Planes::split(&q, digit_bits)
        });
        q_rows.push(q);
    }
    Ok(q_rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(lo: i64, c: &[i64]) -> DenseRow<BigInt> {
        DenseRow {
            lo,
            c: c.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    #[test]
    fn planes_round_trip_large_values() {
        let big: BigInt = "-123456789012345678901234567890123456789012345".parse().unwrap();
        let r = DenseRow {
            lo: -2,
            c: vec![big.clone(), BigInt::from(7), BigInt::zero()],
        };
        for bits in [8u32, 31, 62] {
            let p = Planes::split(&r, bits);
            for (i, orig) in r.c.iter().enumerate() {
                let mut v = BigInt::zero();
                for plane in p.digits.iter().rev() {
                    v = (v << bits as usize) + plane[i];
                }
                assert_eq!(&v, orig);
            }
        }
    }

    #[test]
    fn reflection_sign_detection() {
        assert_eq!(common_reflection_sign(&[row(-2, &[1, 5, 1])]), Some(1));
        assert_eq!(common_reflection_sign(&[row(-1, &[-1, 1])]), Some(-1));
        assert_eq!(common_reflection_sign(&[row(-2, &[-1, 3, 1])]), None);
        assert_eq!(common_reflection_sign(&[row(-2, &[1, 0, 1]), row(-1, &[-1, 1])]), None);
        assert_eq!(common_reflection_sign(&[row(-2, &[1, 0, 2])]), None);
    }

    #[test]
    fn divide_row_exact_and_inexact() {
        let den = DenseRow { lo: -1, c: vec![-1i64, 1] };
        let num = row(-2, &[1, -2, 1]);
        let q = divide_row(&num, &den, 0).unwrap();
        assert_eq!(q, row(-1, &[-1, 1]));
        assert!(divide_row(&row(0, &[1, 1]), &den, 24).is_err());
    }

    #[test]
    fn plane_product_matches_plain_product() {
        let big: BigInt = "98765432109876543210987654321098765432109876543210".parse().unwrap();
        let wide = vec![
            DenseRow { lo: -2, c: vec![big.clone(), BigInt::from(-3), -&big * 7] },
            DenseRow::empty(),
            DenseRow { lo: 0, c: vec![&big * &big] },
        ];
        let small = vec![row(-1, &[1, -4]), row(-3, &[2, 0, 0, 9]), row(1, &[i64::MAX / 3])];
        let plain = mul_rows(&wide, &small, 4).unwrap();
        assert_eq!(mul_rows_planes(&wide, &small, 4).unwrap(), plain);
        assert_eq!(mul_rows_planes(&small, &wide, 4).unwrap(), mul_rows(&small, &wide, 4).unwrap());
        assert!(mul_rows_planes(&wide, &wide, 3).is_none());
    }
}
