//! The Laurent identity
//! `∏_j (ζ^{c_j d_j/2} − ζ^{−c_j d_j/2})/(ζ^{d_j/2} − ζ^{−d_j/2}) = σ₂(d) − σ₁(d) + 24`
//! where a factor with `d_j = 0` is read as its limit `c_j`, and `σ_i` are
//! the elementary symmetric functions of `r_j = ζ^{d_j} + ζ^{−d_j}`.

use num_bigint::BigInt;

use super::check_inflation;
use crate::error::Result;
use crate::series::LaurentPoly;

/// `(X^c − X^{−c})/(X − X^{−1}) = Σ_{i<c} X^{c−1−2i}` with `X = ζ^{d/2}`;
/// the constant `c` when `d = 0`.
pub fn quotient_factor(c: i64, d: i64) -> LaurentPoly {
    if d == 0 {
        return LaurentPoly::constant(c);
    }
    LaurentPoly::from_terms((0..c).map(|i| (d * (c - 1 - 2 * i), 1i64)))
}

/// `∏_j quotient_factor(c_j, d_j)`.
pub fn br24_lhs(c: &[i64], d: &[i64]) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (&cj, &dj) in c.iter().zip(d) {
        acc = &acc * &quotient_factor(cj, dj);
    }
    acc
}

/// `σ₂(r) − σ₁(r) + 24` with `σ₂ = (σ₁² − Σ r_j²)/2`.
pub fn br24_rhs(d: &[i64]) -> LaurentPoly {
    let mut s1 = LaurentPoly::zero();
    let mut sq = LaurentPoly::zero();
    for &dj in d {
        let r = LaurentPoly::symmetric_pair(dj);
        sq = &sq + &(&r * &r);
        s1 = &s1 + &r;
    }
    let s2 = (&(&s1 * &s1) - &sq)
        .div_exact(&LaurentPoly::constant(2))
        .expect("σ₁² − Σr² is even");
    &(&s2 - &s1) + &LaurentPoly::constant(BigInt::from(24))
}

pub fn br24_check(c: &[i64], d: &[i64]) -> Result<bool> {
    check_inflation(c)?;
    super::check_len(d)?;
    Ok(br24_lhs(c, d) == br24_rhs(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borcherds::point_587;
    use crate::diophantine::FAMILY_C;

    #[test]
    fn zero_point() {
        // 1080 = 4·C(24,2) − 48 + 24
        assert_eq!(br24_rhs(&[0; 24]), LaurentPoly::constant(1080));
        assert!(br24_check(&FAMILY_C, &[0; 24]).unwrap());
    }

    #[test]
    fn factor_is_the_quotient() {
        for (c, d) in [(1, 3), (2, 5), (5, -2), (10, 1), (3, 0)] {
            let f = quotient_factor(c, d);
            if d != 0 {
                assert_eq!(&f * &LaurentPoly::half_difference(d), LaurentPoly::half_difference(c * d));
            } else {
                assert_eq!(f.eval_at_one(), BigInt::from(c));
            }
        }
    }

    #[test]
    fn the_587_configuration() {
        let p = point_587();
        assert!(br24_check(p.c(), p.d()).unwrap());
        let mut d = p.d().to_vec();
        d[3] += 1;
        assert!(!br24_check(p.c(), &d).unwrap());
    }

    #[test]
    fn rejects_bad_c() {
        assert!(br24_check(&[1; 24], &[0; 24]).is_err());
        assert!(br24_check(&FAMILY_C, &[0; 23]).is_err());
    }
}
