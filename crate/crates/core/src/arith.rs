//! Small number-theoretic helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Positive divisors of `n > 0`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero are unbounded");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Number of positive divisors.
pub fn sigma0(n: u64) -> u64 {
    divisors(n).len() as u64
}

/// `Σ_{d | n} d^k`.
pub fn sigma(n: u64, k: u32) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m ≥ 1
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut row = binomial_row(m as u64 + 1);
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from(std::mem::take(&mut row[j])) * bj;
        }
        b.push(-acc / BigRational::from(BigInt::from(m + 1)));
    }
    b
}

/// `ζ(1−2n) = −B_{2n}/(2n)` for `n ≥ 1`.
pub fn zeta_one_minus_2n(n: usize, bernoulli: &[BigRational]) -> BigRational {
    assert!(n >= 1);
    -bernoulli[2 * n].clone() / BigRational::from(BigInt::from(2 * n))
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = row[k as usize].clone() * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}
