//! Inflation points `(c, d)` and the built-in configurations.

use std::fmt;

use crate::error::{Error, Result};
use crate::theta::ThetaBlockSpec;

pub const ENTRIES: usize = 24;

/// `∏ c_j` forced by the weight/index bookkeeping of the construction.
pub const INFLATION_PRODUCT: i64 = 1080;

/// A pair `c ∈ ℕ²⁴`, `d ∈ ℤ²⁴` defining `φ = TB_k(d)`, `Ξ = TB_k(c·d)` and
/// `ψ = (φ|V₂ − mΞ)/φ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InflationPoint {
    c: Vec<i64>,
    d: Vec<i64>,
}

impl InflationPoint {
    /// Validates lengths, positivity of `c`, `∏c = 1080`, `Σd²` even and
    /// `Σc²d² = 2Σd²`.
    pub fn new(c: Vec<i64>, d: Vec<i64>) -> Result<Self> {
        if c.len() != ENTRIES || d.len() != ENTRIES {
            return Err(Error::InvalidPoint(format!(
                "expected {ENTRIES} entries in c and d, got {} and {}",
                c.len(),
                d.len()
            )));
        }
        if let Some(bad) = c.iter().find(|&&x| x <= 0) {
            return Err(Error::InvalidPoint(format!("c entries must be positive, got {bad}")));
        }
        if d.iter().all(|&x| x == 0) {
            return Err(Error::TrivialPoint);
        }
        let prod: i64 = c.iter().product();
        if prod != INFLATION_PRODUCT {
            return Err(Error::InvalidPoint(format!("prod c_j = {prod}, expected {INFLATION_PRODUCT}")));
        }
        let sq: i64 = d.iter().map(|x| x * x).sum();
        if sq % 2 != 0 {
            return Err(Error::InvalidPoint(format!("sum of d_j^2 = {sq} is odd")));
        }
        let weighted: i64 = c.iter().zip(&d).map(|(c, d)| c * c * d * d).sum();
        if weighted != 2 * sq {
            return Err(Error::InvalidPoint(format!(
                "sum c_j^2 d_j^2 = {weighted} differs from 2 sum d_j^2 = {}",
                2 * sq
            )));
        }
        Ok(Self { c, d })
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    /// Weight: the number of vanishing `d_j`.
    pub fn k(&self) -> i64 {
        self.d.iter().filter(|&&x| x == 0).count() as i64
    }

    /// Number of nonzero `d_j`.
    pub fn ell(&self) -> i64 {
        ENTRIES as i64 - self.k()
    }

    /// `N = ½ Σ d_j²`.
    pub fn level(&self) -> i64 {
        self.d.iter().map(|x| x * x).sum::<i64>() / 2
    }

    /// `m = ∏_{d_j = 0} c_j`.
    pub fn m(&self) -> i64 {
        self.c.iter().zip(&self.d).filter(|(_, &d)| d == 0).map(|(c, _)| c).product()
    }

    /// `ε = (−1)^{k+1}`.
    pub fn eps(&self) -> i32 {
        if self.k() % 2 == 0 {
            -1
        } else {
            1
        }
    }

    /// `|d_j|` over the nonzero entries, in order.
    pub fn base_list(&self) -> Vec<i64> {
        self.d.iter().filter(|&&x| x != 0).map(|x| x.abs()).collect()
    }

    /// `c_j |d_j|` over the nonzero entries, in order.
    pub fn inflated_list(&self) -> Vec<i64> {
        self.c
            .iter()
            .zip(&self.d)
            .filter(|(_, &d)| d != 0)
            .map(|(c, d)| c * d.abs())
            .collect()
    }

    /// `φ = TB_k(|d|)`.
    pub fn phi_spec(&self) -> ThetaBlockSpec {
        ThetaBlockSpec::from_list(self.k(), &self.base_list()).expect("nonzero entries are positive")
    }

    /// `Ξ = TB_k(c|d|)`.
    pub fn xi_spec(&self) -> ThetaBlockSpec {
        ThetaBlockSpec::from_list(self.k(), &self.inflated_list()).expect("nonzero entries are positive")
    }
}

impl fmt::Display for InflationPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={:?} d={:?}", self.c, self.d)
    }
}

/// The 22-entry base list of the weight-2, level-587 theta block.
pub const BASE_587: [i64; 22] = [1, 1, 2, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 8, 8, 9, 10, 11, 12, 13, 14];

/// Its entrywise inflation.
pub const INFLATED_587: [i64; 22] = [1, 10, 2, 2, 18, 3, 3, 4, 4, 15, 5, 6, 6, 7, 8, 16, 9, 10, 22, 12, 13, 14];

/// The level-587 point: `d` is the base list padded with two zeros, `c` the
/// inflation ratios padded with ones.
pub fn point_587() -> InflationPoint {
    let mut c: Vec<i64> = INFLATED_587.iter().zip(BASE_587).map(|(a, b)| a / b).collect();
    c.extend([1, 1]);
    let mut d = BASE_587.to_vec();
    d.extend([0, 0]);
    InflationPoint::new(c, d).expect("the 587 configuration is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_587_data() {
        let p = point_587();
        assert_eq!((p.k(), p.ell(), p.level(), p.m(), p.eps()), (2, 22, 587, 1, -1));
        assert_eq!(p.inflated_list(), INFLATED_587.to_vec());
        assert_eq!(p.c().iter().filter(|&&x| x > 1).copied().collect::<Vec<_>>(), vec![10, 9, 3, 2, 2]);
        assert_eq!(p.phi_spec().index2(), 2 * 587);
        assert_eq!(p.xi_spec().index2(), 4 * 587);
    }

    #[test]
    fn validation() {
        let p = point_587();
        assert_eq!(InflationPoint::new(p.c().to_vec(), vec![0; 24]), Err(Error::TrivialPoint));
        assert!(matches!(InflationPoint::new(vec![1; 24], p.d().to_vec()), Err(Error::InvalidPoint(_))));
        let mut d = p.d().to_vec();
        d[0] = 2;
        assert!(matches!(InflationPoint::new(p.c().to_vec(), d), Err(Error::InvalidPoint(_))));
        assert!(matches!(InflationPoint::new(vec![1; 3], vec![1; 3]), Err(Error::InvalidPoint(_))));
    }
}
