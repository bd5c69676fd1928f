//! Product data read off a weakly holomorphic `ψ` of weight 0: leading
//! exponents, the Fricke sign, singular coefficients and Humbert multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::sigma0;
use crate::error::{Error, Result};
use crate::series::JacobiSeries;

/// The sums over the q⁰ row and the polar `ζ⁰` column of `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductInvariants {
    /// `Σ_ℓ c(0,ℓ)`
    pub a24: i64,
    /// `Σ_{ℓ>0} ℓ c(0,ℓ)`
    pub b2: i64,
    /// `Σ_ℓ ℓ² c(0,ℓ)`
    pub c4: i64,
    /// `c(0,0)`
    pub c00: i64,
    /// `Σ_{n<0} σ₀(−n) c(n,0)`
    pub d0: i64,
}

impl ProductInvariants {
    pub fn a(&self) -> Ratio<i64> {
        Ratio::new(self.a24, 24)
    }

    pub fn b(&self) -> Ratio<i64> {
        Ratio::new(self.b2, 2)
    }

    pub fn c(&self) -> Ratio<i64> {
        Ratio::new(self.c4, 4)
    }

    pub fn k(&self) -> Ratio<i64> {
        Ratio::new(self.c00, 2)
    }

    /// The weight when `c(0,0)` is even.
    pub fn weight(&self) -> Option<i64> {
        self.c00.is_even().then_some(self.c00 / 2)
    }

    /// `(−1)^{k+D₀}`, defined for integral weight.
    pub fn eps(&self) -> Option<i32> {
        self.weight().map(|k| if (k + self.d0).is_even() { 1 } else { -1 })
    }

    /// `A, B ∈ ℤ`.
    pub fn character_trivial(&self) -> bool {
        self.a24 % 24 == 0 && self.b2 % 2 == 0
    }
}

fn small(c: &BigInt, what: &str) -> Result<i64> {
    c.to_i64()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} does not fit in 64 bits")))
}

fn integral_rows(psi: &JacobiSeries) -> Result<()> {
    if psi.rows().any(|(q24, row)| q24 % 24 != 0 || row.terms().any(|(r2, _)| r2 % 2 != 0)) {
        return Err(Error::HalfIntegralInput);
    }
    Ok(())
}

/// Pole order `N₀ ≥ 0`: the largest `−n` with a nonzero row.
pub fn pole_order(psi: &JacobiSeries) -> i64 {
    psi.low24().map(|e| (-e.div_euclid(24)).max(0)).unwrap_or(0)
}

pub fn borch_invariants(psi: &JacobiSeries) -> Result<ProductInvariants> {
    integral_rows(psi)?;
    let row0 = psi.row(0)?;
    let (mut a24, mut b2, mut c4) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
    for (r2, c) in row0.terms() {
        let l = BigInt::from(r2 / 2);
        a24 += c;
        if r2 > 0 {
            b2 += &l * c;
        }
        c4 += &l * &l * c;
    }
    let mut d0 = BigInt::zero();
    for (q24, row) in psi.rows().take_while(|(q24, _)| *q24 < 0) {
        d0 += BigInt::from(sigma0((-q24 / 24) as u64)) * row.coeff(0);
    }
    Ok(ProductInvariants {
        a24: small(&a24, "24A")?,
        b2: small(&b2, "2B")?,
        c4: small(&c4, "4C")?,
        c00: small(&row0.coeff(0), "c(0,0)")?,
        d0: small(&d0, "D0")?,
    })
}

/// `(a, b)` is the exponent pair of a character `ε^a v_H^b` of `K(N)`; it
/// exists exactly when some `j` has `a ≡ 24j/g (mod 24)` and
/// `b ≡ 2Nj/g (mod 2)`, `g = gcd(2N, 12)`.
pub fn character_exists(a: i64, b: i64, level: i64) -> bool {
    let g = (2 * level).gcd(&12);
    (0..g).any(|j| (a - 24 * j / g).rem_euclid(24) == 0 && (b - 2 * level * j / g).rem_euclid(2) == 0)
}

/// A nonzero singular coefficient at a reduced index `−N < r ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SingularTerm {
    pub n: i64,
    pub r: i64,
    pub coeff: BigInt,
}

/// Representative of `r` modulo `2N` in `(−N, N]`.
fn reduce_r(r: i64, level: i64) -> i64 {
    let t = r.rem_euclid(2 * level);
    if t > level {
        t - 2 * level
    } else {
        t
    }
}

/// `c(n, r)` through the index-`N` periodicity
/// `c(n, r) = c(n + λr + Nλ², r + 2Nλ)`: depends only on `r² − 4Nn` and
/// `r mod 2N`.
pub fn reduced_coeff(psi: &JacobiSeries, level: i64, n: i64, r: i64) -> Result<BigInt> {
    let disc = r * r - 4 * level * n;
    let rr = reduce_r(r, level);
    let num = rr * rr - disc;
    debug_assert_eq!(num.rem_euclid(4 * level), 0);
    psi.coeff_nr(num / (4 * level), rr)
}

fn check_level(psi: &JacobiSeries, level: i64) -> Result<()> {
    if level <= 0 {
        return Err(Error::InvalidArgument(format!("level must be positive, got {level}")));
    }
    if psi.index2() != 2 * level {
        return Err(Error::IndexMismatch { expected: 2 * level, found: psi.index2() });
    }
    integral_rows(psi)
}

/// All nonzero `c(n, r)` with `4Nn − r² ≤ 0`, `n ≥ −N₀` and `−N < r ≤ N`,
/// sorted by `(n, r)`. Every singular coefficient of `ψ` reduces to one of
/// these.
pub fn singular_support(psi: &JacobiSeries, level: i64, pole: i64) -> Result<Vec<SingularTerm>> {
    check_level(psi, level)?;
    let n_max = level / 4;
    if psi.prec24() <= 24 * n_max {
        return Err(Error::InsufficientPrecision {
            needed24: 24 * (n_max + 1),
            available24: psi.prec24(),
        });
    }
    let mut out = Vec::new();
    for n in -pole..=n_max {
        let Some(row) = psi.row_ref(24 * n)? else { continue };
        for (r2, c) in row.terms() {
            let r = r2 / 2;
            if r > -level && r <= level && r * r >= 4 * level * n {
                out.push(SingularTerm { n, r, coeff: c.clone() });
            }
        }
    }
    Ok(out)
}

/// `Σ_{n≥1} c(n² n₀ m₀, n r₀)`, the multiplicity of `Borch(ψ)` on
/// `Hum(T₀)`. Terms vanish once `n²D` exceeds `N² + 4N N₀`.
pub fn humbert_multiplicity(psi: &JacobiSeries, n0: i64, r0: i64, m0: i64, level: i64) -> Result<BigInt> {
    check_level(psi, level)?;
    if m0 < 0 || n0.gcd(&r0).gcd(&m0) != 1 {
        return Err(Error::InvalidArgument(format!("({n0}, {r0}, {m0}) is not a primitive index")));
    }
    let disc = r0 * r0 - 4 * level * m0 * n0;
    if disc <= 0 {
        return Err(Error::InvalidArgument(format!("discriminant {disc} is not positive")));
    }
    let bound = level * level + 4 * level * pole_order(psi);
    let mut total = BigInt::zero();
    let mut n = 1i64;
    while n * n * disc <= bound {
        total += reduced_coeff(psi, level, n * n * n0 * m0, n * r0)?;
        n += 1;
    }
    Ok(total)
}

/// A Humbert class `(D, ρ)` with `ρ ≡ r₀ (mod 2N)`, identified with `−ρ`, and
/// its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HumbertClass {
    pub discriminant: i64,
    pub rho: i64,
    pub multiplicity: BigInt,
}

impl fmt::Display for HumbertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D={} r0={} mult={}", self.discriminant, self.rho, self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holomorphic,
    /// Classes with negative multiplicity.
    Meromorphic(Vec<HumbertClass>),
}

impl Verdict {
    pub fn is_holomorphic(&self) -> bool {
        matches!(self, Verdict::Holomorphic)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holomorphic => write!(f, "HOLOMORPHIC"),
            Verdict::Meromorphic(bad) => {
                write!(f, "MEROMORPHIC")?;
                for c in bad {
                    write!(f, "; {c}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphyReport {
    pub verdict: Verdict,
    /// Every class whose multiplicity sum has a nonzero term.
    pub classes: Vec<HumbertClass>,
    /// Whether every reduced singular coefficient with `r² > 4Nn` is `≥ 0`.
    pub singular_nonnegative: bool,
}

/// Multiplicity of every Humbert class met by the singular support.
///
/// A class `(D, ρ)` contributes through `c_{t²D, tρ}`, so candidates come
/// from each nonzero singular `(n, r)` with `D' = r² − 4Nn > 0`, each `t` with
/// `t² | D'`, and each `ρ mod 2N` with `tρ ≡ r` and `ρ² ≡ D (mod 4N)`.
pub fn humbert_classes(psi: &JacobiSeries, level: i64) -> Result<Vec<HumbertClass>> {
    let pole = pole_order(psi);
    let support = singular_support(psi, level, pole)?;
    let modulus = 2 * level;
    let mut seen: BTreeMap<(i64, i64), ()> = BTreeMap::new();
    for term in &support {
        let d_full = term.r * term.r - 4 * level * term.n;
        if d_full <= 0 {
            continue;
        }
        let mut t = 1i64;
        while t * t <= d_full {
            if d_full % (t * t) == 0 {
                let disc = d_full / (t * t);
                for rho in 0..modulus {
                    if (t * rho - term.r).rem_euclid(modulus) == 0
                        && (rho * rho - disc).rem_euclid(4 * level) == 0
                    {
                        let canon = rho.min((modulus - rho) % modulus);
                        seen.insert((disc, canon), ());
                    }
                }
            }
            t += 1;
        }
    }
    let mut out = Vec::with_capacity(seen.len());
    for &(disc, rho) in seen.keys() {
        let n0 = (rho * rho - disc) / (4 * level);
        let multiplicity = humbert_multiplicity(psi, n0, rho, 1, level)?;
        out.push(HumbertClass { discriminant: disc, rho, multiplicity });
    }
    Ok(out)
}

pub fn holomorphy_check(psi: &JacobiSeries, level: i64) -> Result<HolomorphyReport> {
    let classes = humbert_classes(psi, level)?;
    let support = singular_support(psi, level, pole_order(psi))?;
    let singular_nonnegative = support
        .iter()
        .filter(|t| t.r * t.r > 4 * level * t.n)
        .all(|t| !t.coeff.is_negative());
    let bad: Vec<HumbertClass> = classes.iter().filter(|c| c.multiplicity.is_negative()).cloned().collect();
    let verdict = if bad.is_empty() { Verdict::Holomorphic } else { Verdict::Meromorphic(bad) };
    Ok(HolomorphyReport { verdict, classes, singular_nonnegative })
}

/// Everything the product analysis reports for one `ψ`.
#[derive(Clone, Debug)]
pub struct BorcherdsData {
    pub level: i64,
    pub invariants: ProductInvariants,
    pub singular: Vec<SingularTerm>,
    pub holomorphy: HolomorphyReport,
    pub psi: JacobiSeries,
}

pub fn analyze(psi: JacobiSeries, level: i64) -> Result<BorcherdsData> {
    let invariants = borch_invariants(&psi)?;
    let singular = singular_support(&psi, level, pole_order(&psi))?;
    let holomorphy = holomorphy_check(&psi, level)?;
    Ok(BorcherdsData { level, invariants, singular, holomorphy, psi })
}

/// One factor `(1 − qⁿζʳξ^{Nm})^{c(nm, r)}` of the product expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFactor {
    pub n: i64,
    pub r: i64,
    /// Exponent of `ξ`, i.e. `N·m`.
    pub xi: i64,
    pub exponent: BigInt,
}

/// Nonzero exponents `c(nm, r)` over `0 ≤ m ≤ m_max`, `|n| ≤ n_max`,
/// `|r| ≤ r_max`, restricted to `m ≥ 0`, `n ≥ 0` when `m = 0`, and `r < 0`
/// when `m = n = 0`.
pub fn product_exponents_export(
    psi: &JacobiSeries,
    level: i64,
    n_max: i64,
    r_max: i64,
    m_max: i64,
) -> Result<Vec<ProductFactor>> {
    check_level(psi, level)?;
    if n_max < 0 || r_max < 0 || m_max < 0 {
        return Err(Error::InvalidArgument("export bounds must be nonnegative".into()));
    }
    let mut out = Vec::new();
    for m in 0..=m_max {
        let n_lo = if m == 0 { 0 } else { -n_max };
        for n in n_lo..=n_max {
            for r in -r_max..=r_max {
                if m == 0 && n == 0 && r >= 0 {
                    continue;
                }
                let exponent = psi.coeff_nr(n * m, r)?;
                if !exponent.is_zero() {
                    out.push(ProductFactor { n, r, xi: level * m, exponent });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(level: i64, terms: &[(i64, i64, i64)]) -> JacobiSeries {
        JacobiSeries::from_terms(0, 2 * level, 24 * (level / 4 + 2), terms.iter().map(|&(n, r, c)| (24 * n, 2 * r, c)))
    }

    #[test]
    fn trivial_sums() {
        // only c(0,0) = 2k
        let psi = toy(5, &[(0, 0, 6)]);
        let inv = borch_invariants(&psi).unwrap();
        assert_eq!((inv.a(), inv.b(), inv.c()), (Ratio::new(3, 12), Ratio::from(0), Ratio::from(0)));
        assert_eq!(inv.weight(), Some(3));
        assert!(!inv.character_trivial());
    }

    #[test]
    fn d0_counts_divisors() {
        let psi = toy(5, &[(-1, 0, 1), (-2, 0, 3), (-4, 0, -1), (-2, 1, 9), (0, 0, 4)]);
        let inv = borch_invariants(&psi).unwrap();
        // σ₀(1)·1 + σ₀(2)·3 + σ₀(4)·(−1)
        assert_eq!(inv.d0, 1 + 6 - 3);
        assert_eq!(inv.eps(), Some(1));
        assert_eq!(pole_order(&psi), 4);
    }

    #[test]
    fn characters() {
        assert!(character_exists(0, 0, 587));
        // N odd: g = 2, j = 1 gives (12, 1)
        assert!(character_exists(12, 1, 587));
        assert!(!character_exists(12, 0, 587));
        assert!(!character_exists(1, 0, 587));
        // N = 6: g = 12, every (2j mod 24, j mod 2)
        assert!(character_exists(2, 1, 6));
        assert!(!character_exists(2, 0, 6));
    }

    #[test]
    fn polar_term_alone() {
        let psi = toy(7, &[(-1, 0, 1)]);
        let s = singular_support(&psi, 7, 1).unwrap();
        assert_eq!(s, vec![SingularTerm { n: -1, r: 0, coeff: BigInt::from(1) }]);
        let rep = holomorphy_check(&psi, 7).unwrap();
        assert_eq!(rep.verdict, Verdict::Holomorphic);
        // the divisor of 1/q: D = 4N, r₀ = 0
        assert_eq!(rep.classes, vec![HumbertClass { discriminant: 28, rho: 0, multiplicity: BigInt::from(1) }]);
    }

    #[test]
    fn negative_class_is_reported() {
        let psi = toy(5, &[(-1, 0, 1), (0, 0, 4), (0, 1, -1), (0, -1, -1)]);
        let rep = holomorphy_check(&psi, 5).unwrap();
        let Verdict::Meromorphic(bad) = &rep.verdict else { panic!("expected a pole") };
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].discriminant, bad[0].rho), (1, 1));
        assert_eq!(bad[0].multiplicity, BigInt::from(-1));
        assert!(!rep.singular_nonnegative);
    }

    #[test]
    fn periodicity_reduction() {
        // c(n, r) = c(n + λr + Nλ², r + 2Nλ)
        let psi = toy(3, &[(0, 2, 5), (-1, 0, 1)]);
        assert_eq!(reduced_coeff(&psi, 3, 0 + 2 + 3, 2 + 6).unwrap(), BigInt::from(5));
        assert_eq!(reduced_coeff(&psi, 3, -1 + 0 + 3, 6).unwrap(), BigInt::from(1));
        assert_eq!(reduced_coeff(&psi, 3, 0 - 2 + 3, 2 - 6).unwrap(), BigInt::from(5));
    }

    #[test]
    fn multiplicity_sums_along_the_ray() {
        // (n₀, r₀, m₀) = (0, 1, 0): Σ c(0, n)
        let psi = toy(20, &[(-1, 0, 1), (0, 1, 2), (0, -1, 2), (0, 2, 3), (0, -2, 3), (0, 3, -1), (0, -3, -1)]);
        assert_eq!(humbert_multiplicity(&psi, 0, 1, 0, 20).unwrap(), BigInt::from(4));
        assert_eq!(humbert_multiplicity(&psi, 1, 3, 0, 20).unwrap(), BigInt::from(-1));
        assert!(humbert_multiplicity(&psi, 0, 2, 0, 20).is_err());
        assert!(humbert_multiplicity(&psi, 1, 0, 1, 20).is_err());
    }

    #[test]
    fn precision_is_checked() {
        let psi = JacobiSeries::from_terms(0, 2 * 587, 24 * 100, [(-24i64, 0i64, 1i64)]);
        assert!(matches!(singular_support(&psi, 587, 1), Err(Error::InsufficientPrecision { .. })));
        assert!(matches!(singular_support(&psi, 586, 1), Err(Error::IndexMismatch { .. })));
    }

    #[test]
    fn export_honors_index_constraints() {
        let psi = toy(5, &[(-1, 0, 1), (0, 0, 4), (0, 1, 2), (0, -1, 2), (1, 3, 7)]);
        let f = product_exponents_export(&psi, 5, 1, 3, 1).unwrap();
        assert!(f.iter().all(|x| x.xi == 0 || x.xi == 5));
        assert!(f.iter().filter(|x| x.xi == 0).all(|x| x.n > 0 || (x.n == 0 && x.r < 0)));
        assert!(f.contains(&ProductFactor { n: 0, r: -1, xi: 0, exponent: BigInt::from(2) }));
        assert!(f.contains(&ProductFactor { n: 1, r: 0, xi: 0, exponent: BigInt::from(4) }));
        assert!(f.contains(&ProductFactor { n: -1, r: 0, xi: 5, exponent: BigInt::from(1) }));
        assert!(!f.iter().any(|x| x.n == 0 && x.r == 0 && x.xi == 0));
    }
}
