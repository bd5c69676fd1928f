//! Enumeration of integral points of `A_c` in a box, up to sign changes and
//! permutations fixing `c`.
//!
//! Entries are grouped into blocks of equal `c_j`; each block ranges over
//! nondecreasing tuples. The `z²` relation `Σ (c_j² − 2) d_j² = 0` splits into
//! a contribution of the largest block and one of the rest, so the largest
//! block is looked up in a table keyed by its contribution. Survivors are
//! filtered by parity, the `z⁴` and `z⁶` relations, and finally the exact
//! Laurent identity.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::br24::br24_check;
use super::check_inflation;
use super::forms::{ac_power_sum_form, PowerSum};
use crate::error::{Error, Result};

/// Power sums `Σ d^{2i}`, `i = 1..=3`, of one block.
#[derive(Clone, Copy, Debug, Default)]
struct Sums {
    p: [i128; 3],
}

struct Block {
    c: i64,
    positions: Vec<usize>,
    tuples: Vec<(Vec<i64>, Sums)>,
}

impl Block {
    fn key(&self, s: &Sums) -> i128 {
        (self.c as i128 * self.c as i128 - 2) * s.p[0]
    }
}

fn nondecreasing(len: usize, bound: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, lo: i64, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=bound {
            cur.push(v);
            go(len, v, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, bound, &mut Vec::with_capacity(len), &mut out);
    out
}

fn sums_of(t: &[i64]) -> Sums {
    let mut s = Sums::default();
    for &x in t {
        let x2 = (x as i128) * (x as i128);
        s.p[0] += x2;
        s.p[1] += x2 * x2;
        s.p[2] += x2 * x2 * x2;
    }
    s
}

/// A power-sum form with integer coefficients, evaluated in checked `i128`.
struct IntegerForm {
    terms: Vec<(i128, Vec<(PowerSum, u32)>)>,
    exact: super::forms::PowerSumForm,
}

impl IntegerForm {
    fn new(n: u32) -> Result<Self> {
        let f = ac_power_sum_form(n)?;
        let mut den = BigInt::from(1);
        for (_, q) in f.terms() {
            den = num_integer::Integer::lcm(&den, q.denom());
        }
        let scale = BigRational::from_integer(den);
        let mut terms = Vec::new();
        for (m, q) in f.terms() {
            let v = (q * &scale).to_integer();
            let v = v
                .to_i128()
                .ok_or_else(|| Error::InvalidArgument("form coefficient exceeds 128 bits".into()))?;
            terms.push((v, m.to_vec()));
        }
        Ok(Self { terms, exact: f })
    }

    fn value(s: PowerSum, w: &[i128; 3], p: &[i128; 3]) -> i128 {
        match s {
            PowerSum::W(i) => w[i as usize - 1],
            PowerSum::P(i) => p[i as usize - 1],
        }
    }

    fn eval_i128(&self, w: &[i128; 3], p: &[i128; 3]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (c, m) in &self.terms {
            let mut prod = *c;
            for &(s, e) in m {
                for _ in 0..e {
                    prod = prod.checked_mul(Self::value(s, w, p))?;
                }
            }
            acc = acc.checked_add(prod)?;
        }
        Some(acc)
    }

    fn vanishes(&self, w: &[i128; 3], p: &[i128; 3]) -> bool {
        match self.eval_i128(w, p) {
            Some(v) => v == 0,
            None => self
                .exact
                .eval_with(|s| BigInt::from(Self::value(s, w, p)))
                .is_zero(),
        }
    }
}

/// All nonzero `d ∈ [0, bound]²⁴` satisfying the Laurent identity, one per
/// orbit: within each block of equal `c_j` the entries are nondecreasing in
/// index order. Sorted lexicographically.
pub fn search_points(c: &[i64], bound: i64) -> Result<Vec<Vec<i64>>> {
    check_inflation(c)?;
    if bound < 0 {
        return Err(Error::InvalidArgument(format!("bound must be nonnegative, got {bound}")));
    }
    if bound > 64 {
        return Err(Error::InvalidArgument(format!("bound {bound} is beyond the supported range")));
    }
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (j, &cj) in c.iter().enumerate() {
        groups.entry(cj).or_default().push(j);
    }
    let mut blocks: Vec<Block> = groups
        .into_iter()
        .map(|(cv, positions)| {
            let tuples = nondecreasing(positions.len(), bound)
                .into_iter()
                .map(|t| {
                    let s = sums_of(&t);
                    (t, s)
                })
                .collect();
            Block { c: cv, positions, tuples }
        })
        .collect();
    let largest = (0..blocks.len()).max_by_key(|&i| (blocks[i].positions.len(), -blocks[i].c)).unwrap();
    let lookup = blocks.remove(largest);
    let mut table: HashMap<i128, Vec<usize>> = HashMap::new();
    for (i, (_, s)) in lookup.tuples.iter().enumerate() {
        table.entry(lookup.key(s)).or_default().push(i);
    }

    // Cartesian product of the remaining blocks: choice indices per block.
    let mut outer: Vec<Vec<usize>> = vec![Vec::new()];
    for b in &blocks {
        outer = outer
            .into_iter()
            .flat_map(|prefix| {
                (0..b.tuples.len()).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }

    let z4 = IntegerForm::new(2)?;
    let z6 = IntegerForm::new(3)?;
    let weights = |cv: i64| -> [i128; 3] {
        let c2 = (cv as i128) * (cv as i128);
        [1 - c2, 1 - c2 * c2, 1 - c2 * c2 * c2]
    };

    let mut found: Vec<Vec<i64>> = outer
        .par_iter()
        .flat_map_iter(|choice| {
            let mut w = [0i128; 3];
            let mut p = [0i128; 3];
            let mut key = 0i128;
            for (b, &i) in blocks.iter().zip(choice) {
                let s = &b.tuples[i].1;
                let wt = weights(b.c);
                for t in 0..3 {
                    p[t] += s.p[t];
                    w[t] += wt[t] * s.p[t];
                }
                key += b.key(s);
            }
            let mut hits = Vec::new();
            let Some(cands) = table.get(&-key) else { return hits.into_iter() };
            let lw = weights(lookup.c);
            for &li in cands {
                let (tuple, s) = &lookup.tuples[li];
                let mut pt = p;
                let mut wt = w;
                for t in 0..3 {
                    pt[t] += s.p[t];
                    wt[t] += lw[t] * s.p[t];
                }
                if pt[0] == 0 || pt[0] % 2 != 0 {
                    continue;
                }
                if !z4.vanishes(&wt, &pt) || !z6.vanishes(&wt, &pt) {
                    continue;
                }
                let mut d = vec![0i64; c.len()];
                for (b, &i) in blocks.iter().zip(choice) {
                    for (&pos, &v) in b.positions.iter().zip(&b.tuples[i].0) {
                        d[pos] = v;
                    }
                }
                for (&pos, &v) in lookup.positions.iter().zip(tuple) {
                    d[pos] = v;
                }
                if br24_check(c, &d).unwrap_or(false) {
                    hits.push(d);
                }
            }
            hits.into_iter()
        })
        .collect();
    found.sort();
    Ok(found)
}

/// The orbit representative [`search_points`] would report for `d`.
pub fn canonical_form(c: &[i64], d: &[i64]) -> Result<Vec<i64>> {
    check_inflation(c)?;
    super::check_len(d)?;
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (j, &cj) in c.iter().enumerate() {
        groups.entry(cj).or_default().push(j);
    }
    let mut out = vec![0i64; d.len()];
    for positions in groups.values() {
        let mut vals: Vec<i64> = positions.iter().map(|&j| d[j].abs()).collect();
        vals.sort_unstable();
        for (&j, v) in positions.iter().zip(vals) {
            out[j] = v;
        }
    }
    Ok(out)
}
