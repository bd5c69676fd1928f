//! Named point sources and the table of holomorphic antisymmetric products.

use std::fmt;

use super::point::{point_587, InflationPoint};
use crate::diophantine::{family_point, FamilyId, FamilySpec, FAMILY_C};
use crate::error::Result;

/// Where an inflation point comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointSource {
    /// The level-587 configuration.
    Level587,
    /// `|Fam(α, β)|` with the family inflation vector.
    Family { id: FamilyId, alpha: i64, beta: i64 },
}

impl PointSource {
    pub fn family(id: FamilyId, alpha: i64, beta: i64) -> Self {
        PointSource::Family { id, alpha, beta }
    }

    pub fn point(&self) -> Result<InflationPoint> {
        match *self {
            PointSource::Level587 => Ok(point_587()),
            PointSource::Family { id, alpha, beta } => family_inflation_point(id, alpha, beta),
        }
    }
}

impl fmt::Display for PointSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSource::Level587 => write!(f, "587"),
            PointSource::Family { id, alpha, beta } => write!(f, "{id}({alpha},{beta})"),
        }
    }
}

/// The point `(c, |Fam(α, β)|)`; `TrivialPoint` for `α = β = 0`.
pub fn family_inflation_point(id: FamilyId, alpha: i64, beta: i64) -> Result<InflationPoint> {
    let d = family_point(&FamilySpec::of(id), alpha, beta).into_iter().map(i64::abs).collect();
    InflationPoint::new(FAMILY_C.to_vec(), d)
}

/// One row: weight, level, `m`, sign and the point sources producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub k: i64,
    pub level: i64,
    pub m: i64,
    pub eps: i32,
    pub sources: Vec<PointSource>,
    /// Printed parameter pairs that do not produce this row.
    pub misprints: Vec<PointSource>,
}

/// The fifteen published rows, in published order.
pub fn table1() -> Vec<TableRow> {
    use FamilyId::{Fam1, Fam2};
    let fam = PointSource::family;
    let row = |k, level, m, eps, sources: Vec<PointSource>| TableRow { k, level, m, eps, sources, misprints: vec![] };
    vec![
        row(2, 587, 1, -1, vec![PointSource::Level587]),
        row(2, 713, 1, -1, vec![fam(Fam1, 1, 4), fam(Fam1, -5, 3)]),
        row(2, 893, 1, -1, vec![fam(Fam1, 5, 3)]),
        row(3, 122, 1, 1, vec![fam(Fam1, 2, 1)]),
        row(3, 167, 1, 1, vec![fam(Fam2, 1, 2)]),
        // Printed as Fam1(−2,1), which has level 98 and m = 2; the transposed
        // pair (1,−2) ~ (−1,2) has level 173.
        TableRow {
            misprints: vec![fam(Fam1, -2, 1)],
            ..row(3, 173, 1, 1, vec![fam(Fam1, -1, 2), fam(Fam2, 3, 1)])
        },
        row(3, 197, 1, 1, vec![fam(Fam1, 1, 2)]),
        row(3, 213, 1, 1, vec![fam(Fam1, 3, 1)]),
        row(3, 285, 1, 1, vec![fam(Fam1, -3, 2)]),
        row(5, 38, 3, 1, vec![fam(Fam2, 0, 1)]),
        row(5, 42, 4, 1, vec![fam(Fam1, 0, 1)]),
        row(5, 53, 3, 1, vec![fam(Fam1, -1, 1), fam(Fam2, 1, 1)]),
        row(5, 65, 3, 1, vec![fam(Fam1, 1, 1)]),
        row(8, 17, 15, -1, vec![fam(Fam1, 1, 0)]),
        row(9, 15, 10, 1, vec![fam(Fam2, 1, 0)]),
    ]
}
