//! Borcherds products from inflation points: building `ψ`, reading off the
//! product data, deciding holomorphy and expanding the first Fourier-Jacobi
//! coefficients.

mod fj;
mod point;
mod product;
mod psi;
mod table;

pub use fj::{fj_expansion, fj_from_psi, MAX_XI_ORDERS};
pub use point::{point_587, InflationPoint, BASE_587, ENTRIES, INFLATED_587, INFLATION_PRODUCT};
pub use product::{
    analyze, borch_invariants, character_exists, holomorphy_check, humbert_classes, humbert_multiplicity,
    pole_order, product_exponents_export, reduced_coeff, singular_support, BorcherdsData, HolomorphyReport,
    HumbertClass, ProductFactor, ProductInvariants, SingularTerm, Verdict,
};
pub use psi::{build_psi, construct_psi, PsiConstruction};
pub use table::{family_inflation_point, table1, PointSource, TableRow};
