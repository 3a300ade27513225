//! Exhaustive certification: automorphism groups, asymmetric subdivisions,
//! and the fixed simplex and fixed point properties.

mod asymmetric;
mod automorphism;
mod budget;
mod decomposition;
mod fpp;
mod fsp;
mod lift;

pub use asymmetric::{
    asymmetrize, certify, check_degree_formula, grow_asymmetric, is_asymmetric, AsymmetrizeError, Asymmetrized, AsymmetryCertificate,
    AsymmetryReport, DegreeFormulaReport,
};
pub use automorphism::{
    complex_automorphisms, named_permutation, poset_automorphisms, AutomorphismBudgetExceeded, AutomorphismGroup,
};
pub use budget::{Certificate, CertificateKind, SearchBudget, SearchStats, Verdict, Witness};
pub use decomposition::{classify_self_map, fsp_decomposition, SelfMapCase};
pub use fpp::fpp_check;
pub use fsp::{fsp_check, has_fixed_simplex};
pub use lift::{check_lift_exhaustive, lift_fixed_point, LiftError, LiftReport, LiftTrace};
