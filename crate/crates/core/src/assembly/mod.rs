//! The headline constructions: the Kun space, the complex `L` with the
//! fixed simplex property in the homotopy type of `K`, and the finite space
//! `X = X(L) ∪ B_h` with the fixed point property.

mod kun;
mod main_thm;
mod plan;
mod realization;
mod thm4;

pub use kun::{build_kun, circle8, crown4, standard_weights, verify_kun, Kun, KunCheck, KunError, KunPoints, KunReport};
pub use main_thm::{assemble_main, AssembledSpace, KunBlock, MainError};
pub use plan::{
    check_containment, least_depth, mesh_criterion, plan_depths, subdivided_f_vector, Containment, CylinderForecast,
    DepthMode, DepthPlan, DepthRequirement, Forecast, PlanError, Target,
};
pub use realization::{validate_realizations, BasisCheck, DatumCheck, Realization, RealizationError, RealizationReport};
pub use thm4::{
    assemble, AssembledComplex, AssemblyCheck, AssemblyError, ChainEvidence, PartLog, Subobject, MATERIALIZATION_LIMIT,
};
