//! Integer chain complexes, homology with coordinates, norms of chains and
//! chain maps, the subdivision operator and the cylinder retraction.

mod chain;
mod cycles;
mod homology;
mod lefschetz;
mod matrix;
mod rational;
mod retraction;
mod snf;
mod subdivision_op;

pub use chain::{Chain, ChainComplex, ChainMap, ChainMapNorms};
pub use cycles::{enumerate_cycles, homology_class_norm, ClassNorm, CycleBudgetExceeded};
pub use homology::{ClassCoords, Homology, HomologyError, HomologyGroup};
pub use lefschetz::{lefschetz, lefschetz_number, NotASelfMap};
pub use matrix::{IntMatrix, SparseMatrix};
pub use rational::solve_in_span;
pub use retraction::{CylinderRetraction, RetractionReport};
pub use snf::{smith_normal_form, SmithForm};
pub use subdivision_op::{relative_orientation, subdivision_operator};
