//! Finite simplicial complexes and finite T₀ spaces, with exact integer
//! homology and exhaustive certification of the fixed point property.
//!
//! [`scomplex`] and [`fposet`] hold the two kinds of space and the functors
//! between them. [`zhomology`] computes homology over ℤ together with the
//! ℓ¹ norms of chains and chain maps. [`fixtest`] searches for symmetries and
//! for maps without fixed simplices or points. [`assembly`] builds the large
//! examples on top of all of it.

pub mod assembly;
pub mod fixtest;
pub mod fposet;
pub mod io;
pub mod scomplex;
pub mod zhomology;

pub use fixtest::{Certificate, CertificateKind, SearchBudget, Verdict, Witness};
pub use fposet::{FinitePoset, MonotoneMap, PosetError};
pub use scomplex::{ComplexError, Orientation, Simplex, SimplicialComplex, SimplicialMap};
pub use zhomology::{Chain, ChainComplex, ChainMap, Homology, HomologyGroup, IntMatrix, SparseMatrix};
