//! Finite abstract simplicial complexes.
//!
//! Vertices are opaque strings kept in lexicographic order; internally every
//! simplex is a sorted list of vertex indices into that order, so all set
//! operations and enumerations are deterministic.

mod carrier;
mod complex;
mod cylinder;
mod map;
mod pseudomanifold;
mod simplex;
mod subdivision;

pub use carrier::{carrier_hull, CarrierError, CarrierHull};
pub use complex::{ComplexError, SimplicialComplex};
pub use cylinder::{mapping_cylinder, mapping_cylinder_named, CylinderNaming, MappingCylinder};
pub use map::SimplicialMap;
pub use pseudomanifold::{Orientation, PseudomanifoldReport};
pub use simplex::Simplex;
pub(crate) use simplex::sort_sign;
pub use subdivision::{barycenter_name, mesh_bound, Barycentric, StellarSubdivision};

/// Index of a vertex in a complex's canonical vertex order.
pub type VertexId = u32;
