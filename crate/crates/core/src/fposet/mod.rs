//! Finite T₀ spaces as posets, the functors between posets and complexes,
//! non-Hausdorff mapping cylinders and beat point reductions.

mod cylinder;
mod functors;
mod map;
mod poset;
mod reduction;
mod winding;

pub use cylinder::{nh_cylinder, nh_cylinder_named, NhCylinder};
pub use functors::{face_map, face_poset, order_complex, order_map, FacePoset};
pub use map::MonotoneMap;
pub use poset::{FinitePoset, PointId, PosetError};
pub use reduction::{BeatKind, Contractibility};
pub use winding::{Winding, WindingError};
