//! Exact polyhedral geometry: cones, fans, piecewise-linear conical sets, Newton polyhedra.

mod cone;
mod fan;
mod newton;
mod plset;

pub use cone::Cone;
pub use fan::Fan;
pub use newton::{NewtonPolyhedron, PolyFace};
pub use plset::{covered, PlSet};
