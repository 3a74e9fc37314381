//! Vectors, halfspaces and bounded convex polyhedra in 3-space.
//!
//! Predicates (coplanarity, vertex identity, redundancy) use [`EPS`], scaled
//! by the extent of the input when that exceeds 1. Purely algebraic
//! identities are held to [`ALGEBRAIC_EPS`].

mod dedup;
mod halfspace;
mod hull;
mod polyhedron;
mod solid_angle;
mod vector;

pub use halfspace::{halfspace_intersection, Halfspace};
pub use hull::convex_hull;
pub use polyhedron::{polyhedron_volume, ConvexPolyhedron};
pub use solid_angle::triangle_solid_angle;
pub use vector::{determinant3, Vector3};

pub(crate) use dedup::PointSet;

/// Geometric predicate tolerance.
pub const EPS: f64 = 1e-9;

/// Tolerance for algebraic identities (round trips, cached values).
pub const ALGEBRAIC_EPS: f64 = 1e-12;

/// Predicate tolerance for data whose coordinates reach `scale`.
#[inline]
pub(crate) fn tolerance(scale: f64) -> f64 {
    EPS * scale.max(1.0)
}
