//! Geometry of unit-sphere packings.
//!
//! Lattices and their fundamental parallelepipeds, Voronoi cells of lattice
//! and finite sphere configurations, Brillouin zones, regular-solid metrics of
//! the dodecahedral and icosahedral kissing arrangements, and a Monte-Carlo
//! oracle that checks every constructed volume without touching the polyhedron
//! kernel.
//!
//! Units: spheres have radius 1, so touching centers are at distance 2.

pub mod error;
pub mod geom3;
pub mod lattice;
pub mod oracle;
pub mod solids;
pub mod voronoi;

pub use error::{Error, Result};
pub use geom3::{ConvexPolyhedron, Halfspace, Vector3};
pub use lattice::{Lattice, TessellationTetrahedron, TetrahedronKind};
