//! Voronoi cells of finite configurations and of lattices, Brillouin zones,
//! and facet classification.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::geom3::{halfspace_intersection, tolerance, ConvexPolyhedron, Halfspace, Vector3, EPS};
use crate::lattice::{reciprocal_lattice, shortest_vector_norm, Lattice};

/// Volume agreement that counts as "unchanged" between two shells.
const STABLE_VOLUME: f64 = 1e-12;

/// Voronoi cell of `center` against `others` in a unit-sphere packing.
///
/// Each neighbour contributes its perpendicular-bisector halfspace
/// `(x_j - c) · (p - c) <= |x_j - c|² / 2`. Every neighbour must be at least 2
/// away from the center.
pub fn voronoi_cell(center: Vector3, others: &[Vector3]) -> Result<ConvexPolyhedron> {
    if let Some(closest) = others
        .iter()
        .map(|x| x.distance(center))
        .min_by(f64::total_cmp)
    {
        if closest < 2.0 - EPS {
            return Err(Error::OverlappingSpheres(closest));
        }
    }
    bisector_cell(center, others)
}

/// Like [`voronoi_cell`] without the packing check; neighbours only need to
/// be distinct from the center.
pub fn bisector_cell(center: Vector3, others: &[Vector3]) -> Result<ConvexPolyhedron> {
    if others.is_empty() {
        return Err(Error::Unbounded);
    }
    let constraints = others
        .iter()
        .map(|&x| {
            let d = x - center;
            if d.norm() <= EPS {
                return Err(Error::DegenerateInput("neighbour coincides with center"));
            }
            Halfspace::new(d, d.dot(center) + d.norm_squared() / 2.0)
        })
        .collect::<Result<Vec<_>>>()?;
    halfspace_intersection(&constraints, center)
}

/// Voronoi cell of the origin in a packing lattice.
pub fn voronoi_cell_lattice(lattice: &Lattice) -> Result<ConvexPolyhedron> {
    let shortest = shortest_vector_norm(lattice);
    if shortest < 2.0 - EPS {
        return Err(Error::OverlappingSpheres(shortest));
    }
    lattice_cell(lattice)
}

/// Voronoi (Wigner-Seitz) cell of the origin in any lattice.
///
/// Lattice points are taken from growing coefficient boxes `[-k, k]³` until
/// one further box leaves the volume unchanged. The result is then certified:
/// no lattice vector longer than twice the circumradius can cut the cell, so
/// once the box holds all vectors that short the cell is exact.
pub fn lattice_cell(lattice: &Lattice) -> Result<ConvexPolyhedron> {
    let mut k = 1;
    let mut cell = bisector_cell(Vector3::ZERO, &lattice.box_points(k))?;
    loop {
        k += 1;
        let next = shell_cell(lattice, k, &cell)?;
        if (next.volume() - cell.volume()).abs() > STABLE_VOLUME {
            cell = next;
            continue;
        }
        let reach = 2.0 * circumradius(&next, Vector3::ZERO);
        let bound = lattice.coefficient_bound(reach);
        if bound <= k {
            return Ok(next);
        }
        let certified = shell_cell(lattice, bound, &next)?;
        if (certified.volume() - next.volume()).abs() <= STABLE_VOLUME {
            return Ok(certified);
        }
        cell = certified;
        k = bound;
    }
}

/// Cell from the box `[-k, k]³`, skipping points too far to cut `previous`.
fn shell_cell(lattice: &Lattice, k: i64, previous: &ConvexPolyhedron) -> Result<ConvexPolyhedron> {
    let reach = 2.0 * circumradius(previous, Vector3::ZERO);
    let reach = reach + tolerance(reach);
    let near: Vec<Vector3> = lattice
        .box_points(k)
        .into_iter()
        .filter(|v| v.norm() <= reach)
        .collect();
    bisector_cell(Vector3::ZERO, &near)
}

/// Cell volume using all lattice points of the boxes `[-k, k]³`,
/// `k = 1..=shells`, unfiltered.
pub fn shell_volumes(lattice: &Lattice, shells: i64) -> Result<Vec<f64>> {
    (1..=shells)
        .map(|k| bisector_cell(Vector3::ZERO, &lattice.box_points(k)).map(|c| c.volume()))
        .collect()
}

/// Voronoi cell of the origin in the reciprocal lattice.
pub fn brillouin_zone(lattice: &Lattice) -> Result<ConvexPolyhedron> {
    lattice_cell(&reciprocal_lattice(lattice))
}

fn circumradius(cell: &ConvexPolyhedron, center: Vector3) -> f64 {
    cell.vertices()
        .iter()
        .map(|v| v.distance(center))
        .fold(0.0, f64::max)
}

/// Shape class of a cell facet. Squares count as rhombi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetClass {
    Rhombus,
    RegularPentagon,
    OtherQuad,
    Other,
}

impl FacetClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            FacetClass::Rhombus => "rhombus",
            FacetClass::RegularPentagon => "regular-pentagon",
            FacetClass::OtherQuad => "other-quad",
            FacetClass::Other => "other",
        }
    }
}

impl fmt::Display for FacetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellReport {
    pub cell: ConvexPolyhedron,
    pub volume: f64,
    /// Smallest distance from the center to a facet plane.
    pub inradius: f64,
    /// Largest distance from the center to a vertex.
    pub circumradius: f64,
    pub facet_count: usize,
    pub facet_classes: BTreeMap<FacetClass, usize>,
    /// Number of facets by vertex count.
    pub facet_sizes: BTreeMap<usize, usize>,
}

impl CellReport {
    pub fn count(&self, class: FacetClass) -> usize {
        self.facet_classes.get(&class).copied().unwrap_or(0)
    }
}

/// Measures a cell around `center` and classifies each facet.
pub fn classify_facets(cell: &ConvexPolyhedron, center: Vector3) -> Result<CellReport> {
    let tol = tolerance(cell.extent());
    let planes = cell.supporting_halfspaces();
    let inradius = planes
        .iter()
        .map(|h| h.slack(center))
        .fold(f64::INFINITY, f64::min);
    if inradius <= tol {
        return Err(Error::CenterOutside);
    }

    let mut facet_classes = BTreeMap::new();
    let mut facet_sizes = BTreeMap::new();
    for f in 0..cell.face_count() {
        let pts = cell.face_points(f);
        *facet_classes.entry(facet_class(&pts)).or_insert(0) += 1;
        *facet_sizes.entry(pts.len()).or_insert(0) += 1;
    }
    Ok(CellReport {
        cell: cell.clone(),
        volume: cell.volume(),
        inradius,
        circumradius: circumradius(cell, center),
        facet_count: cell.face_count(),
        facet_classes,
        facet_sizes,
    })
}

fn facet_class(pts: &[Vector3]) -> FacetClass {
    let n = pts.len();
    let edges: Vec<f64> = (0..n).map(|k| pts[k].distance(pts[(k + 1) % n])).collect();
    let spread = |xs: &[f64]| {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    match n {
        4 if spread(&edges) <= EPS => FacetClass::Rhombus,
        4 => FacetClass::OtherQuad,
        5 => {
            let angles: Vec<f64> = (0..n)
                .map(|k| {
                    let u = pts[(k + n - 1) % n] - pts[k];
                    let w = pts[(k + 1) % n] - pts[k];
                    (u.dot(w) / (u.norm() * w.norm())).clamp(-1.0, 1.0).acos()
                })
                .collect();
            if spread(&edges) <= EPS && spread(&angles) <= EPS {
                FacetClass::RegularPentagon
            } else {
                FacetClass::Other
            }
        }
        _ => FacetClass::Other,
    }
}
