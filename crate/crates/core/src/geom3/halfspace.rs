use super::{convex_hull, tolerance, ConvexPolyhedron, PointSet, Vector3, EPS};
use crate::error::{Error, Result};

/// The closed halfspace `{ p : normal · p <= offset }` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfspace {
    normal: Vector3,
    offset: f64,
}

impl Halfspace {
    /// Normalizes `normal` and rescales `offset` to match.
    pub fn new(normal: Vector3, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::NonFinite);
        }
        let len = normal.norm();
        let unit = normal
            .normalized()
            .ok_or(Error::DegenerateInput("halfspace normal is zero"))?;
        Ok(Self {
            normal: unit,
            offset: offset / len,
        })
    }

    pub(crate) fn from_unit(normal: Vector3, offset: f64) -> Self {
        Self { normal, offset }
    }

    pub fn normal(&self) -> Vector3 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `offset - normal · p`; non-negative inside.
    #[inline]
    pub fn slack(&self, p: Vector3) -> f64 {
        self.offset - self.normal.dot(p)
    }

    pub fn contains(&self, p: Vector3, tol: f64) -> bool {
        self.slack(p) >= -tol
    }
}

/// Intersection of halfspaces around a strictly interior point.
///
/// Works in the polar dual: after moving `interior` to the origin each
/// constraint `n · q <= s` (with `s > 0`) becomes the point `n / s`. Facets of
/// the hull of those points are the vertices of the intersection, and hull
/// vertices are its facets. Constraints whose dual point is not a hull corner
/// are redundant and contribute no facet.
pub fn halfspace_intersection(
    constraints: &[Halfspace],
    interior: Vector3,
) -> Result<ConvexPolyhedron> {
    let mut dual = Vec::with_capacity(constraints.len());
    for (index, h) in constraints.iter().enumerate() {
        let slack = h.slack(interior);
        if slack <= EPS {
            return Err(Error::InfeasibleInterior { index, slack });
        }
        dual.push(h.normal / slack);
    }
    if dual.len() < 4 {
        return Err(Error::Unbounded);
    }

    let hull = match convex_hull(&dual) {
        Ok(h) => h,
        Err(Error::DegenerateInput(_)) => return Err(Error::Unbounded),
        Err(e) => return Err(e),
    };
    let dual_tol = tolerance(hull.extent());

    // Map hull corners back to the constraint that produced them.
    let mut lookup = PointSet::new(dual_tol);
    for &y in &dual {
        lookup.insert(y);
    }
    let first_of: Vec<usize> = {
        let mut first = vec![usize::MAX; lookup.points().len()];
        for (k, &y) in dual.iter().enumerate() {
            let slot = lookup.find(y).expect("inserted above");
            if first[slot] == usize::MAX {
                first[slot] = k;
            }
        }
        first
    };

    // One primal vertex per dual facet.
    let mut corners = Vec::with_capacity(hull.face_count());
    for f in 0..hull.face_count() {
        let plane = hull.face_halfspace(f);
        if plane.offset() <= dual_tol {
            return Err(Error::Unbounded);
        }
        corners.push(plane.normal() / plane.offset() + interior);
    }
    let scale = corners.iter().map(|c| c.max_abs()).fold(0.0, f64::max);
    let mut vertex_set = PointSet::new(tolerance(scale));
    let corner_ids: Vec<usize> = corners.iter().map(|&c| vertex_set.insert(c)).collect();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); hull.vertex_count()];
    for (f, face) in hull.faces().iter().enumerate() {
        for &v in face {
            incident[v].push(f);
        }
    }

    let vertices = vertex_set.into_points();
    let mut faces = Vec::with_capacity(hull.vertex_count());
    for (v, dual_faces) in incident.iter().enumerate() {
        let slot = lookup
            .find(hull.vertices()[v])
            .expect("hull vertex is an input point");
        let normal = constraints[first_of[slot]].normal;
        let mut ids: Vec<usize> = dual_faces.iter().map(|&f| corner_ids[f]).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() < 3 {
            continue;
        }
        let center = ids.iter().map(|&i| vertices[i]).sum::<Vector3>() / ids.len() as f64;
        let (u, w) = plane_basis(normal);
        let angle = |i: usize| {
            let d = vertices[i] - center;
            d.dot(w).atan2(d.dot(u))
        };
        ids.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
        faces.push(ids);
    }
    ConvexPolyhedron::from_parts(vertices, faces)
}

/// Orthonormal `(u, w)` with `u × w = n` for unit `n`.
fn plane_basis(n: Vector3) -> (Vector3, Vector3) {
    let helper = if n.x.abs() < 0.9 {
        Vector3::E1
    } else {
        Vector3::E2
    };
    let u = helper
        .cross(n)
        .normalized()
        .expect("helper is not parallel to n");
    (u, n.cross(u))
}
