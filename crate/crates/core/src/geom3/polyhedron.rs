use std::collections::HashMap;

use super::{tolerance, Halfspace, Vector3};
use crate::error::{Error, Result};

/// A bounded convex polyhedron given by vertices and faces.
///
/// Faces are vertex-index cycles ordered counter-clockwise as seen from
/// outside, each starting at its smallest index. Vertices are stored in
/// lexicographic order and faces are sorted, so two constructions of the same
/// solid produce identical index structure.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolyhedron {
    vertices: Vec<Vector3>,
    faces: Vec<Vec<usize>>,
}

impl ConvexPolyhedron {
    /// Builds a polyhedron from raw parts, orienting faces outward, putting
    /// the index structure into canonical form and checking every invariant.
    pub fn from_parts(vertices: Vec<Vector3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if vertices.len() < 4 || faces.len() < 4 {
            return Err(Error::InvalidPolyhedron(format!(
                "{} vertices and {} faces cannot bound a solid",
                vertices.len(),
                faces.len()
            )));
        }
        for f in &faces {
            if f.len() < 3 || f.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidPolyhedron(format!("malformed face {f:?}")));
            }
        }

        let n = vertices.len() as f64;
        let center = vertices.iter().copied().sum::<Vector3>() / n;
        let mut faces = faces;
        for f in faces.iter_mut() {
            let pts: Vec<Vector3> = f.iter().map(|&i| vertices[i]).collect();
            let normal = newell_normal(&pts);
            let centroid = pts.iter().copied().sum::<Vector3>() / pts.len() as f64;
            if normal.dot(centroid - center) < 0.0 {
                f.reverse();
            }
        }

        // Lexicographic vertex order, dropping unreferenced vertices.
        let mut used = vec![false; vertices.len()];
        for f in &faces {
            for &i in f {
                used[i] = true;
            }
        }
        let mut order: Vec<usize> = (0..vertices.len()).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| vertices[a].lex_cmp(&vertices[b]));
        let mut remap = vec![usize::MAX; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let vertices: Vec<Vector3> = order.iter().map(|&i| vertices[i]).collect();
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|f| {
                let mut f: Vec<usize> = f.into_iter().map(|i| remap[i]).collect();
                let start = (0..f.len()).min_by_key(|&k| f[k]).unwrap_or(0);
                f.rotate_left(start);
                f
            })
            .collect();
        faces.sort();

        let poly = Self { vertices, faces };
        poly.validate()?;
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Vector3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Undirected edges as `(low, high)` index pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .directed_edges()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn face_points(&self, face: usize) -> Vec<Vector3> {
        self.faces[face].iter().map(|&i| self.vertices[i]).collect()
    }

    /// Outward unit normal of a face.
    pub fn face_normal(&self, face: usize) -> Vector3 {
        newell_normal(&self.face_points(face))
            .normalized()
            .unwrap_or(Vector3::ZERO)
    }

    /// Supporting halfspace of a face (the polyhedron lies on its inner side).
    pub fn face_halfspace(&self, face: usize) -> Halfspace {
        let pts = self.face_points(face);
        let normal = self.face_normal(face);
        let centroid = pts.iter().copied().sum::<Vector3>() / pts.len() as f64;
        Halfspace::from_unit(normal, normal.dot(centroid))
    }

    pub fn supporting_halfspaces(&self) -> Vec<Halfspace> {
        (0..self.faces.len())
            .map(|f| self.face_halfspace(f))
            .collect()
    }

    pub fn face_area(&self, face: usize) -> f64 {
        newell_normal(&self.face_points(face)).norm() / 2.0
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    pub fn vertex_centroid(&self) -> Vector3 {
        self.vertices.iter().copied().sum::<Vector3>() / self.vertices.len() as f64
    }

    /// Volume by the divergence theorem, fanning each face from its first
    /// vertex and measuring against the vertex centroid.
    pub fn volume(&self) -> f64 {
        let c = self.vertex_centroid();
        let mut six_v = 0.0;
        for f in &self.faces {
            let p0 = self.vertices[f[0]] - c;
            for k in 1..f.len() - 1 {
                let p1 = self.vertices[f[k]] - c;
                let p2 = self.vertices[f[k + 1]] - c;
                six_v += p0.dot(p1.cross(p2));
            }
        }
        six_v / 6.0
    }

    /// Largest absolute coordinate over all vertices.
    pub fn extent(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.max_abs())
            .fold(0.0, f64::max)
    }

    /// Whether `p` satisfies every face halfspace within `tol`.
    pub fn contains(&self, p: Vector3, tol: f64) -> bool {
        self.supporting_halfspaces()
            .iter()
            .all(|h| h.slack(p) >= -tol)
    }

    /// Checks Euler characteristic, edge manifoldness, face planarity and
    /// convexity.
    pub fn validate(&self) -> Result<()> {
        let tol = tolerance(self.extent());
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (a, b) in self.directed_edges() {
            if a == b {
                return Err(Error::InvalidPolyhedron("repeated vertex in face".into()));
            }
            *directed.entry((a, b)).or_default() += 1;
        }
        for (&(a, b), &count) in &directed {
            if count != 1 || directed.get(&(b, a)) != Some(&1) {
                return Err(Error::InvalidPolyhedron(format!(
                    "edge ({a}, {b}) is not shared by exactly two consistently oriented faces"
                )));
            }
        }
        let chi = self.euler_characteristic();
        if chi != 2 {
            return Err(Error::InvalidPolyhedron(format!(
                "Euler characteristic {chi} != 2"
            )));
        }
        let planes = self.supporting_halfspaces();
        for (f, h) in planes.iter().enumerate() {
            if h.normal().norm() == 0.0 {
                return Err(Error::InvalidPolyhedron(format!("face {f} has zero area")));
            }
            let off_plane = self.faces[f]
                .iter()
                .map(|&i| h.slack(self.vertices[i]).abs())
                .fold(0.0, f64::max);
            if off_plane > tol {
                return Err(Error::InvalidPolyhedron(format!(
                    "face {f} is not planar (deviation {off_plane:e})"
                )));
            }
            if let Some(v) = self.vertices.iter().position(|&v| h.slack(v) < -tol) {
                return Err(Error::InvalidPolyhedron(format!(
                    "vertex {v} lies outside face {f}"
                )));
            }
        }
        if self.volume() <= 0.0 {
            return Err(Error::InvalidPolyhedron("non-positive volume".into()));
        }
        Ok(())
    }

    fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.faces
            .iter()
            .flat_map(|f| (0..f.len()).map(move |k| (f[k], f[(k + 1) % f.len()])))
    }
}

/// Volume of a polyhedron; see [`ConvexPolyhedron::volume`].
pub fn polyhedron_volume(p: &ConvexPolyhedron) -> f64 {
    p.volume()
}

/// Newell's area-weighted normal; its length is twice the polygon area.
pub(crate) fn newell_normal(pts: &[Vector3]) -> Vector3 {
    let n = pts.len();
    let mut acc = Vector3::ZERO;
    let o = pts[0];
    for k in 1..n.saturating_sub(1) {
        acc += (pts[k] - o).cross(pts[k + 1] - o);
    }
    acc
}
