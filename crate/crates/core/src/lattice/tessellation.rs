//! Decomposition of a fundamental parallelepiped into six tetrahedra.
//!
//! Every parallelepiped is an affine image of the unit cube, so its
//! triangulations by corner points are those of the cube. The cube's
//! six-tetrahedron triangulations are enumerated once, exactly, in integer
//! coordinates; for a given lattice the one with the shortest edges is chosen
//! (edge lengths sorted in decreasing order, compared lexicographically) and
//! each piece is then classified by its edge-length pattern.

use std::sync::OnceLock;

use super::{parallelepiped_corners, Lattice, UNIT_BALL_VOLUME};
use crate::error::{Error, Result};
use crate::geom3::{determinant3, triangle_solid_angle, Vector3, EPS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TetrahedronKind {
    /// All six edges equal.
    Regular,
    /// Congruent to the quarter of an edge-2 regular octahedron: five edges
    /// of length 2 and one of length 2√2.
    Octahedral,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TessellationTetrahedron {
    vertices: [Vector3; 4],
    kind: TetrahedronKind,
}

impl TessellationTetrahedron {
    /// Classifies the tetrahedron; fails if it has no volume.
    pub fn new(vertices: [Vector3; 4]) -> Result<Self> {
        let [v0, v1, v2, v3] = vertices;
        let scale = vertices.iter().map(|v| v.max_abs()).fold(1.0, f64::max);
        if determinant3(v1 - v0, v2 - v0, v3 - v0).abs() / 6.0 <= EPS * scale.powi(3) {
            return Err(Error::DegenerateInput("flat tetrahedron"));
        }
        let mut t = Self {
            vertices,
            kind: TetrahedronKind::Other,
        };
        t.kind = classify(&t.sorted_edge_lengths());
        Ok(t)
    }

    pub fn vertices(&self) -> [Vector3; 4] {
        self.vertices
    }

    pub fn kind(&self) -> TetrahedronKind {
        self.kind
    }

    pub fn volume(&self) -> f64 {
        let [v0, v1, v2, v3] = self.vertices;
        determinant3(v1 - v0, v2 - v0, v3 - v0).abs() / 6.0
    }

    /// The six edge lengths in increasing order.
    pub fn sorted_edge_lengths(&self) -> [f64; 6] {
        let v = self.vertices;
        let mut e = [
            v[0].distance(v[1]),
            v[0].distance(v[2]),
            v[0].distance(v[3]),
            v[1].distance(v[2]),
            v[1].distance(v[3]),
            v[2].distance(v[3]),
        ];
        e.sort_by(f64::total_cmp);
        e
    }

    /// Distance from vertex `i` to the plane of the opposite face.
    pub fn height(&self, i: usize) -> f64 {
        let v = self.vertices;
        let (a, b, c) = (v[(i + 1) % 4], v[(i + 2) % 4], v[(i + 3) % 4]);
        let n = (b - a).cross(c - a);
        (v[i] - a).dot(n).abs() / n.norm()
    }

    /// Solid angle of the tetrahedron at vertex `i`.
    pub fn solid_angle(&self, i: usize) -> Result<f64> {
        let v = self.vertices;
        triangle_solid_angle(v[i], v[(i + 1) % 4], v[(i + 2) % 4], v[(i + 3) % 4])
    }

    /// Whether `p` lies in the closed tetrahedron (barycentric test).
    pub fn contains(&self, p: Vector3) -> bool {
        let [v0, v1, v2, v3] = self.vertices;
        let d = determinant3(v1 - v0, v2 - v0, v3 - v0);
        let l1 = determinant3(p - v0, v2 - v0, v3 - v0) / d;
        let l2 = determinant3(v1 - v0, p - v0, v3 - v0) / d;
        let l3 = determinant3(v1 - v0, v2 - v0, p - v0) / d;
        l1 >= 0.0 && l2 >= 0.0 && l3 >= 0.0 && l1 + l2 + l3 <= 1.0
    }
}

fn classify(edges: &[f64; 6]) -> TetrahedronKind {
    if edges[5] - edges[0] <= EPS {
        return TetrahedronKind::Regular;
    }
    let octahedral = [2.0, 2.0, 2.0, 2.0, 2.0, 2.0 * 2f64.sqrt()];
    if edges
        .iter()
        .zip(octahedral)
        .all(|(e, o)| (e - o).abs() <= EPS)
    {
        TetrahedronKind::Octahedral
    } else {
        TetrahedronKind::Other
    }
}

/// A tetrahedron on cube corners, each corner a 3-bit mask.
type CornerTet = [usize; 4];

fn corner(m: usize) -> [i64; 3] {
    [(m & 1) as i64, (m >> 1 & 1) as i64, (m >> 2 & 1) as i64]
}

fn sub(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Whether two corner tetrahedra have disjoint interiors: some face normal
/// or edge-pair cross product separates them (touching allowed).
fn interiors_disjoint(s: &CornerTet, t: &CornerTet) -> bool {
    let ps: Vec<[i64; 3]> = s.iter().map(|&m| corner(m)).collect();
    let pt: Vec<[i64; 3]> = t.iter().map(|&m| corner(m)).collect();
    let edges = |p: &[[i64; 3]]| -> Vec<[i64; 3]> {
        let mut e = Vec::with_capacity(6);
        for i in 0..4 {
            for j in i + 1..4 {
                e.push(sub(p[j], p[i]));
            }
        }
        e
    };
    let (es, et) = (edges(&ps), edges(&pt));
    let mut axes = Vec::new();
    for e in [&es, &et] {
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                axes.push(cross(e[i], e[j]));
            }
        }
    }
    for a in &es {
        for b in &et {
            axes.push(cross(*a, *b));
        }
    }
    axes.into_iter().filter(|a| *a != [0, 0, 0]).any(|axis| {
        let range = |p: &[[i64; 3]]| {
            let d: Vec<i64> = p.iter().map(|&q| dot(q, axis)).collect();
            (*d.iter().min().unwrap(), *d.iter().max().unwrap())
        };
        let ((smin, smax), (tmin, tmax)) = (range(&ps), range(&pt));
        smax <= tmin || tmax <= smin
    })
}

/// Every interior triangle is shared by exactly two tetrahedra and every
/// triangle on the cube surface belongs to one.
fn face_to_face(tri: &[CornerTet; 6]) -> bool {
    let mut count: std::collections::HashMap<[usize; 3], usize> = Default::default();
    for t in tri {
        for skip in 0..4 {
            let mut f = [0; 3];
            let mut k = 0;
            for (i, &m) in t.iter().enumerate() {
                if i != skip {
                    f[k] = m;
                    k += 1;
                }
            }
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &n)| {
        // On a cube facet iff some coordinate bit agrees across all corners.
        let on_surface = (0..3).any(|bit| {
            let b = f[0] >> bit & 1;
            f.iter().all(|&m| m >> bit & 1 == b)
        });
        n == if on_surface { 1 } else { 2 }
    })
}

/// All triangulations of the unit cube into six unit-volume (1/6) corner
/// tetrahedra, each listed as sorted tetrahedra in sorted order.
pub(crate) fn cube_triangulations() -> &'static [[CornerTet; 6]] {
    static CACHE: OnceLock<Vec<[CornerTet; 6]>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut tets = Vec::new();
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    for d in c + 1..8 {
                        let [p0, p1, p2, p3] = [a, b, c, d].map(corner);
                        let det = dot(sub(p1, p0), cross(sub(p2, p0), sub(p3, p0)));
                        if det.abs() == 1 {
                            tets.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let n = tets.len();
        let compatible: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i != j && interiors_disjoint(&tets[i], &tets[j]))
                    .collect()
            })
            .collect();

        let mut found = Vec::new();
        let mut chosen = Vec::with_capacity(6);
        extend(&tets, &compatible, 0, &mut chosen, &mut found);
        found
    })
}

fn extend(
    tets: &[CornerTet],
    compatible: &[Vec<bool>],
    from: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<[CornerTet; 6]>,
) {
    if chosen.len() == 6 {
        let tri: [CornerTet; 6] = std::array::from_fn(|k| tets[chosen[k]]);
        if face_to_face(&tri) {
            found.push(tri);
        }
        return;
    }
    for i in from..tets.len() {
        if chosen.iter().all(|&c| compatible[c][i]) {
            chosen.push(i);
            extend(tets, compatible, i + 1, chosen, found);
            chosen.pop();
        }
    }
}

/// Decomposes the fundamental parallelepiped into six tetrahedra of equal
/// volume `|det| / 6` using its shortest-edge corner triangulation.
pub fn tessellation_tetrahedra(lattice: &Lattice) -> Vec<TessellationTetrahedron> {
    let corners = parallelepiped_corners(lattice);
    let tol = EPS * corners.iter().map(|c| c.max_abs()).fold(1.0, f64::max);
    let edge_profile = |tri: &[CornerTet; 6]| -> Vec<f64> {
        let mut pairs: Vec<(usize, usize)> = tri
            .iter()
            .flat_map(|t| (0..4).flat_map(move |i| (i + 1..4).map(move |j| (t[i], t[j]))))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut lengths: Vec<f64> = pairs
            .iter()
            .map(|&(a, b)| corners[a].distance(corners[b]))
            .collect();
        lengths.sort_by(|a, b| b.total_cmp(a));
        lengths
    };
    let shorter = |a: &[f64], b: &[f64]| -> bool {
        for (x, y) in a.iter().zip(b) {
            if (x - y).abs() > tol {
                return x < y;
            }
        }
        a.len() < b.len()
    };

    let mut best: Option<(&[CornerTet; 6], Vec<f64>)> = None;
    for tri in cube_triangulations() {
        let profile = edge_profile(tri);
        if best.as_ref().is_none_or(|(_, p)| shorter(&profile, p)) {
            best = Some((tri, profile));
        }
    }
    let (tri, _) = best.expect("the cube has six-tetrahedron triangulations");
    tri.iter()
        .map(|t| {
            TessellationTetrahedron::new(t.map(|m| corners[m]))
                .expect("unimodular tetrahedron of a non-degenerate lattice")
        })
        .collect()
}

/// Fraction of the tetrahedron covered by unit balls centred at its
/// vertices, `Σ Ω_i / (4π) · v(K) / vol`.
///
/// Requires every edge to be at least 2, so the balls are disjoint, and every
/// height to be at least 1, so each ball meets the tetrahedron only in the
/// cone at its own vertex.
pub fn tetrahedron_sphere_coverage(t: &TessellationTetrahedron) -> Result<f64> {
    let shortest = t.sorted_edge_lengths()[0];
    if shortest < 2.0 - EPS {
        return Err(Error::EdgeTooShort(shortest));
    }
    let lowest = (0..4).map(|i| t.height(i)).fold(f64::INFINITY, f64::min);
    if lowest < 1.0 - EPS {
        return Err(Error::HeightTooShort(lowest));
    }
    let mut total = 0.0;
    for i in 0..4 {
        total += t.solid_angle(i)?;
    }
    Ok(total / (4.0 * std::f64::consts::PI) * UNIT_BALL_VOLUME / t.volume())
}
