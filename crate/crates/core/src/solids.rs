//! Regular-solid metrics and the two 13-sphere kissing arrangements.
//!
//! Closed forms for the regular dodecahedron and icosahedron, the
//! icosahedral (1-5-5-1) and fcc (3-6-3) configurations, and the tetrahedron
//! spanned by the central sphere and three mutually adjacent outer spheres.

use crate::error::{Error, Result};
use crate::geom3::{polyhedron_volume, Vector3, ALGEBRAIC_EPS, EPS};
use crate::lattice::{lattice_fcc, UNIT_BALL_VOLUME};
use crate::voronoi::voronoi_cell;

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

fn positive(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonPositive(x))
    }
}

/// `√((25 + 11√5) / 10)`: inradius of the unit-edge dodecahedron, times 2.
fn dodecahedron_inradius_factor() -> f64 {
    ((25.0 + 11.0 * 5f64.sqrt()) / 10.0).sqrt()
}

/// Volume `(a³/4)(15 + 7√5)` of the regular dodecahedron with edge `a`.
pub fn dodecahedron_volume(edge: f64) -> Result<f64> {
    let a = positive(edge)?;
    Ok(a.powi(3) / 4.0 * (15.0 + 7.0 * 5f64.sqrt()))
}

/// Inradius `(a/2)√((25 + 11√5)/10)`.
pub fn dodecahedron_inradius(edge: f64) -> Result<f64> {
    Ok(positive(edge)? / 2.0 * dodecahedron_inradius_factor())
}

/// Edge of the regular dodecahedron with the given inradius.
pub fn dodecahedron_edge_from_inradius(inradius: f64) -> Result<f64> {
    Ok(2.0 * positive(inradius)? / dodecahedron_inradius_factor())
}

/// Circumradius `(a/4)√(10 + 2√5)` of the regular icosahedron with edge `a`.
pub fn icosahedron_circumradius(edge: f64) -> Result<f64> {
    Ok(positive(edge)? / 4.0 * (10.0 + 2.0 * 5f64.sqrt()).sqrt())
}

/// Inradius `(a/12)√3(3 + √5)`.
pub fn icosahedron_inradius(edge: f64) -> Result<f64> {
    Ok(positive(edge)? / 12.0 * 3f64.sqrt() * (3.0 + 5f64.sqrt()))
}

/// Edge `8/√(10 + 2√5)` of the icosahedron whose circumradius is 2.
pub fn icosahedral_gap_edge() -> f64 {
    8.0 / (10.0 + 2.0 * 5f64.sqrt()).sqrt()
}

/// Sphere centers; the first is the central sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereConfiguration {
    centers: Vec<Vector3>,
}

impl SphereConfiguration {
    /// Fails with [`Error::OverlappingSpheres`] if two centers are closer
    /// than 2.
    pub fn new(centers: Vec<Vector3>) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::DegenerateInput("empty configuration"));
        }
        let config = Self { centers };
        let closest = config.min_pairwise_distance(0);
        if closest < 2.0 - EPS {
            return Err(Error::OverlappingSpheres(closest));
        }
        Ok(config)
    }

    pub fn centers(&self) -> &[Vector3] {
        &self.centers
    }

    pub fn center(&self) -> Vector3 {
        self.centers[0]
    }

    pub fn neighbours(&self) -> &[Vector3] {
        &self.centers[1..]
    }

    /// Smallest distance between centers with index `>= from`.
    pub fn min_pairwise_distance(&self, from: usize) -> f64 {
        let c = &self.centers;
        let mut best = f64::INFINITY;
        for i in from..c.len() {
            for j in i + 1..c.len() {
                best = best.min(c[i].distance(c[j]));
            }
        }
        best
    }

    /// Smallest distance among the outer spheres.
    pub fn min_neighbour_distance(&self) -> f64 {
        self.min_pairwise_distance(1)
    }
}

/// Vertices `(0, ±1, ±φ)` and their cyclic permutations, scaled to
/// circumradius `radius`.
fn icosahedron_vertices(radius: f64) -> Vec<Vector3> {
    let s = radius / (1.0 + PHI * PHI).sqrt();
    let mut v = Vec::with_capacity(12);
    for &p in &[-1.0, 1.0] {
        for &q in &[-PHI, PHI] {
            v.push(Vector3::new(0.0, p, q) * s);
            v.push(Vector3::new(p, q, 0.0) * s);
            v.push(Vector3::new(q, 0.0, p) * s);
        }
    }
    v
}

/// The origin surrounded by twelve spheres at the vertices of a regular
/// icosahedron of circumradius 2 (touching the center, not each other).
pub fn icosahedral_configuration() -> SphereConfiguration {
    let mut centers = vec![Vector3::ZERO];
    centers.extend(icosahedron_vertices(2.0));
    SphereConfiguration::new(centers).expect("icosahedral spheres do not overlap")
}

/// The origin surrounded by the twelve fcc nearest neighbours.
pub fn fcc_kissing_configuration() -> SphereConfiguration {
    let mut shell = lattice_fcc().vectors_within(2.0 + EPS);
    shell.sort_by(|a, b| a.lex_cmp(b));
    let mut centers = vec![Vector3::ZERO];
    centers.extend(shell);
    SphereConfiguration::new(centers).expect("fcc shell is a packing")
}

/// Base edge, base area, height and volume of a tetrahedron over a triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TetrahedronMetrics {
    pub base_edge: f64,
    pub base_area: f64,
    pub height: f64,
    pub volume: f64,
}

impl TetrahedronMetrics {
    fn from_base(base_edge: f64, height: f64) -> Self {
        let base_area = 3f64.sqrt() / 4.0 * base_edge * base_edge;
        Self {
            base_edge,
            base_area,
            height,
            volume: base_area * height / 3.0,
        }
    }
}

/// `A = (√3/4)a²`, `h = a√6/3`, `V = a³/(6√2)`.
pub fn regular_tetrahedron_metrics(edge: f64) -> Result<TetrahedronMetrics> {
    let a = positive(edge)?;
    Ok(TetrahedronMetrics::from_base(a, a * 6f64.sqrt() / 3.0))
}

/// Apex at the central sphere, base on an icosahedron face.
///
/// The face is the lexicographically smallest triple of mutually adjacent
/// outer centers. Its height is the icosahedron inradius; the geometric
/// distance from the apex to the base plane agrees within 1e-12.
pub fn icosahedral_tetrahedron() -> TetrahedronMetrics {
    let a = icosahedral_gap_edge();
    let face = icosahedral_face(&icosahedral_configuration());
    let h = icosahedron_inradius(a).expect("positive edge");
    debug_assert!({
        let [p, q, r] = face;
        let n = (q - p).cross(r - p);
        (p.dot(n).abs() / n.norm() - h).abs() < ALGEBRAIC_EPS
    });
    TetrahedronMetrics::from_base(a, h)
}

/// Corners of the chosen base face, as outer-sphere centers.
pub fn icosahedral_face(config: &SphereConfiguration) -> [Vector3; 3] {
    let outer = config.neighbours();
    let edge = config.min_neighbour_distance();
    let adjacent = |i: usize, j: usize| (outer[i].distance(outer[j]) - edge).abs() <= EPS;
    let n = outer.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    return [outer[i], outer[j], outer[k]];
                }
            }
        }
    }
    panic!("configuration has no triangle of nearest neighbours")
}

/// Sphere volume over the volume of the central sphere's Voronoi cell.
pub fn local_density(config: &SphereConfiguration) -> Result<f64> {
    let cell = voronoi_cell(config.center(), config.neighbours())?;
    Ok(UNIT_BALL_VOLUME / polyhedron_volume(&cell))
}
