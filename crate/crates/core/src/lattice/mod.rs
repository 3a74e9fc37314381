//! Point lattices, their fundamental parallelepipeds and packing densities.

mod tessellation;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom3::{convex_hull, determinant3, ConvexPolyhedron, Vector3, EPS};

pub use tessellation::{
    tessellation_tetrahedra, tetrahedron_sphere_coverage, TessellationTetrahedron, TetrahedronKind,
};

/// Volume of the unit ball.
pub const UNIT_BALL_VOLUME: f64 = 4.0 * PI / 3.0;

/// The integer span of three linearly independent basis vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice {
    basis: [Vector3; 3],
}

impl Lattice {
    pub fn new(a1: Vector3, a2: Vector3, a3: Vector3) -> Result<Self> {
        let det = determinant3(a1, a2, a3);
        if det.abs() <= EPS {
            return Err(Error::SingularBasis(det.abs()));
        }
        Ok(Self {
            basis: [a1, a2, a3],
        })
    }

    /// Basis given as three rows of coordinates.
    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self> {
        Self::new(
            Vector3::from_array(rows[0])?,
            Vector3::from_array(rows[1])?,
            Vector3::from_array(rows[2])?,
        )
    }

    pub fn basis(&self) -> [Vector3; 3] {
        self.basis
    }

    pub fn determinant(&self) -> f64 {
        let [a1, a2, a3] = self.basis;
        determinant3(a1, a2, a3)
    }

    /// Volume of a fundamental cell, `|det|`.
    pub fn covolume(&self) -> f64 {
        self.determinant().abs()
    }

    pub fn point(&self, z: [i64; 3]) -> Vector3 {
        let [a1, a2, a3] = self.basis;
        a1 * z[0] as f64 + a2 * z[1] as f64 + a3 * z[2] as f64
    }

    pub fn scaled(&self, s: f64) -> Lattice {
        Lattice {
            basis: self.basis.map(|a| a * s),
        }
    }

    /// All nonzero lattice vectors in the coefficient box `[-k, k]³`.
    pub fn box_points(&self, k: i64) -> Vec<Vector3> {
        let mut out = Vec::with_capacity(((2 * k + 1).pow(3) - 1) as usize);
        for i in -k..=k {
            for j in -k..=k {
                for l in -k..=k {
                    if (i, j, l) != (0, 0, 0) {
                        out.push(self.point([i, j, l]));
                    }
                }
            }
        }
        out
    }

    /// Coefficient bound `|z_i| <= ceil(radius · max_i |b_i|)` valid for every
    /// lattice vector of norm at most `radius`, where `b_i` is the dual basis
    /// (`z_i = v · b_i`).
    pub fn coefficient_bound(&self, radius: f64) -> i64 {
        let dual = reciprocal_lattice(self).basis;
        let max_dual = dual.iter().map(|b| b.norm()).fold(0.0, f64::max);
        (radius * max_dual * (1.0 + EPS)).ceil() as i64
    }

    /// All nonzero lattice vectors with norm at most `radius`.
    pub fn vectors_within(&self, radius: f64) -> Vec<Vector3> {
        let k = self.coefficient_bound(radius);
        self.box_points(k)
            .into_iter()
            .filter(|v| v.norm() <= radius)
            .collect()
    }
}

/// The fcc lattice with basis (√2,√2,0), (√2,0,√2), (0,√2,√2): every basis
/// vector and every pairwise difference has length 2.
pub fn lattice_fcc() -> Lattice {
    let s = 2f64.sqrt();
    Lattice::new(
        Vector3::new(s, s, 0.0),
        Vector3::new(s, 0.0, s),
        Vector3::new(0.0, s, s),
    )
    .expect("fcc basis is independent")
}

/// The same fcc lattice spanned by a square pair: (2,0,0), (0,2,0), (1,1,√2).
pub fn lattice_fcc_square() -> Lattice {
    Lattice::new(
        Vector3::new(2.0, 0.0, 0.0),
        Vector3::new(0.0, 2.0, 0.0),
        Vector3::new(1.0, 1.0, 2f64.sqrt()),
    )
    .expect("fcc basis is independent")
}

pub fn lattice_sc() -> Lattice {
    Lattice::new(Vector3::E1 * 2.0, Vector3::E2 * 2.0, Vector3::E3 * 2.0)
        .expect("cubic basis is independent")
}

/// Body-centred cubic with cube edge 4/√3, so the half body diagonal is 2.
pub fn lattice_bcc() -> Lattice {
    let h = 2.0 / 3f64.sqrt();
    Lattice::new(
        Vector3::new(-h, h, h),
        Vector3::new(h, -h, h),
        Vector3::new(h, h, -h),
    )
    .expect("bcc basis is independent")
}

/// sc, bcc and fcc, each scaled so neighbouring unit spheres touch.
pub fn lattice_catalog() -> Vec<(&'static str, Lattice)> {
    vec![
        ("sc", lattice_sc()),
        ("bcc", lattice_bcc()),
        ("fcc", lattice_fcc()),
    ]
}

pub fn catalog_lattice(name: &str) -> Option<Lattice> {
    lattice_catalog()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, l)| l)
}

/// Length of a shortest nonzero lattice vector, by exhaustive search over the
/// coefficient box that provably contains one (at least `[-3, 3]³`).
pub fn shortest_vector_norm(lattice: &Lattice) -> f64 {
    let shortest_basis = lattice
        .basis
        .iter()
        .map(|a| a.norm())
        .fold(f64::INFINITY, f64::min);
    let k = lattice.coefficient_bound(shortest_basis).max(3);
    let mut best = f64::INFINITY;
    for i in -k..=k {
        for j in -k..=k {
            for l in -k..=k {
                if (i, j, l) != (0, 0, 0) {
                    best = best.min(lattice.point([i, j, l]).norm_squared());
                }
            }
        }
    }
    best.sqrt()
}

/// Density `v(K) / det(L)` of the unit-sphere packing centred on the lattice.
pub fn packing_density(lattice: &Lattice) -> Result<f64> {
    let shortest = shortest_vector_norm(lattice);
    if shortest < 2.0 - EPS {
        return Err(Error::OverlappingSpheres(shortest));
    }
    Ok(UNIT_BALL_VOLUME / lattice.covolume())
}

/// `{ Σ λ_i a_i : λ_i ∈ [0, 1] }` as a polyhedron.
pub fn fundamental_parallelepiped(lattice: &Lattice) -> Result<ConvexPolyhedron> {
    convex_hull(&parallelepiped_corners(lattice))
}

/// Corner `m` is `Σ_{i : bit i of m set} a_i`.
pub(crate) fn parallelepiped_corners(lattice: &Lattice) -> [Vector3; 8] {
    let [a1, a2, a3] = lattice.basis;
    std::array::from_fn(|m| {
        let pick = |bit: usize, a: Vector3| if m >> bit & 1 == 1 { a } else { Vector3::ZERO };
        pick(0, a1) + pick(1, a2) + pick(2, a3)
    })
}

/// Dual basis with `a_i · b_j = δ_ij` (no 2π factor).
pub fn reciprocal_lattice(lattice: &Lattice) -> Lattice {
    let [a1, a2, a3] = lattice.basis;
    let det = lattice.determinant();
    Lattice {
        basis: [a2.cross(a3) / det, a3.cross(a1) / det, a1.cross(a2) / det],
    }
}

/// Reproducible random packing lattices: basis entries uniform in `[-1, 1]`,
/// bases with `|det| < 0.1` rejected, then scaled so the shortest vector is 2.
pub fn random_packing_lattices(count: usize, seed: u64) -> Vec<Lattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = || {
            Vector3::new(
                rng.random_range(-1.0..=1.0),
                rng.random_range(-1.0..=1.0),
                rng.random_range(-1.0..=1.0),
            )
        };
        let (a1, a2, a3) = (v(), v(), v());
        if determinant3(a1, a2, a3).abs() < 0.1 {
            continue;
        }
        let l = Lattice::new(a1, a2, a3).expect("|det| >= 0.1");
        out.push(l.scaled(2.0 / shortest_vector_norm(&l)));
    }
    out
}
