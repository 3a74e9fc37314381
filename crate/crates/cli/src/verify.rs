//! Monte-Carlo cross-checks of every constructed volume.

use packing_core::geom3::{determinant3, Vector3};
use packing_core::lattice::{
    fundamental_parallelepiped, lattice_fcc, lattice_fcc_square, reciprocal_lattice,
    tessellation_tetrahedra, tetrahedron_sphere_coverage, Lattice, TessellationTetrahedron,
    TetrahedronKind,
};
use packing_core::oracle::{
    mc_sphere_coverage, mc_volume_membership, voronoi_membership, Aabb, McEstimate,
};
use packing_core::solids::icosahedral_configuration;
use packing_core::voronoi::{brillouin_zone, voronoi_cell, voronoi_cell_lattice};
use packing_core::{ConvexPolyhedron, Result};

/// Allowed distance between kernel and estimate, in standard errors.
pub const SIGMAS: f64 = 4.0;

/// Box half-width around a cell, relative to its circumradius.
const BOX_MARGIN: f64 = 1.2;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub name: &'static str,
    pub kernel: f64,
    pub estimate: McEstimate,
}

impl VerifyRow {
    pub fn passes(&self) -> bool {
        self.estimate.agrees_with(self.kernel, SIGMAS)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyTable {
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<VerifyRow>,
}

impl VerifyTable {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(VerifyRow::passes)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verify samples {} seed {} band {}σ\n",
            self.samples, self.seed, SIGMAS
        );
        out.push_str(&format!(
            "{:<28} {:>10} {:>10} {:>10} {:>7}  status\n",
            "check", "kernel", "estimate", "std_error", "z"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<28} {:>10.6} {:>10.6} {:>10.6} {:>+7.2}  {}\n",
                r.name,
                r.kernel,
                r.estimate.mean,
                r.estimate.std_error,
                r.estimate.z_score(r.kernel),
                if r.passes() { "pass" } else { "FAIL" }
            ));
        }
        let failed = self.rows.iter().filter(|r| !r.passes()).count();
        out.push_str(&format!("{} checks, {} failed\n", self.rows.len(), failed));
        out
    }
}

fn parallelepiped_check(
    name: &'static str,
    l: &Lattice,
    samples: u64,
    seed: u64,
) -> Result<VerifyRow> {
    let kernel = fundamental_parallelepiped(l)?;
    let dual = reciprocal_lattice(l).basis();
    let inside = move |p: Vector3| dual.iter().all(|b| (0.0..=1.0).contains(&b.dot(p)));
    let corners: Vec<Vector3> = (0..8)
        .map(|m| {
            let a = l.basis();
            (0..3).filter(|i| m >> i & 1 == 1).map(|i| a[i]).sum()
        })
        .collect();
    let estimate = mc_volume_membership(inside, &Aabb::around(&corners)?, samples, seed)?;
    Ok(VerifyRow {
        name,
        kernel: kernel.volume(),
        estimate,
    })
}

/// Barycentric membership, independent of the tetrahedron type.
fn in_tetrahedron(v: [Vector3; 4]) -> impl Fn(Vector3) -> bool + Sync {
    let (e1, e2, e3) = (v[1] - v[0], v[2] - v[0], v[3] - v[0]);
    let det = determinant3(e1, e2, e3);
    move |p: Vector3| {
        let d = p - v[0];
        let l1 = determinant3(d, e2, e3) / det;
        let l2 = determinant3(e1, d, e3) / det;
        let l3 = determinant3(e1, e2, d) / det;
        l1 >= 0.0 && l2 >= 0.0 && l3 >= 0.0 && l1 + l2 + l3 <= 1.0
    }
}

fn tetrahedron_check(
    name: &'static str,
    t: &TessellationTetrahedron,
    samples: u64,
    seed: u64,
) -> Result<VerifyRow> {
    let v = t.vertices();
    let estimate = mc_volume_membership(in_tetrahedron(v), &Aabb::around(&v)?, samples, seed)?;
    Ok(VerifyRow {
        name,
        kernel: t.volume(),
        estimate,
    })
}

fn cell_check(
    name: &'static str,
    cell: &ConvexPolyhedron,
    neighbours: &[Vector3],
    samples: u64,
    seed: u64,
) -> Result<VerifyRow> {
    let r = cell.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let bounds = Aabb::centered_cube(BOX_MARGIN * r)?;
    let estimate = mc_volume_membership(
        voronoi_membership(Vector3::ZERO, neighbours),
        &bounds,
        samples,
        seed,
    )?;
    Ok(VerifyRow {
        name,
        kernel: cell.volume(),
        estimate,
    })
}

fn lattice_cell_check(
    name: &'static str,
    l: &Lattice,
    cell: ConvexPolyhedron,
    samples: u64,
    seed: u64,
) -> Result<VerifyRow> {
    let r = cell.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let neighbours = l.vectors_within(2.0 * BOX_MARGIN * r * 3f64.sqrt());
    cell_check(name, &cell, &neighbours, samples, seed)
}

fn coverage_check(
    name: &'static str,
    t: &TessellationTetrahedron,
    samples: u64,
    seed: u64,
) -> Result<VerifyRow> {
    Ok(VerifyRow {
        name,
        kernel: tetrahedron_sphere_coverage(t)?,
        estimate: mc_sphere_coverage(t, samples, seed)?,
    })
}

/// Runs every cross-check with seeds `seed, seed + 1, ...`.
pub fn run_verify(samples: u64, seed: u64) -> Result<VerifyTable> {
    let fcc = lattice_fcc();
    let tets = tessellation_tetrahedra(&fcc);
    let pick = |kind| {
        tets.iter()
            .find(|t| t.kind() == kind)
            .expect("fcc tessellation has both kinds")
    };
    let t3 = pick(TetrahedronKind::Regular);
    let t4 = pick(TetrahedronKind::Octahedral);
    let ico = icosahedral_configuration();
    let s = |i: u64| seed.wrapping_add(i);

    let rows = vec![
        parallelepiped_check("fpi_volume", &fcc, samples, s(0))?,
        parallelepiped_check("fpii_volume", &lattice_fcc_square(), samples, s(1))?,
        tetrahedron_check("tetrahedron_iii_volume", t3, samples, s(2))?,
        tetrahedron_check("tetrahedron_iv_volume", t4, samples, s(3))?,
        lattice_cell_check(
            "fcc_cell_volume",
            &fcc,
            voronoi_cell_lattice(&fcc)?,
            samples,
            s(4),
        )?,
        cell_check(
            "dodecahedral_cell_volume",
            &voronoi_cell(ico.center(), ico.neighbours())?,
            ico.neighbours(),
            samples,
            s(5),
        )?,
        lattice_cell_check(
            "fcc_brillouin_volume",
            &reciprocal_lattice(&fcc),
            brillouin_zone(&fcc)?,
            samples,
            s(6),
        )?,
        coverage_check("tetrahedron_iii_coverage", t3, samples, s(7))?,
        coverage_check("tetrahedron_iv_coverage", t4, samples, s(8))?,
    ];
    Ok(VerifyTable {
        samples,
        seed,
        rows,
    })
}
