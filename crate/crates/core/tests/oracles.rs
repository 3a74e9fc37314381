//! Kernel results checked against independent brute-force routes.

use packing_core::geom3::{
    convex_hull, halfspace_intersection, triangle_solid_angle, Halfspace, Vector3,
};
use packing_core::lattice::{
    lattice_fcc, tessellation_tetrahedra, tetrahedron_sphere_coverage, TessellationTetrahedron,
    TetrahedronKind,
};
use packing_core::oracle::mc_sphere_coverage;
use proptest::prelude::*;

/// Adaptive Simpson on [a, b].
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f((a + b) / 2.0));
    rec(
        f,
        a,
        b,
        fa,
        fm,
        fb,
        (b - a) / 6.0 * (fa + 4.0 * fm + fb),
        tol,
        40,
    )
}

/// Solid angle as the flux integral `∫ h / |x - apex|³ dA` over the
/// triangle, with `h` the apex-to-plane distance.
fn solid_angle_by_quadrature(apex: Vector3, a: Vector3, b: Vector3, c: Vector3) -> f64 {
    let n = (b - a).cross(c - a);
    let area2 = n.norm();
    let h = (a - apex).dot(n).abs() / area2;
    // x(u, v) = a + u (b - a) + u v (c - b), Jacobian u · |n|.
    let inner = |u: f64| {
        let g = |v: f64| {
            let x = a + (b - a) * u + (c - b) * (u * v);
            let r = (x - apex).norm();
            h / (r * r * r) * u * area2
        };
        simpson(&g, 0.0, 1.0, 1e-14)
    };
    simpson(&inner, 0.0, 1.0, 1e-13)
}

fn regular_tetrahedron() -> [Vector3; 4] {
    let s = 2f64.sqrt();
    [
        Vector3::ZERO,
        Vector3::new(s, s, 0.0),
        Vector3::new(s, 0.0, s),
        Vector3::new(0.0, s, s),
    ]
}

#[test]
fn regular_vertex_solid_angle_matches_quadrature() {
    let [o, a, b, c] = regular_tetrahedron();
    let closed = (23.0f64 / 27.0).acos();
    let quad = solid_angle_by_quadrature(o, a, b, c);
    assert!(
        (quad - closed).abs() < 1e-9,
        "quadrature {quad} vs {closed}"
    );
    let kernel = triangle_solid_angle(o, a, b, c).unwrap();
    assert!((kernel - closed).abs() < 1e-12);
    assert!((kernel - 0.551286).abs() < 1e-6);
}

#[test]
fn regular_tetrahedron_vertex_angles_agree() {
    let t = TessellationTetrahedron::new(regular_tetrahedron()).unwrap();
    let a0 = t.solid_angle(0).unwrap();
    for i in 1..4 {
        assert!((t.solid_angle(i).unwrap() - a0).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn solid_angle_matches_quadrature(
        apex in prop::array::uniform3(-0.5f64..0.5),
        a in prop::array::uniform3(-2f64..2.0),
        b in prop::array::uniform3(-2f64..2.0),
        c in prop::array::uniform3(-2f64..2.0),
    ) {
        let [apex, a, b, c] = [apex, a, b, c].map(|p| Vector3::from_array(p).unwrap());
        let shifted = [a, b, c].map(|p| p + Vector3::new(0.0, 0.0, 3.0));
        let [a, b, c] = shifted;
        let area = (b - a).cross(c - a).norm();
        let h = (a - apex).dot((b - a).cross(c - a)).abs() / area.max(1e-300);
        prop_assume!(area > 0.5 && h > 0.5);
        let kernel = triangle_solid_angle(apex, a, b, c).unwrap();
        let quad = solid_angle_by_quadrature(apex, a, b, c);
        prop_assert!((kernel - quad).abs() < 1e-7, "kernel {} quad {}", kernel, quad);
    }
}

#[test]
fn fcc_coverage_matches_monte_carlo() {
    let tets = tessellation_tetrahedra(&lattice_fcc());
    let regular = tets
        .iter()
        .find(|t| t.kind() == TetrahedronKind::Regular)
        .unwrap();
    let octa = tets
        .iter()
        .find(|t| t.kind() == TetrahedronKind::Octahedral)
        .unwrap();

    let c_reg = tetrahedron_sphere_coverage(regular).unwrap();
    let c_oct = tetrahedron_sphere_coverage(octa).unwrap();
    let closed_reg = 4.0 * (23.0f64 / 27.0).acos() / (2.0 * 2f64.sqrt());
    assert!((c_reg - closed_reg).abs() < 1e-12);
    assert!((c_reg - 0.7797).abs() < 1e-4, "{c_reg}");
    assert!((c_oct - 0.7209).abs() < 1e-4, "{c_oct}");
    assert!(c_reg > c_oct);

    let mc_reg = mc_sphere_coverage(regular, 10_000_000, 11).unwrap();
    let mc_oct = mc_sphere_coverage(octa, 10_000_000, 12).unwrap();
    assert!(mc_reg.agrees_with(c_reg, 4.0), "{mc_reg:?} vs {c_reg}");
    assert!(mc_oct.agrees_with(c_oct, 4.0), "{mc_oct:?} vs {c_oct}");
}

fn plane_through(p: Vector3, q: Vector3, r: Vector3) -> Option<(Vector3, f64)> {
    let n = (q - p).cross(r - p).normalized()?;
    Some((n, n.dot(p)))
}

/// Hull vertices by exhaustive facet search: a point is a vertex iff it lies
/// on at least three supporting planes with independent normals. Only for
/// point sets in general position.
fn brute_force_hull_vertices(pts: &[Vector3]) -> Vec<Vector3> {
    let tol = 1e-9;
    let mut facets: Vec<(Vector3, f64)> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if let Some((n, d)) = plane_through(pts[i], pts[j], pts[k]) {
                    let side: Vec<f64> = pts.iter().map(|p| n.dot(*p) - d).collect();
                    if side.iter().all(|&s| s <= tol) {
                        facets.push((n, d));
                    } else if side.iter().all(|&s| s >= -tol) {
                        facets.push((-n, -d));
                    }
                }
            }
        }
    }
    let mut v: Vec<Vector3> = pts
        .iter()
        .copied()
        .filter(|p| facets.iter().any(|(n, d)| (n.dot(*p) - d).abs() <= tol))
        .collect();
    v.sort_by(|a, b| a.lex_cmp(b));
    v.dedup();
    v
}

/// Vertices of an intersection of halfspaces by solving every triple of
/// planes and keeping feasible solutions.
fn brute_force_intersection_vertices(hs: &[Halfspace]) -> Vec<Vector3> {
    let tol = 1e-9;
    let mut out: Vec<Vector3> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            for k in j + 1..hs.len() {
                let (n1, n2, n3) = (hs[i].normal(), hs[j].normal(), hs[k].normal());
                let det = n1.dot(n2.cross(n3));
                if det.abs() < 1e-9 {
                    continue;
                }
                let p = (n2.cross(n3) * hs[i].offset()
                    + n3.cross(n1) * hs[j].offset()
                    + n1.cross(n2) * hs[k].offset())
                    / det;
                if hs.iter().all(|h| h.slack(p) >= -tol)
                    && !out.iter().any(|q| q.distance(p) < 1e-7)
                {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn same_point_sets(a: &[Vector3], b: &[Vector3], tol: f64) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| q.distance(*p) <= tol))
}

fn vec3() -> impl Strategy<Value = Vector3> {
    prop::array::uniform3(-1f64..1.0).prop_map(|a| Vector3::from_array(a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_matches_brute_force(pts in prop::collection::vec(vec3(), 5..14)) {
        let hull = match convex_hull(&pts) {
            Ok(h) => h,
            Err(_) => return Ok(()),
        };
        let expected = brute_force_hull_vertices(&pts);
        prop_assert!(same_point_sets(hull.vertices(), &expected, 1e-12),
            "hull {:?} vs brute force {:?}", hull.vertices(), expected);
        prop_assert_eq!(hull.euler_characteristic(), 2);
    }

    #[test]
    fn cube_with_inner_points_keeps_corners(inner in prop::collection::vec(vec3(), 0..30)) {
        let mut pts = inner.iter().map(|p| *p * 0.999).collect::<Vec<_>>();
        for m in 0..8 {
            let s = |bit: usize| if m >> bit & 1 == 1 { 1.0 } else { -1.0 };
            pts.push(Vector3::new(s(0), s(1), s(2)));
        }
        let hull = convex_hull(&pts).unwrap();
        prop_assert_eq!((hull.vertex_count(), hull.face_count()), (8, 6));
        prop_assert!((hull.volume() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn intersection_matches_triple_enumeration(
        normals in prop::collection::vec(vec3(), 1..10),
        offsets in prop::collection::vec(0.3f64..1.5, 10),
    ) {
        let mut hs: Vec<Halfspace> = [Vector3::E1, Vector3::E2, Vector3::E3]
            .into_iter()
            .flat_map(|e| [Halfspace::new(e, 2.0).unwrap(), Halfspace::new(-e, 2.0).unwrap()])
            .collect();
        for (n, d) in normals.iter().zip(&offsets) {
            if n.norm() > 0.1 {
                hs.push(Halfspace::new(*n, *d * n.norm()).unwrap());
            }
        }
        let poly = halfspace_intersection(&hs, Vector3::ZERO).unwrap();
        let expected = brute_force_intersection_vertices(&hs);
        // Near-coincident vertices are merged differently by the two routes;
        // only compare well-separated configurations.
        let min_gap = expected.iter().enumerate().flat_map(|(i, p)| {
            expected[i + 1..].iter().map(move |q| p.distance(*q))
        }).fold(f64::INFINITY, f64::min);
        prop_assume!(min_gap > 1e-4);
        prop_assert!(same_point_sets(poly.vertices(), &expected, 1e-7),
            "{} kernel vertices vs {} enumerated", poly.vertex_count(), expected.len());
    }
}
