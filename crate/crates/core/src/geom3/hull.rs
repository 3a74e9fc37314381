//! Incremental convex hull with conflict lists.
//!
//! Each live triangle keeps the unassigned points lying strictly outside it.
//! The farthest conflict point of some triangle is inserted next: the
//! connected set of triangles that see it is removed and the horizon is
//! coned to the new point. Orphaned conflict points are redistributed over
//! the new triangles or dropped when they are no longer outside anything.
//!
//! Triangles are merged into polygons afterwards, and points that end up in
//! the middle of a face or edge are dropped from the vertex list.

use std::collections::{HashMap, HashSet};

use super::{tolerance, ConvexPolyhedron, PointSet, Vector3};
use crate::error::{Error, Result};

struct Tri {
    v: [usize; 3],
    normal: Vector3,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Tri {
    fn new(pts: &[Vector3], v: [usize; 3]) -> Result<Self> {
        let [a, b, c] = v.map(|i| pts[i]);
        let normal = (b - a)
            .cross(c - a)
            .normalized()
            .ok_or(Error::DegenerateInput("zero-area hull triangle"))?;
        Ok(Self {
            v,
            normal,
            offset: normal.dot(a),
            outside: Vec::new(),
            alive: true,
        })
    }

    #[inline]
    fn height(&self, p: Vector3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.v;
        [(a, b), (b, c), (c, a)]
    }
}

/// Convex hull of a point cloud.
///
/// Coplanar triangles are merged into polygonal faces; points inside the
/// hull, or on its boundary but not at a corner, do not appear as vertices.
/// Fails with [`Error::DegenerateInput`] when the points do not span 3-space.
pub fn convex_hull(points: &[Vector3]) -> Result<ConvexPolyhedron> {
    let scale = points.iter().map(|p| p.max_abs()).fold(0.0, f64::max);
    let tol = tolerance(scale);
    let mut set = PointSet::new(tol);
    for &p in points {
        set.insert(p);
    }
    let pts = set.into_points();
    if pts.len() < 4 {
        return Err(Error::DegenerateInput("fewer than four distinct points"));
    }

    let mut tris = initial_simplex(&pts, tol)?;
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (id, t) in tris.iter().enumerate() {
        for e in t.edges() {
            edge_owner.insert(e, id);
        }
    }
    let seeded: HashSet<usize> = tris.iter().flat_map(|t| t.v).collect();
    let pending: Vec<usize> = (0..pts.len()).filter(|i| !seeded.contains(i)).collect();
    assign(&pts, &mut tris, 0, pending, tol);

    let mut cursor = 0;
    while cursor < tris.len() {
        if !tris[cursor].alive || tris[cursor].outside.is_empty() {
            cursor += 1;
            continue;
        }
        let seed = cursor;
        let apex = *tris[seed]
            .outside
            .iter()
            .max_by(|&&a, &&b| {
                tris[seed]
                    .height(pts[a])
                    .total_cmp(&tris[seed].height(pts[b]))
            })
            .expect("non-empty conflict list");
        let p = pts[apex];

        // Connected region of triangles that see the apex.
        let mut visible = vec![seed];
        let mut is_visible: HashSet<usize> = HashSet::from([seed]);
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            for (a, b) in tris[f].edges() {
                let g = edge_owner[&(b, a)];
                if !is_visible.contains(&g) && tris[g].height(p) > tol {
                    is_visible.insert(g);
                    visible.push(g);
                }
            }
        }

        let mut horizon = Vec::new();
        let mut orphans = Vec::new();
        for &f in &visible {
            for (a, b) in tris[f].edges() {
                if !is_visible.contains(&edge_owner[&(b, a)]) {
                    horizon.push((a, b));
                }
            }
            orphans.extend(tris[f].outside.drain(..).filter(|&q| q != apex));
            tris[f].alive = false;
        }
        for &f in &visible {
            for e in tris[f].edges() {
                edge_owner.remove(&e);
            }
        }

        let first_new = tris.len();
        for (a, b) in horizon {
            let t = Tri::new(&pts, [a, b, apex])?;
            let id = tris.len();
            for e in t.edges() {
                edge_owner.insert(e, id);
            }
            tris.push(t);
        }
        assign(&pts, &mut tris, first_new, orphans, tol);
    }

    let live: Vec<usize> = (0..tris.len()).filter(|&i| tris[i].alive).collect();
    let faces = merge_coplanar(&pts, &tris, &live, &edge_owner, tol)?;
    ConvexPolyhedron::from_parts(pts, faces)
}

fn initial_simplex(pts: &[Vector3], tol: f64) -> Result<Vec<Tri>> {
    let argmax = |f: &dyn Fn(Vector3) -> f64| {
        (0..pts.len())
            .max_by(|&a, &b| f(pts[a]).total_cmp(&f(pts[b])))
            .expect("non-empty")
    };
    let i0 = (0..pts.len())
        .min_by(|&a, &b| pts[a].lex_cmp(&pts[b]))
        .expect("non-empty");
    let p0 = pts[i0];
    let i1 = argmax(&|p| p.distance(p0));
    let axis = pts[i1] - p0;
    if axis.norm() <= tol {
        return Err(Error::DegenerateInput("points coincide"));
    }
    let dir = axis / axis.norm();
    let i2 = argmax(&|p| (p - p0).cross(dir).norm());
    if (pts[i2] - p0).cross(dir).norm() <= tol {
        return Err(Error::DegenerateInput("points are collinear"));
    }
    let plane = (pts[i1] - p0)
        .cross(pts[i2] - p0)
        .normalized()
        .ok_or(Error::DegenerateInput("points are collinear"))?;
    let i3 = argmax(&|p| plane.dot(p - p0).abs());
    if plane.dot(pts[i3] - p0).abs() <= tol {
        return Err(Error::DegenerateInput("points are coplanar"));
    }

    let centroid = (p0 + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    [[i0, i1, i2], [i0, i3, i1], [i1, i3, i2], [i2, i3, i0]]
        .into_iter()
        .map(|mut v| {
            let t = Tri::new(pts, v)?;
            if t.height(centroid) > 0.0 {
                v.swap(1, 2);
                Tri::new(pts, v)
            } else {
                Ok(t)
            }
        })
        .collect()
}

/// Hands each point to the first triangle (from index `from`) it lies
/// strictly outside of; points outside none are inside the hull.
fn assign(pts: &[Vector3], tris: &mut [Tri], from: usize, points: Vec<usize>, tol: f64) {
    for q in points {
        if let Some(t) = tris[from..]
            .iter_mut()
            .find(|t| t.alive && t.height(pts[q]) > tol)
        {
            t.outside.push(q);
        }
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn merge_coplanar(
    pts: &[Vector3],
    tris: &[Tri],
    live: &[usize],
    edge_owner: &HashMap<(usize, usize), usize>,
    tol: f64,
) -> Result<Vec<Vec<usize>>> {
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    for &f in live {
        for (a, b) in tris[f].edges() {
            let g = edge_owner[&(b, a)];
            if g < f {
                continue;
            }
            let (tf, tg) = (&tris[f], &tris[g]);
            let normals_agree = (tf.normal - tg.normal).norm() <= super::EPS;
            let coplanar = tf.normal.dot(tg.normal) > 0.0
                && tg.v.iter().all(|&i| tf.height(pts[i]).abs() <= tol)
                && tf.v.iter().all(|&i| tg.height(pts[i]).abs() <= tol);
            if normals_agree || coplanar {
                let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
                parent[rf] = rg;
            }
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for &f in live {
        let r = find(&mut parent, f);
        groups.entry(r).or_default().push(f);
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();

    let mut loops = Vec::with_capacity(roots.len());
    for r in roots {
        let members = &groups[&r];
        let inner: HashSet<(usize, usize)> =
            members.iter().flat_map(|&f| tris[f].edges()).collect();
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &inner {
            if !inner.contains(&(b, a)) && next.insert(a, b).is_some() {
                return Err(Error::DegenerateInput("pinched hull face"));
            }
        }
        let start = *next
            .keys()
            .min()
            .ok_or(Error::DegenerateInput("empty hull face"))?;
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            if cycle.len() > next.len() {
                return Err(Error::DegenerateInput("hull face boundary is not a cycle"));
            }
            cycle.push(cur);
            cur = *next
                .get(&cur)
                .ok_or(Error::DegenerateInput("open hull face boundary"))?;
        }
        if cycle.len() != next.len() {
            return Err(Error::DegenerateInput("hull face has several boundaries"));
        }
        loops.push(cycle);
    }

    // A point that is a straight-angle corner of any face lies on an edge of
    // the hull, not at a vertex.
    let mut flat: HashSet<usize> = HashSet::new();
    for cycle in &loops {
        let n = cycle.len();
        for k in 0..n {
            let prev = pts[cycle[(k + n - 1) % n]];
            let cur = pts[cycle[k]];
            let next = pts[cycle[(k + 1) % n]];
            let (u, w) = (cur - prev, next - cur);
            if u.cross(w).norm() <= tol * u.norm().max(w.norm()) {
                flat.insert(cycle[k]);
            }
        }
    }
    let mut faces = Vec::with_capacity(loops.len());
    for cycle in loops {
        let face: Vec<usize> = cycle.into_iter().filter(|i| !flat.contains(i)).collect();
        if face.len() < 3 {
            return Err(Error::DegenerateInput("hull face collapsed"));
        }
        faces.push(face);
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_corners(h: f64) -> Vec<Vector3> {
        let mut v = Vec::new();
        for &x in &[-h, h] {
            for &y in &[-h, h] {
                for &z in &[-h, h] {
                    v.push(Vector3::new(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn cube_hull() {
        let h = convex_hull(&cube_corners(1.0)).unwrap();
        assert_eq!(
            (h.vertex_count(), h.face_count(), h.edge_count()),
            (8, 6, 12)
        );
        assert!((h.volume() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn interior_point_is_discarded() {
        let mut pts = cube_corners(1.0);
        pts.push(Vector3::ZERO);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertex_count(), 8);
        assert!(!h.vertices().contains(&Vector3::ZERO));
    }

    #[test]
    fn face_and_edge_points_are_discarded() {
        let mut pts = vec![
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(-1.0, 1.0, -1.0),
            Vector3::new(0.0, 1.0, 1.0),
        ];
        pts.extend(cube_corners(1.0));
        let h = convex_hull(&pts).unwrap();
        assert_eq!((h.vertex_count(), h.face_count()), (8, 6));
    }

    #[test]
    fn coplanar_points_fail() {
        let pts = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(1.0, 1.0, 0.0),
            Vector3::new(0.5, 0.2, 0.0),
        ];
        assert!(matches!(convex_hull(&pts), Err(Error::DegenerateInput(_))));
        let line: Vec<Vector3> = (0..5).map(|i| Vector3::new(i as f64, 0.0, 0.0)).collect();
        assert!(matches!(convex_hull(&line), Err(Error::DegenerateInput(_))));
        assert!(convex_hull(&line[..3]).is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let mut pts = cube_corners(1.0);
        pts.extend(cube_corners(1.0 + 1e-12));
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertex_count(), 8);
    }

    #[test]
    fn icosahedron_hull() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut pts = Vec::new();
        for &s1 in &[-1.0, 1.0] {
            for &s2 in &[-phi, phi] {
                pts.push(Vector3::new(0.0, s1, s2));
                pts.push(Vector3::new(s1, s2, 0.0));
                pts.push(Vector3::new(s2, 0.0, s1));
            }
        }
        let h = convex_hull(&pts).unwrap();
        assert_eq!(
            (h.vertex_count(), h.edge_count(), h.face_count()),
            (12, 30, 20)
        );
    }
}
