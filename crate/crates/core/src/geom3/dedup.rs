use std::collections::HashMap;

use super::Vector3;

/// Grid-snapped point set: points closer than `tol` share an index.
pub(crate) struct PointSet {
    tol: f64,
    cells: HashMap<(i64, i64, i64), Vec<usize>>,
    points: Vec<Vector3>,
}

impl PointSet {
    pub(crate) fn new(tol: f64) -> Self {
        Self {
            tol,
            cells: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(&self, p: Vector3) -> (i64, i64, i64) {
        let q = |c: f64| (c / self.tol).floor() as i64;
        (q(p.x), q(p.y), q(p.z))
    }

    pub(crate) fn find(&self, p: Vector3) -> Option<usize> {
        let (kx, ky, kz) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(bucket) = self.cells.get(&(kx + dx, ky + dy, kz + dz)) {
                        if let Some(&i) = bucket
                            .iter()
                            .find(|&&i| self.points[i].distance(p) <= self.tol)
                        {
                            return Some(i);
                        }
                    }
                }
            }
        }
        None
    }

    /// Returns the index of `p`, inserting it if no stored point is within tolerance.
    pub(crate) fn insert(&mut self, p: Vector3) -> usize {
        if let Some(i) = self.find(p) {
            return i;
        }
        let i = self.points.len();
        self.points.push(p);
        let k = self.key(p);
        self.cells.entry(k).or_default().push(i);
        i
    }

    pub(crate) fn points(&self) -> &[Vector3] {
        &self.points
    }

    pub(crate) fn into_points(self) -> Vec<Vector3> {
        self.points
    }
}
