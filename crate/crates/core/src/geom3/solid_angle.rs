use super::{tolerance, Vector3};
use crate::error::{Error, Result};

/// Solid angle (steradians) subtended at `apex` by the triangle `abc`.
///
/// Uses the arctangent form of the spherical excess,
/// `tan(Ω/2) = |r_a · (r_b × r_c)| / (|r_a||r_b||r_c| + (r_a·r_b)|r_c| + (r_a·r_c)|r_b| + (r_b·r_c)|r_a|)`,
/// with the numerator taken in absolute value so the result does not depend
/// on vertex order. The value lies in `(0, 2π)`.
///
/// Fails when a corner coincides with the apex, the triangle is degenerate,
/// or the apex lies in the triangle's plane.
pub fn triangle_solid_angle(apex: Vector3, a: Vector3, b: Vector3, c: Vector3) -> Result<f64> {
    let (ra, rb, rc) = (a - apex, b - apex, c - apex);
    let scale = ra.max_abs().max(rb.max_abs()).max(rc.max_abs());
    let tol = tolerance(scale);
    let (la, lb, lc) = (ra.norm(), rb.norm(), rc.norm());
    if la <= tol || lb <= tol || lc <= tol {
        return Err(Error::DegenerateInput(
            "triangle corner coincides with apex",
        ));
    }
    if (b - a).cross(c - a).norm() <= tol * scale {
        return Err(Error::DegenerateInput("collinear triangle"));
    }
    let triple = ra.dot(rb.cross(rc)).abs();
    if triple <= tol * la * lb * lc {
        return Err(Error::DegenerateInput("apex lies in the triangle plane"));
    }
    let denom = la * lb * lc + ra.dot(rb) * lc + ra.dot(rc) * lb + rb.dot(rc) * la;
    Ok(2.0 * triple.atan2(denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn octant() {
        let o = triangle_solid_angle(Vector3::ZERO, Vector3::E1, Vector3::E2, Vector3::E3).unwrap();
        assert!((o - PI / 2.0).abs() < 1e-12);
        let swapped =
            triangle_solid_angle(Vector3::ZERO, Vector3::E2, Vector3::E1, Vector3::E3).unwrap();
        assert_eq!(o, swapped);
    }

    #[test]
    fn more_than_hemisphere_half() {
        // Apex just below a large triangle sees nearly 2π.
        let o = triangle_solid_angle(
            Vector3::new(0.0, 0.0, -1e-3),
            Vector3::new(100.0, 0.0, 0.0),
            Vector3::new(-50.0, 87.0, 0.0),
            Vector3::new(-50.0, -87.0, 0.0),
        )
        .unwrap();
        assert!(o > 2.0 * PI - 1e-3 && o < 2.0 * PI);
    }

    #[test]
    fn degenerate_inputs() {
        let z = Vector3::ZERO;
        assert!(triangle_solid_angle(z, z, Vector3::E2, Vector3::E3).is_err());
        assert!(
            triangle_solid_angle(z, Vector3::E1, Vector3::E1 * 2.0, Vector3::E1 * 3.0).is_err()
        );
        assert!(
            triangle_solid_angle(z, Vector3::E1, Vector3::E2, Vector3::E1 + Vector3::E2).is_err()
        );
    }

    #[test]
    fn subdivision_is_additive() {
        let apex = Vector3::new(0.1, -0.2, -1.5);
        let (a, b, c) = (
            Vector3::new(1.0, 0.0, 0.3),
            Vector3::new(-0.4, 1.1, 0.0),
            Vector3::new(0.2, -0.9, 0.1),
        );
        let m = (a + b) / 2.0;
        let whole = triangle_solid_angle(apex, a, b, c).unwrap();
        let parts = triangle_solid_angle(apex, a, m, c).unwrap()
            + triangle_solid_angle(apex, m, b, c).unwrap();
        assert!((whole - parts).abs() < 1e-12);
    }
}
