//! OFF mesh export.

use std::fmt::Write;

use packing_core::ConvexPolyhedron;

/// OFF text: header, counts `V F E`, vertex lines, then `n i1 ... in` faces.
/// Coordinates use the shortest representation that parses back exactly.
pub fn to_off(p: &ConvexPolyhedron) -> String {
    let mut s = String::from("OFF\n");
    let _ = writeln!(
        s,
        "{} {} {}",
        p.vertex_count(),
        p.face_count(),
        p.edge_count()
    );
    for v in p.vertices() {
        let _ = writeln!(s, "{:?} {:?} {:?}", v.x(), v.y(), v.z());
    }
    for f in p.faces() {
        s.push_str(&f.len().to_string());
        for i in f {
            let _ = write!(s, " {i}");
        }
        s.push('\n');
    }
    s
}
