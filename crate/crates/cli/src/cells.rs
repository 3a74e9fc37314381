//! Cell export and density summaries.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use packing_core::geom3::Vector3;
use packing_core::lattice::{
    catalog_lattice, packing_density, reciprocal_lattice, shortest_vector_norm, Lattice,
};
use packing_core::solids::{fcc_kissing_configuration, icosahedral_configuration};
use packing_core::voronoi::{
    brillouin_zone, classify_facets, lattice_cell, voronoi_cell, voronoi_cell_lattice, CellReport,
};
use packing_core::ConvexPolyhedron;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::off::to_off;

/// What a cell is computed for.
#[derive(Clone, Debug, PartialEq)]
pub enum CellSource {
    Named(String),
    Basis([f64; 9]),
    Config(String),
}

impl CellSource {
    pub fn describe(&self) -> String {
        match self {
            CellSource::Named(n) => n.clone(),
            CellSource::Basis(b) => format!("basis {b:?}"),
            CellSource::Config(c) => format!("config {c}"),
        }
    }
}

pub fn named_lattice(name: &str) -> CliResult<Lattice> {
    catalog_lattice(name).ok_or_else(|| {
        CliError::Invalid(format!(
            "unknown lattice '{name}' (expected fcc, bcc or sc)"
        ))
    })
}

pub fn basis_lattice(b: &[f64; 9]) -> CliResult<Lattice> {
    Ok(Lattice::from_rows([
        [b[0], b[1], b[2]],
        [b[3], b[4], b[5]],
        [b[6], b[7], b[8]],
    ])?)
}

pub fn lattice_for(source: &CellSource) -> CliResult<Lattice> {
    match source {
        CellSource::Named(n) => named_lattice(n),
        CellSource::Basis(b) => basis_lattice(b),
        CellSource::Config(_) => Err(CliError::Invalid("a configuration is not a lattice".into())),
    }
}

/// Voronoi cell of the sphere at the origin, with its facet report.
pub fn cell_for(source: &CellSource) -> CliResult<CellReport> {
    let cell = match source {
        CellSource::Config(name) => {
            let config = match name.as_str() {
                "icosahedral" => icosahedral_configuration(),
                "fcc-kissing" => fcc_kissing_configuration(),
                other => {
                    return Err(CliError::Invalid(format!(
                        "unknown configuration '{other}' (expected icosahedral or fcc-kissing)"
                    )))
                }
            };
            voronoi_cell(config.center(), config.neighbours())?
        }
        _ => voronoi_cell_lattice(&lattice_for(source)?)?,
    };
    Ok(classify_facets(&cell, Vector3::ZERO)?)
}

pub fn summary_json(report: &CellReport, source: &str) -> Value {
    let cell = &report.cell;
    let classes: Map<String, Value> = report
        .facet_classes
        .iter()
        .map(|(k, v)| (k.as_str().to_string(), json!(v)))
        .collect();
    let sizes: Map<String, Value> = report
        .facet_sizes
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "source": source,
        "vertices": cell.vertex_count(),
        "edges": cell.edge_count(),
        "faces": cell.face_count(),
        "volume": report.volume,
        "inradius": report.inradius,
        "circumradius": report.circumradius,
        "surface_area": cell.surface_area(),
        "facet_classes": classes,
        "facet_sizes": sizes,
    })
}

/// Path of the summary written next to a geometry file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes `cell` as OFF to `out` and its summary beside it.
pub fn write_cell(cell: &ConvexPolyhedron, summary: &Value, out: &Path) -> CliResult<PathBuf> {
    fs::write(out, to_off(cell))?;
    let side = sidecar_path(out);
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    fs::write(&side, text)?;
    Ok(side)
}

pub fn cmd_voronoi(source: &CellSource, out: &Path) -> CliResult<String> {
    let report = cell_for(source)?;
    let side = write_cell(
        &report.cell,
        &summary_json(&report, &source.describe()),
        out,
    )?;
    Ok(format!(
        "wrote {} ({} vertices, {} edges, {} faces, volume {:.6}) and {}",
        out.display(),
        report.cell.vertex_count(),
        report.cell.edge_count(),
        report.cell.face_count(),
        report.volume,
        side.display()
    ))
}

/// Brillouin zone of a named lattice, optionally scaled by 2π.
pub fn brillouin_report(name: &str, two_pi: bool) -> CliResult<CellReport> {
    let lattice = named_lattice(name)?;
    let zone = if two_pi {
        let r = reciprocal_lattice(&lattice).scaled(2.0 * PI);
        lattice_cell(&r)?
    } else {
        brillouin_zone(&lattice)?
    };
    Ok(classify_facets(&zone, Vector3::ZERO)?)
}

pub fn cmd_brillouin(name: &str, two_pi: bool, out: &Path) -> CliResult<String> {
    let report = brillouin_report(name, two_pi)?;
    let label = format!("brillouin {name}{}", if two_pi { " (2π)" } else { "" });
    let side = write_cell(&report.cell, &summary_json(&report, &label), out)?;
    Ok(format!(
        "wrote {} ({} vertices, {} edges, {} faces, volume {:.6}) and {}",
        out.display(),
        report.cell.vertex_count(),
        report.cell.edge_count(),
        report.cell.face_count(),
        report.volume,
        side.display()
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensitySummary {
    pub density: f64,
    pub determinant: f64,
    pub shortest_vector: f64,
}

impl DensitySummary {
    pub fn line(&self) -> String {
        format!(
            "density {:.6} det {:.6} shortest_vector {:.6}",
            self.density, self.determinant, self.shortest_vector
        )
    }

    pub fn json(&self) -> Value {
        json!({
            "density": self.density,
            "determinant": self.determinant,
            "shortest_vector": self.shortest_vector,
        })
    }
}

pub fn cmd_density(source: &CellSource) -> CliResult<DensitySummary> {
    let l = lattice_for(source)?;
    Ok(DensitySummary {
        density: packing_density(&l)?,
        determinant: l.covolume(),
        shortest_vector: shortest_vector_norm(&l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn densities_of_named_lattices() {
        let d = |n: &str| cmd_density(&CellSource::Named(n.into())).unwrap().line();
        assert!(d("fcc").starts_with("density 0.740480 "));
        assert!(d("bcc").starts_with("density 0.680175 "));
        assert!(d("sc").starts_with("density 0.523599 "));
    }

    #[test]
    fn unknown_names_are_invalid() {
        assert_eq!(named_lattice("hcp").unwrap_err().exit_code(), 2);
        let e = cell_for(&CellSource::Config("square".into())).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn overlapping_basis_is_invalid() {
        let e = cmd_density(&CellSource::Basis([
            1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 2.0,
        ]))
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = cmd_density(&CellSource::Basis([
            2.0, 0.0, 0.0, 4.0, 0.0, 0.0, 0.0, 0.0, 2.0,
        ]))
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn two_pi_scales_the_zone() {
        let plain = brillouin_report("sc", false).unwrap().volume;
        let scaled = brillouin_report("sc", true).unwrap().volume;
        assert!((scaled / plain - (2.0 * PI).powi(3)).abs() < 1e-9);
    }
}
