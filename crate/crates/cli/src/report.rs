//! The table of published quantities, recomputed from constructed geometry.

use packing_core::lattice::{
    fundamental_parallelepiped, lattice_fcc, lattice_fcc_square, packing_density,
    tessellation_tetrahedra, TetrahedronKind,
};
use packing_core::solids::{
    dodecahedron_edge_from_inradius, icosahedral_configuration, icosahedral_tetrahedron,
    local_density, regular_tetrahedron_metrics,
};
use packing_core::voronoi::voronoi_cell;
use packing_core::Result;
use serde_json::{json, Map, Value};

use crate::format::{round6, sig6};

/// Largest accepted difference between a recomputed and a published value.
pub const REPORT_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub name: &'static str,
    pub closed_form: &'static str,
    pub value: f64,
    pub published: f64,
}

impl ReportRow {
    pub fn abs_error(&self) -> f64 {
        (self.value - self.published).abs()
    }

    pub fn passes(&self) -> bool {
        self.abs_error() < REPORT_TOLERANCE
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub icosahedral_volume: f64,
    pub regular_volume: f64,
}

impl Report {
    /// The icosahedral tetrahedron is strictly larger than the regular one.
    pub fn verdict(&self) -> bool {
        self.icosahedral_volume > self.regular_volume
    }

    pub fn passes(&self) -> bool {
        self.verdict() && self.rows.iter().all(ReportRow::passes)
    }

    pub fn row(&self, name: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut quantities = Map::new();
        for r in &self.rows {
            quantities.insert(
                r.name.to_string(),
                json!({
                    "closed_form": r.closed_form,
                    "value": round6(r.value),
                    "paper_value": r.published,
                    "abs_error": round6(r.abs_error()),
                }),
            );
        }
        json!({
            "quantities": quantities,
            "verdict": {
                "statement": "icosahedral_tetrahedron_volume > regular_tetrahedron_volume",
                "icosahedral_tetrahedron_volume": round6(self.icosahedral_volume),
                "regular_tetrahedron_volume": round6(self.regular_volume),
                "holds": self.verdict(),
            },
            "tolerance": REPORT_TOLERANCE,
            "pass": self.passes(),
        })
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!(
                "{}: {:<10} published {:<10} abs_error {:<12} {}\n",
                r.name,
                sig6(r.value),
                sig6(r.published),
                sig6(r.abs_error()),
                r.closed_form,
            ));
        }
        out.push_str(&format!(
            "verdict: V_ico {} > V_TIII {}: {}\n",
            sig6(self.icosahedral_volume),
            sig6(self.regular_volume),
            if self.verdict() { "holds" } else { "fails" },
        ));
        out.push_str(if self.passes() {
            "status: pass\n"
        } else {
            "status: FAIL\n"
        });
        out
    }
}

/// Recomputes every reported quantity.
pub fn build_report() -> Result<Report> {
    let fcc = lattice_fcc();
    let fp1 = fundamental_parallelepiped(&fcc)?.volume();
    let fp2 = fundamental_parallelepiped(&lattice_fcc_square())?.volume();
    let tets = tessellation_tetrahedra(&fcc);
    let volume_of = |kind| {
        tets.iter()
            .find(|t| t.kind() == kind)
            .map(|t| t.volume())
            .unwrap_or(f64::NAN)
    };
    let t3 = volume_of(TetrahedronKind::Regular);
    let t4 = volume_of(TetrahedronKind::Octahedral);

    let ico = icosahedral_configuration();
    let dodeca = voronoi_cell(ico.center(), ico.neighbours())?.volume();
    let metrics = icosahedral_tetrahedron();
    let regular = regular_tetrahedron_metrics(2.0)?;

    let row = |name, closed_form, value, published| ReportRow {
        name,
        closed_form,
        value,
        published,
    };
    let rows = vec![
        row("fpi_volume", "4√2", fp1, 5.65685),
        row("fpii_volume", "4√2", fp2, 5.65685),
        row("tetrahedron_iii_volume", "(1/6)·4√2", t3, 0.94281),
        row("tetrahedron_iv_volume", "(1/6)·4√2", t4, 0.94281),
        row("fcc_density", "π/(3√2)", packing_density(&fcc)?, 0.74048),
        row(
            "dodecahedral_cell_volume",
            "2(15+7√5)/((25+11√5)/10)^(3/2)",
            dodeca,
            5.55029,
        ),
        row(
            "dodecahedron_edge",
            "2/√((25+11√5)/10)",
            dodecahedron_edge_from_inradius(1.0)?,
            0.898056,
        ),
        row(
            "dodecahedral_density",
            "(4π/3)/v(dodecahedron)",
            local_density(&ico)?,
            0.754697,
        ),
        row(
            "icosahedral_edge",
            "8/√(10+2√5)",
            ico.min_neighbour_distance(),
            2.1029,
        ),
        row(
            "icosahedral_tetrahedron_height",
            "√(4 − a²/3)",
            metrics.height,
            1.58931,
        ),
        row(
            "icosahedral_tetrahedron_base_area",
            "(√3/4)a²",
            metrics.base_area,
            1.91491,
        ),
        row(
            "icosahedral_tetrahedron_volume",
            "A·h/3",
            metrics.volume,
            1.01446,
        ),
    ];
    Ok(Report {
        rows,
        icosahedral_volume: metrics.volume,
        regular_volume: regular.volume,
    })
}
