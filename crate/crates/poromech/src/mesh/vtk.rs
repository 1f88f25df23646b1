//! VTK legacy ASCII export (UNSTRUCTURED_GRID with quadratic cells).

use super::{ElementKind, Mesh};
use crate::Result;
use std::io::Write;
use std::path::Path;

const VTK_QUADRATIC_TRIANGLE: u8 = 22;
const VTK_BIQUADRATIC_QUAD: u8 = 28;

pub(crate) fn cell_type(kind: ElementKind) -> u8 {
    match kind {
        ElementKind::Q9 => VTK_BIQUADRATIC_QUAD,
        ElementKind::T6 => VTK_QUADRATIC_TRIANGLE,
    }
}

pub(crate) fn write_header(w: &mut impl Write, mesh: &Mesh, title: &str) -> std::io::Result<()> {
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "{title}")?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(w, "POINTS {} double", mesh.n_nodes())?;
    for p in mesh.nodes() {
        writeln!(w, "{} {} 0", fmt(p[0]), fmt(p[1]))?;
    }
    let npe = mesh.kind().nodes_per_element();
    let ne = mesh.n_elements();
    writeln!(w, "CELLS {} {}", ne, ne * (npe + 1))?;
    for e in 0..ne {
        let conn = mesh.element(e);
        let ids: Vec<String> = conn.iter().map(|n| n.to_string()).collect();
        writeln!(w, "{} {}", npe, ids.join(" "))?;
    }
    writeln!(w, "CELL_TYPES {ne}")?;
    let ct = cell_type(mesh.kind());
    for _ in 0..ne {
        writeln!(w, "{ct}")?;
    }
    Ok(())
}

pub(crate) fn fmt(x: f64) -> String {
    // Stable, locale-free formatting; trims to a round-trippable form.
    format!("{x:.17e}")
}

pub(crate) fn write_mesh_vtk(mesh: &Mesh, path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_header(&mut out, mesh, "mesh")?;
    out.flush()?;
    Ok(())
}
