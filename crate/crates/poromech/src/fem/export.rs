//! Solution export: VTK legacy ASCII and CSV of nodal values.

use super::SolutionField;
use crate::mesh::{Mesh, ShapeBasis};
use crate::Result;
use std::io::Write;
use std::path::Path;

// Pressure lives on corner nodes; evaluate the linear basis at the other
// nodes so point data covers the whole mesh.
fn pressure_on_all_nodes(field: &SolutionField) -> Vec<f64> {
    let mesh = &field.mesh;
    let mut out = vec![0.0; mesh.n_nodes()];
    let vel_basis = ShapeBasis::new(mesh.kind(), 2);
    let pres_basis = ShapeBasis::new(mesh.kind(), 1);
    let ref_nodes = vel_basis.nodes();
    for e in 0..mesh.n_elements() {
        let conn = mesh.element(e);
        for (a, &n) in conn.iter().enumerate() {
            let (psi, _) = pres_basis.eval_vec(ref_nodes[a]);
            let mut p = 0.0;
            for (m, &val) in psi.iter().enumerate() {
                let k = mesh.corner_index(conn[m]).expect("corner node");
                p += val * field.pressure[k];
            }
            out[n] = p;
        }
    }
    out
}

/// Writes the solution as VTK legacy ASCII with point data `velocity`,
/// `pressure` and (when provided) `vorticity`.
pub fn write_solution_vtk(
    field: &SolutionField,
    vorticity: Option<&[f64]>,
    path: &Path,
) -> Result<()> {
    let mesh: &Mesh = &field.mesh;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    crate::mesh::vtk_write_header(&mut out, mesh, "solution")?;
    writeln!(out, "POINT_DATA {}", mesh.n_nodes())?;
    writeln!(out, "VECTORS velocity double")?;
    for n in 0..mesh.n_nodes() {
        writeln!(
            out,
            "{} {} 0",
            fmt(field.velocity[2 * n]),
            fmt(field.velocity[2 * n + 1])
        )?;
    }
    writeln!(out, "SCALARS pressure double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    for p in pressure_on_all_nodes(field) {
        writeln!(out, "{}", fmt(p))?;
    }
    if let Some(w) = vorticity {
        writeln!(out, "SCALARS vorticity double 1")?;
        writeln!(out, "LOOKUP_TABLE default")?;
        for v in w {
            writeln!(out, "{}", fmt(*v))?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes nodal values as CSV: `x,y,vx,vy,pressure[,vorticity]`.
pub fn write_solution_csv(
    field: &SolutionField,
    vorticity: Option<&[f64]>,
    path: &Path,
) -> Result<()> {
    let mesh: &Mesh = &field.mesh;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    if vorticity.is_some() {
        writeln!(out, "x,y,vx,vy,pressure,vorticity")?;
    } else {
        writeln!(out, "x,y,vx,vy,pressure")?;
    }
    let pressure = pressure_on_all_nodes(field);
    for n in 0..mesh.n_nodes() {
        let p = mesh.node(n);
        let base = format!(
            "{},{},{},{},{}",
            fmt(p[0]),
            fmt(p[1]),
            fmt(field.velocity[2 * n]),
            fmt(field.velocity[2 * n + 1]),
            fmt(pressure[n])
        );
        match vorticity {
            Some(w) => writeln!(out, "{base},{}", fmt(w[n]))?,
            None => writeln!(out, "{base}")?,
        }
    }
    out.flush()?;
    Ok(())
}

fn fmt(x: f64) -> String {
    // Shortest round-trip representation keeps reruns byte-identical.
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_quad_mesh, Rect};
    use crate::model::ModelKind;
    use std::sync::Arc;

    #[test]
    fn exports_are_deterministic_and_well_formed() {
        let mesh = Arc::new(build_quad_mesh(2, 2, Rect::unit()).unwrap());
        let mut field =
            SolutionField::interpolate_velocity(&mesh, ModelKind::DarcyBrinkman, |x| [x[0], -x[1]]);
        // Linear pressure p = x + 2y interpolates exactly.
        for (k, &n) in mesh.corner_nodes().iter().enumerate() {
            let p = mesh.node(n);
            field.pressure[k] = p[0] + 2.0 * p[1];
        }
        let dir = tempfile::tempdir().unwrap();
        let vtk = dir.path().join("s.vtk");
        let csv = dir.path().join("s.csv");
        write_solution_vtk(&field, None, &vtk).unwrap();
        write_solution_csv(&field, None, &csv).unwrap();
        let vtk_text = std::fs::read_to_string(&vtk).unwrap();
        assert!(vtk_text.contains("VECTORS velocity double"));
        assert!(vtk_text.contains("SCALARS pressure double 1"));

        let csv_text = std::fs::read_to_string(&csv).unwrap();
        assert_eq!(csv_text.lines().count(), 1 + mesh.n_nodes());
        // Midside pressure interpolation: at node (0.25, 0), p = 0.25.
        let line = csv_text
            .lines()
            .find(|l| l.starts_with("0.25,0.0,"))
            .expect("midside node row");
        assert!(line.ends_with(",0.25"), "{line}");

        // Re-export produces identical bytes.
        let vtk2 = dir.path().join("s2.vtk");
        write_solution_vtk(&field, None, &vtk2).unwrap();
        assert_eq!(vtk_text, std::fs::read_to_string(&vtk2).unwrap());
    }
}
