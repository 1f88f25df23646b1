//! Convergence-study bookkeeping over mesh families.

use super::{dissipation, reciprocal_residual, total_mechanical_power};
use crate::fem::{assemble, solve_steady, AssemblyOptions};
use crate::mesh::{build_quad_mesh, build_tri_mesh, refine_region, ElementKind, GradedAxis, Mesh};
use crate::model::ProblemSpec;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Mesh parameters for one level of a family.
#[derive(Clone, Debug)]
pub struct MeshSpec {
    pub kind: ElementKind,
    pub nx: usize,
    pub ny: usize,
    pub graded: Vec<GradedAxis>,
}

impl MeshSpec {
    pub fn quad(nx: usize, ny: usize) -> Self {
        MeshSpec {
            kind: ElementKind::Q9,
            nx,
            ny,
            graded: vec![],
        }
    }

    pub fn tri(nx: usize, ny: usize) -> Self {
        MeshSpec {
            kind: ElementKind::T6,
            nx,
            ny,
            graded: vec![],
        }
    }

    pub fn build(&self, spec: &ProblemSpec) -> Result<Arc<Mesh>> {
        let mesh = if self.graded.is_empty() {
            match self.kind {
                ElementKind::Q9 => build_quad_mesh(self.nx, self.ny, spec.domain)?,
                ElementKind::T6 => build_tri_mesh(self.nx, self.ny, spec.domain)?,
            }
        } else {
            refine_region(self.kind, self.nx, self.ny, spec.domain, &self.graded)?
        };
        Ok(Arc::new(spec.prepare_mesh(mesh)?))
    }
}

/// One row of a convergence table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub one_over_h: f64,
    pub h: f64,
    pub phi: f64,
    pub tmp: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reciprocal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Monotonicity and plateau diagnostics for one metric column.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct MetricFlags {
    pub monotone_decreasing: bool,
    pub monotone_increasing: bool,
    /// The last two successive relative changes are both below 1%.
    pub plateau: bool,
}

pub fn metric_flags(values: &[f64]) -> MetricFlags {
    if values.len() < 2 {
        return MetricFlags::default();
    }
    let dec = values.windows(2).all(|w| w[1] <= w[0]);
    let inc = values.windows(2).all(|w| w[1] >= w[0]);
    let mut plateau = false;
    if values.len() >= 3 {
        let n = values.len();
        let rel = |a: f64, b: f64| ((b - a) / a.abs().max(f64::MIN_POSITIVE)).abs();
        plateau =
            rel(values[n - 3], values[n - 2]) < 0.01 && rel(values[n - 2], values[n - 1]) < 0.01;
    }
    MetricFlags {
        monotone_decreasing: dec,
        monotone_increasing: inc,
        plateau,
    }
}

/// Convergence table with per-metric diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub phi_flags: MetricFlags,
    pub tmp_flags: MetricFlags,
    /// Flags for |tmp|; the power is signed, its magnitude is what shrinks.
    pub tmp_abs_flags: MetricFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reciprocal_flags: Option<MetricFlags>,
}

impl ConvergenceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("one_over_h,h,phi,tmp,reciprocal,error\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.one_over_h,
                r.h,
                r.phi,
                r.tmp,
                r.reciprocal.map(|v| v.to_string()).unwrap_or_default(),
                r.error.clone().unwrap_or_default(),
            ));
        }
        out.push_str(&format!(
            "# phi: monotone_decreasing={} monotone_increasing={} plateau={}\n",
            self.phi_flags.monotone_decreasing,
            self.phi_flags.monotone_increasing,
            self.phi_flags.plateau
        ));
        out.push_str(&format!(
            "# tmp: monotone_decreasing={} monotone_increasing={} plateau={}\n",
            self.tmp_flags.monotone_decreasing,
            self.tmp_flags.monotone_increasing,
            self.tmp_flags.plateau
        ));
        if let Some(f) = &self.reciprocal_flags {
            out.push_str(&format!(
                "# reciprocal: monotone_decreasing={} monotone_increasing={} plateau={}\n",
                f.monotone_decreasing, f.monotone_increasing, f.plateau
            ));
        }
        out
    }
}

/// Solves the problem over a mesh family and tabulates the verification
/// metrics per level. When `pair` is given, the reciprocal residual of the
/// (spec, pair) load cases is included.
///
/// Solver failures on individual levels are annotated on their row rather
/// than aborting the study.
pub fn convergence_study(
    spec: &ProblemSpec,
    pair: Option<&ProblemSpec>,
    meshes: &[MeshSpec],
) -> Result<ConvergenceTable> {
    if meshes.len() < 3 {
        return Err(crate::Error::Verification(format!(
            "a convergence study needs at least 3 meshes, got {}",
            meshes.len()
        )));
    }
    let mut rows = Vec::new();
    for ms in meshes {
        let row = match run_level(spec, pair, ms) {
            Ok(row) => row,
            Err(e) => {
                let mesh = ms.build(spec)?;
                ConvergenceRow {
                    one_over_h: 1.0 / mesh.h_max(),
                    h: mesh.h_max(),
                    phi: f64::NAN,
                    tmp: f64::NAN,
                    reciprocal: None,
                    error: Some(e.to_string()),
                }
            }
        };
        rows.push(row);
    }
    // Order by decreasing h.
    rows.sort_by(|a, b| b.h.partial_cmp(&a.h).unwrap());
    let phis: Vec<f64> = rows
        .iter()
        .filter(|r| r.error.is_none())
        .map(|r| r.phi)
        .collect();
    let tmps: Vec<f64> = rows
        .iter()
        .filter(|r| r.error.is_none())
        .map(|r| r.tmp)
        .collect();
    let tmps_abs: Vec<f64> = tmps.iter().map(|v| v.abs()).collect();
    let recs: Vec<f64> = rows
        .iter()
        .filter(|r| r.error.is_none())
        .filter_map(|r| r.reciprocal)
        .map(f64::abs)
        .collect();
    Ok(ConvergenceTable {
        phi_flags: metric_flags(&phis),
        tmp_flags: metric_flags(&tmps),
        tmp_abs_flags: metric_flags(&tmps_abs),
        reciprocal_flags: if recs.is_empty() {
            None
        } else {
            Some(metric_flags(&recs))
        },
        rows,
    })
}

fn run_level(
    spec: &ProblemSpec,
    pair: Option<&ProblemSpec>,
    ms: &MeshSpec,
) -> Result<ConvergenceRow> {
    let mesh = ms.build(spec)?;
    let system = assemble(&mesh, spec, &AssemblyOptions::default())?;
    let solution = solve_steady(&system)?;
    let phi = dissipation(&solution, spec)?;
    let tmp = total_mechanical_power(&solution, spec)?;
    let reciprocal = match pair {
        Some(spec2) => {
            let mesh2 = ms.build(spec2)?;
            let system2 = assemble(&mesh2, spec2, &AssemblyOptions::default())?;
            let sol2 = solve_steady(&system2)?;
            // The two solves share mesh parameters; compare on the first mesh.
            let sol2 = crate::fem::SolutionField {
                mesh: mesh.clone(),
                ..sol2
            };
            Some(reciprocal_residual(&solution, spec, &sol2, spec2)?.magnitude())
        }
        None => None,
    };
    Ok(ConvergenceRow {
        one_over_h: 1.0 / mesh.h_max(),
        h: mesh.h_max(),
        phi,
        tmp,
        reciprocal,
        error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_detect_monotonicity_and_plateau() {
        let f = metric_flags(&[4.0, 2.0, 1.0, 0.999, 0.9985]);
        assert!(f.monotone_decreasing && !f.monotone_increasing && f.plateau);

        let f = metric_flags(&[1.0, 2.0, 3.0, 4.0]);
        assert!(f.monotone_increasing && !f.monotone_decreasing && !f.plateau);

        let f = metric_flags(&[1.0, 3.0, 2.0]);
        assert!(!f.monotone_increasing && !f.monotone_decreasing);
    }

    #[test]
    fn fewer_than_three_meshes_rejected() {
        let spec = crate::model::benchmark("body_force", &Default::default()).unwrap();
        let meshes = vec![MeshSpec::quad(2, 2), MeshSpec::quad(4, 4)];
        assert!(convergence_study(&spec, None, &meshes).is_err());
    }
}
