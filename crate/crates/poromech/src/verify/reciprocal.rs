//! The reciprocal (Betti-type) relation between two load cases.

use super::functionals::{body_force_work, boundary_work};
use crate::fem::SolutionField;
use crate::mesh::Mesh;
use crate::model::{BcKind, ProblemSpec};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Result of a reciprocal-relation check.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ReciprocalCheck {
    /// `int rho b1 . v2 (+/-) boundary work of load 1 against v2`.
    pub left: f64,
    pub right: f64,
    pub difference: f64,
    /// `(left - right) / left`; absent when |left| is below the underflow
    /// guard, in which case `difference` carries the unnormalized value.
    pub epsilon: Option<f64>,
}

impl ReciprocalCheck {
    pub fn magnitude(&self) -> f64 {
        self.epsilon.map(f64::abs).unwrap_or(self.difference.abs())
    }
}

fn same_mesh(a: &Arc<Mesh>, b: &Arc<Mesh>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.kind() == b.kind()
            && a.n_nodes() == b.n_nodes()
            && a.n_elements() == b.n_elements()
            && (a.h_max() - b.h_max()).abs() <= f64::EPSILON * a.h_max())
}

// The relation assumes homogeneous essential data; verify at the boundary
// nodes of the essential segments.
fn check_homogeneous_essential(mesh: &Mesh, spec: &ProblemSpec) -> Result<()> {
    for be in mesh.boundary_edges() {
        let bc = spec.bcs.get(&be.tag).ok_or_else(|| {
            Error::InvalidProblem(format!("no boundary condition for segment `{}`", be.tag))
        })?;
        for node in mesh.edge_nodes(be.element, be.local_edge) {
            let x = mesh.node(node);
            let bad = match bc {
                BcKind::VelocityVector(f) => {
                    let v = f(x, 0.0);
                    v[0].abs() > 1e-14 || v[1].abs() > 1e-14
                }
                BcKind::NormalVelocity(f) => f(x, 0.0).abs() > 1e-14,
                _ => false,
            };
            if bad {
                return Err(Error::Verification(format!(
                    "reciprocal relation requires homogeneous velocity data; segment `{}` \
                     prescribes a nonzero value at {x:?}",
                    be.tag
                )));
            }
        }
    }
    Ok(())
}

/// Normalized residual of the reciprocal relation for two solved load cases
/// on the same mesh and model.
///
/// `left = int rho b1.v2 + int_Gt t1.v2` (Darcy-Brinkman; the Darcy variant
/// uses `-int_Gt p01 v2.n`), `right` swaps the load indices.
pub fn reciprocal_residual(
    sol1: &SolutionField,
    spec1: &ProblemSpec,
    sol2: &SolutionField,
    spec2: &ProblemSpec,
) -> Result<ReciprocalCheck> {
    if !same_mesh(&sol1.mesh, &sol2.mesh) {
        return Err(Error::Verification(
            "reciprocal check requires the same mesh".into(),
        ));
    }
    if sol1.model != sol2.model || spec1.model != spec2.model || sol1.model != spec1.model {
        return Err(Error::ModelMismatch {
            expected: spec1.model.name().into(),
            got: spec2.model.name().into(),
        });
    }
    check_homogeneous_essential(&sol1.mesh, spec1)?;
    check_homogeneous_essential(&sol2.mesh, spec2)?;

    let mesh = &sol1.mesh;
    let left = body_force_work(mesh, &sol2.velocity, spec1, 0.0)?
        + boundary_work(mesh, &sol2.velocity, spec1, 0.0)?;
    let right = body_force_work(mesh, &sol1.velocity, spec2, 0.0)?
        + boundary_work(mesh, &sol1.velocity, spec2, 0.0)?;
    let difference = left - right;
    let guard = 1e-12 * (left.abs() + right.abs() + 1.0);
    let epsilon = if left.abs() < guard {
        None
    } else {
        Some(difference / left)
    };
    Ok(ReciprocalCheck {
        left,
        right,
        difference,
        epsilon,
    })
}
