//! Vorticity: L2 projection, maximum-principle check and the Laplacian
//! eigenrelation residual.

use crate::fem::{for_each_quadrature_point, SolutionField};
use crate::mesh::Mesh;
use crate::model::PermeabilityField;
use crate::{Error, Result};
use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Scalar vorticity coefficients on the velocity (quadratic) nodes.
#[derive(Clone, Debug)]
pub struct VorticityField {
    pub mesh: Arc<Mesh>,
    pub values: Vec<f64>,
}

/// Extrema summary produced by [`max_principle_check`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MaxPrincipleReport {
    pub interior_max: f64,
    pub interior_min: f64,
    pub boundary_max: f64,
    pub boundary_min: f64,
    pub max_principle_ok: bool,
    /// Absolute slack used: `tol` times the global vorticity range.
    pub tolerance: f64,
}

// Consistent-mass L2 projection: solve M w = r.
fn l2_project(
    mesh: &Arc<Mesh>,
    rhs_fill: impl Fn(&mut Vec<f64>) -> Result<()>,
) -> Result<Vec<f64>> {
    let n = mesh.n_nodes();
    let mut trips: Vec<Triplet<usize, usize, f64>> = Vec::new();
    for_each_quadrature_point(mesh, 4, |qp| {
        for (a, &na) in qp.conn.iter().enumerate() {
            for (b, &nb) in qp.conn.iter().enumerate() {
                trips.push(Triplet::new(na, nb, qp.w * qp.phi[a] * qp.phi[b]));
            }
        }
        Ok(())
    })?;
    let mut rhs = vec![0.0; n];
    rhs_fill(&mut rhs)?;
    let mass = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trips)
        .map_err(|e| Error::Assembly(format!("mass matrix: {e:?}")))?;
    let lu = mass
        .sp_lu()
        .map_err(|e| Error::SingularSystem(format!("mass matrix factorization: {e:?}")))?;
    let b = faer::Mat::<f64>::from_fn(n, 1, |i, _| rhs[i]);
    let x = lu.solve(&b);
    Ok((0..n).map(|i| x[(i, 0)]).collect())
}

/// Nodal vorticity via L2 projection of `dv_y/dx - dv_x/dy` onto the
/// quadratic scalar space.
pub fn vorticity_field(solution: &SolutionField) -> Result<VorticityField> {
    let mesh = &solution.mesh;
    let values = l2_project(mesh, |rhs| {
        for_each_quadrature_point(mesh, 4, |qp| {
            let mut curl = 0.0;
            for (a, &n) in qp.conn.iter().enumerate() {
                curl += qp.grad_phi[a][0] * solution.velocity[2 * n + 1]
                    - qp.grad_phi[a][1] * solution.velocity[2 * n];
            }
            for (a, &n) in qp.conn.iter().enumerate() {
                rhs[n] += qp.w * qp.phi[a] * curl;
            }
            Ok(())
        })
    })?;
    Ok(VorticityField {
        mesh: mesh.clone(),
        values,
    })
}

impl VorticityField {
    /// Interpolates an analytic scalar at the nodes (tests, oracles).
    pub fn interpolate(mesh: &Arc<Mesh>, f: impl Fn([f64; 2]) -> f64) -> VorticityField {
        let values = (0..mesh.n_nodes()).map(|i| f(mesh.node(i))).collect();
        VorticityField {
            mesh: mesh.clone(),
            values,
        }
    }

    /// Interpolated value at a point.
    pub fn evaluate(&self, x: [f64; 2]) -> Result<f64> {
        let (elem, xi) = self.mesh.locate(x)?;
        let basis = crate::mesh::ShapeBasis::new(self.mesh.kind(), 2);
        let (vals, _) = basis.eval_vec(xi);
        let conn = self.mesh.element(elem);
        Ok(conn
            .iter()
            .enumerate()
            .map(|(a, &n)| vals[a] * self.values[n])
            .sum())
    }

    /// L2 norm over the domain.
    pub fn l2_norm(&self) -> Result<f64> {
        let mut total = 0.0;
        for_each_quadrature_point(&self.mesh, 4, |qp| {
            let mut w = 0.0;
            for (a, &n) in qp.conn.iter().enumerate() {
                w += qp.phi[a] * self.values[n];
            }
            total += qp.w * w * w;
            Ok(())
        })?;
        Ok(total.sqrt())
    }

    /// L2 norm over the elements that do not touch the boundary.
    pub fn l2_norm_interior(&self) -> Result<f64> {
        let mesh = &self.mesh;
        let mut on_boundary = vec![false; mesh.n_nodes()];
        for &n in mesh.boundary_nodes() {
            on_boundary[n] = true;
        }
        let mut interior = vec![true; mesh.n_elements()];
        for e in 0..mesh.n_elements() {
            if mesh.element(e).iter().any(|&n| on_boundary[n]) {
                interior[e] = false;
            }
        }
        let mut total = 0.0;
        for_each_quadrature_point(mesh, 4, |qp| {
            if !interior[qp.element] {
                return Ok(());
            }
            let mut w = 0.0;
            for (a, &n) in qp.conn.iter().enumerate() {
                w += qp.phi[a] * self.values[n];
            }
            total += qp.w * w * w;
            Ok(())
        })?;
        Ok(total.sqrt())
    }

    /// L2 error against an analytic field.
    pub fn l2_error(&self, f: impl Fn([f64; 2]) -> f64) -> Result<f64> {
        let mut total = 0.0;
        for_each_quadrature_point(&self.mesh, 6, |qp| {
            let mut w = 0.0;
            for (a, &n) in qp.conn.iter().enumerate() {
                w += qp.phi[a] * self.values[n];
            }
            let d = w - f(qp.x);
            total += qp.w * d * d;
            Ok(())
        })?;
        Ok(total.sqrt())
    }
}

/// Checks the elliptic maximum principle: the non-negative maximum and the
/// non-positive minimum must occur on the boundary, within `tol` times the
/// global range.
pub fn max_principle_check(w: &VorticityField, tol: f64) -> MaxPrincipleReport {
    let mesh = &w.mesh;
    let mut on_boundary = vec![false; mesh.n_nodes()];
    for &n in mesh.boundary_nodes() {
        on_boundary[n] = true;
    }
    let mut interior_max = f64::NEG_INFINITY;
    let mut interior_min = f64::INFINITY;
    let mut boundary_max = f64::NEG_INFINITY;
    let mut boundary_min = f64::INFINITY;
    for (n, &v) in w.values.iter().enumerate() {
        if on_boundary[n] {
            boundary_max = boundary_max.max(v);
            boundary_min = boundary_min.min(v);
        } else {
            interior_max = interior_max.max(v);
            interior_min = interior_min.min(v);
        }
    }
    // Degenerate cases (no interior nodes) pass trivially.
    if !interior_max.is_finite() {
        interior_max = 0.0;
        interior_min = 0.0;
    }
    let global_max = interior_max.max(boundary_max);
    let global_min = interior_min.min(boundary_min);
    let range = global_max - global_min;
    let slack = tol * range;
    let ok = interior_max <= boundary_max.max(0.0) + slack
        && interior_min >= boundary_min.min(0.0) - slack;
    MaxPrincipleReport {
        interior_max,
        interior_min,
        boundary_max,
        boundary_min,
        max_principle_ok: ok,
        tolerance: slack,
    }
}

/// Weak residual of the eigenrelation `Laplacian(omega) = omega / k` in an
/// interior norm that excludes one layer of elements along the boundary.
///
/// Requires a homogeneous isotropic permeability; heterogeneous fields
/// violate the theorem hypothesis and are refused.
pub fn eigen_residual(w: &VorticityField, perm: &PermeabilityField) -> Result<f64> {
    let k = match perm {
        PermeabilityField::Uniform(k) => *k,
        PermeabilityField::Raster(_) => {
            return Err(Error::Verification(
                "the vorticity eigenrelation assumes homogeneous isotropic permeability; \
                 a raster field violates the hypothesis"
                    .into(),
            ))
        }
    };
    let mesh = &w.mesh;
    // Elements with any boundary node are excluded.
    let mut on_boundary = vec![false; mesh.n_nodes()];
    for &n in mesh.boundary_nodes() {
        on_boundary[n] = true;
    }
    let mut interior_elems = vec![true; mesh.n_elements()];
    for e in 0..mesh.n_elements() {
        if mesh.element(e).iter().any(|&n| on_boundary[n]) {
            interior_elems[e] = false;
        }
    }
    // The discrete Laplacian is taken element-wise from the curvature of the
    // quadratic interpolant (cells are affine, so the reference Hessian maps
    // exactly).
    let basis = crate::mesh::ShapeBasis::new(mesh.kind(), 2);
    let rule = crate::mesh::quadrature_for(mesh.kind(), 4)?;
    let mut total = 0.0;
    for e in 0..mesh.n_elements() {
        if !interior_elems[e] {
            continue;
        }
        let conn = mesh.element(e);
        for (q, pt) in rule.points.iter().enumerate() {
            let (vals, grads) = basis.eval_vec(*pt);
            let hess = basis.eval_hessian(*pt);
            let mut jac = [[0.0; 2]; 2];
            for (a, &n) in conn.iter().enumerate() {
                let p = mesh.node(n);
                jac[0][0] += p[0] * grads[a][0];
                jac[0][1] += p[0] * grads[a][1];
                jac[1][0] += p[1] * grads[a][0];
                jac[1][1] += p[1] * grads[a][1];
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            let inv = [
                [jac[1][1] / det, -jac[0][1] / det],
                [-jac[1][0] / det, jac[0][0] / det],
            ];
            // laplacian = sum_cd H_ref[c][d] (J^-1 J^-T)[c][d].
            let m = [
                [
                    inv[0][0] * inv[0][0] + inv[0][1] * inv[0][1],
                    inv[0][0] * inv[1][0] + inv[0][1] * inv[1][1],
                ],
                [
                    inv[1][0] * inv[0][0] + inv[1][1] * inv[0][1],
                    inv[1][0] * inv[1][0] + inv[1][1] * inv[1][1],
                ],
            ];
            let mut lap = 0.0;
            let mut val = 0.0;
            for (a, &n) in conn.iter().enumerate() {
                let h = hess[a];
                lap += w.values[n] * (h[0] * m[0][0] + h[1] * (m[0][1] + m[1][0]) + h[2] * m[1][1]);
                val += w.values[n] * vals[a];
            }
            let r = lap - val / k;
            total += rule.weights[q] * det * r * r;
        }
    }
    Ok(total.sqrt())
}
