//! Solution fields and derived pointwise quantities.

use super::{for_each_quadrature_point, DiscreteSystem};
use crate::mesh::{Mesh, ShapeBasis};
use crate::model::{ModelKind, ProblemSpec};
use crate::Result;
use std::sync::Arc;

/// A solved velocity-pressure field on a mesh.
///
/// Velocity coefficients are stored interleaved `[vx_0, vy_0, vx_1, ...]` on
/// all nodes; pressure coefficients follow the order of
/// [`Mesh::corner_nodes`]. Immutable once produced.
#[derive(Clone, Debug)]
pub struct SolutionField {
    pub mesh: Arc<Mesh>,
    pub model: ModelKind,
    pub velocity: Vec<f64>,
    pub pressure: Vec<f64>,
    /// Time stamp for transient snapshots.
    pub time: Option<f64>,
}

impl SolutionField {
    pub(crate) fn from_raw(system: &DiscreteSystem, u: &[f64]) -> SolutionField {
        let mut velocity = u[..system.n_vel].to_vec();
        // Constrained coefficients carry the prescribed values exactly.
        for (dof, d) in system.dirichlet.iter().enumerate().take(system.n_vel) {
            if let Some(val) = d {
                velocity[dof] = *val;
            }
        }
        let pressure = u[system.n_vel..system.n_vel + system.n_pres].to_vec();
        SolutionField {
            mesh: system.mesh.clone(),
            model: system.model,
            velocity,
            pressure,
            time: None,
        }
    }

    /// Builds a field directly from nodal data (initial conditions, tests).
    pub fn from_nodal(
        mesh: &Arc<Mesh>,
        model: ModelKind,
        velocity: Vec<f64>,
        pressure: Vec<f64>,
    ) -> SolutionField {
        assert_eq!(velocity.len(), 2 * mesh.n_nodes());
        assert_eq!(pressure.len(), mesh.corner_nodes().len());
        SolutionField {
            mesh: mesh.clone(),
            model,
            velocity,
            pressure,
            time: None,
        }
    }

    /// Interpolates an analytic velocity field onto the nodes.
    pub fn interpolate_velocity(
        mesh: &Arc<Mesh>,
        model: ModelKind,
        f: impl Fn([f64; 2]) -> [f64; 2],
    ) -> SolutionField {
        let mut velocity = vec![0.0; 2 * mesh.n_nodes()];
        for i in 0..mesh.n_nodes() {
            let v = f(mesh.node(i));
            velocity[2 * i] = v[0];
            velocity[2 * i + 1] = v[1];
        }
        let pressure = vec![0.0; mesh.corner_nodes().len()];
        SolutionField {
            mesh: mesh.clone(),
            model,
            velocity,
            pressure,
            time: None,
        }
    }

    pub fn velocity_at_node(&self, node: usize) -> [f64; 2] {
        [self.velocity[2 * node], self.velocity[2 * node + 1]]
    }

    /// Velocity and pressure by isoparametric interpolation at `x`.
    pub fn evaluate(&self, x: [f64; 2]) -> Result<([f64; 2], f64)> {
        let (elem, xi) = self.mesh.locate(x)?;
        let vel_basis = ShapeBasis::new(self.mesh.kind(), 2);
        let pres_basis = ShapeBasis::new(self.mesh.kind(), 1);
        let (phi, _) = vel_basis.eval_vec(xi);
        let (psi, _) = pres_basis.eval_vec(xi);
        let conn = self.mesh.element(elem);
        let mut v = [0.0; 2];
        for (a, &n) in conn.iter().enumerate() {
            v[0] += phi[a] * self.velocity[2 * n];
            v[1] += phi[a] * self.velocity[2 * n + 1];
        }
        let mut p = 0.0;
        for (m, &val) in psi.iter().enumerate() {
            let k = self.mesh.corner_index(conn[m]).expect("corner node");
            p += val * self.pressure[k];
        }
        Ok((v, p))
    }

    /// The velocity gradient (d v_i / d x_j) at `x`.
    pub fn velocity_gradient(&self, x: [f64; 2]) -> Result<[[f64; 2]; 2]> {
        let (elem, xi) = self.mesh.locate(x)?;
        let vel_basis = ShapeBasis::new(self.mesh.kind(), 2);
        let (_, dphi) = vel_basis.eval_vec(xi);
        let conn = self.mesh.element(elem);
        // Jacobian of the isoparametric map at xi.
        let mut jac = [[0.0; 2]; 2];
        for (a, &n) in conn.iter().enumerate() {
            let p = self.mesh.node(n);
            jac[0][0] += p[0] * dphi[a][0];
            jac[0][1] += p[0] * dphi[a][1];
            jac[1][0] += p[1] * dphi[a][0];
            jac[1][1] += p[1] * dphi[a][1];
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        let inv = [
            [jac[1][1] / det, -jac[0][1] / det],
            [-jac[1][0] / det, jac[0][0] / det],
        ];
        let mut grad = [[0.0; 2]; 2];
        for (a, &n) in conn.iter().enumerate() {
            let g = [
                dphi[a][0] * inv[0][0] + dphi[a][1] * inv[1][0],
                dphi[a][0] * inv[0][1] + dphi[a][1] * inv[1][1],
            ];
            for i in 0..2 {
                for j in 0..2 {
                    grad[i][j] += self.velocity[2 * n + i] * g[j];
                }
            }
        }
        Ok(grad)
    }

    /// Symmetric part of the velocity gradient at `x`.
    pub fn strain_rate(&self, x: [f64; 2]) -> Result<[[f64; 2]; 2]> {
        let g = self.velocity_gradient(x)?;
        Ok([
            [g[0][0], 0.5 * (g[0][1] + g[1][0])],
            [0.5 * (g[0][1] + g[1][0]), g[1][1]],
        ])
    }

    /// Cauchy stress at `x`: `-p I` for Darcy, `-p I + 2 mu D` for
    /// Darcy-Brinkman.
    pub fn cauchy_stress(&self, spec: &ProblemSpec, x: [f64; 2]) -> Result<[[f64; 2]; 2]> {
        let (_, p) = self.evaluate(x)?;
        let mut t = [[-p, 0.0], [0.0, -p]];
        if self.model == ModelKind::DarcyBrinkman {
            let d = self.strain_rate(x)?;
            for i in 0..2 {
                for j in 0..2 {
                    t[i][j] += 2.0 * spec.fluid.mu * d[i][j];
                }
            }
        }
        Ok(t)
    }

    /// Net outward flux through all boundary edges carrying `tag`
    /// (Simpson on the quadratic edge trace, which is exact).
    pub fn boundary_flux(&self, tag: &str) -> Result<f64> {
        let mesh = &self.mesh;
        let mut total = 0.0;
        for be in mesh.boundary_edges().iter().filter(|b| b.tag == tag) {
            let geo = super::edge_geometry(mesh, be.element, be.local_edge);
            let f = |node: usize| {
                self.velocity[2 * node] * geo.normal[0]
                    + self.velocity[2 * node + 1] * geo.normal[1]
            };
            let [a, m, b] = geo.nodes;
            total += geo.length / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        }
        Ok(total)
    }

    /// Global divergence integral over the domain (discrete mass balance).
    pub fn divergence_integral(&self) -> Result<f64> {
        let mut total = 0.0;
        for_each_quadrature_point(&self.mesh, 4, |qp| {
            let mut div = 0.0;
            for (a, &n) in qp.conn.iter().enumerate() {
                div += qp.grad_phi[a][0] * self.velocity[2 * n]
                    + qp.grad_phi[a][1] * self.velocity[2 * n + 1];
            }
            total += qp.w * div;
            Ok(())
        })?;
        Ok(total)
    }

    /// L2 norm of the velocity field.
    pub fn velocity_l2(&self) -> Result<f64> {
        let mut total = 0.0;
        for_each_quadrature_point(&self.mesh, 4, |qp| {
            let mut v = [0.0; 2];
            for (a, &n) in qp.conn.iter().enumerate() {
                v[0] += qp.phi[a] * self.velocity[2 * n];
                v[1] += qp.phi[a] * self.velocity[2 * n + 1];
            }
            total += qp.w * (v[0] * v[0] + v[1] * v[1]);
            Ok(())
        })?;
        Ok(total.sqrt())
    }

    /// L2 norm of the difference to another field on the same mesh.
    pub fn velocity_l2_difference(&self, other: &SolutionField) -> Result<f64> {
        assert_eq!(self.velocity.len(), other.velocity.len());
        let mut total = 0.0;
        for_each_quadrature_point(&self.mesh, 4, |qp| {
            let mut v = [0.0; 2];
            for (a, &n) in qp.conn.iter().enumerate() {
                v[0] += qp.phi[a] * (self.velocity[2 * n] - other.velocity[2 * n]);
                v[1] += qp.phi[a] * (self.velocity[2 * n + 1] - other.velocity[2 * n + 1]);
            }
            total += qp.w * (v[0] * v[0] + v[1] * v[1]);
            Ok(())
        })?;
        Ok(total.sqrt())
    }
}
