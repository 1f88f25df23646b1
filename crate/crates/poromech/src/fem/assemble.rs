//! Global assembly of the mixed systems.
//!
//! Darcy uses a symmetric residual-based stabilization: the Galerkin form is
//! augmented with `-sum_K tau_K (alpha w + grad q) . (alpha v + grad p - F)`
//! with `tau_K = h_K^2 / alpha`, which contributes the pressure-Poisson block
//! `-(h^2/alpha) grad p . grad q` while keeping the matrix symmetric and the
//! formulation consistent. Darcy-Brinkman with Q2/Q1 (Taylor-Hood) pairs is
//! inf-sup stable and is assembled without stabilization.

use super::{edge_geometry, edge_shape, for_each_quadrature_point_ordered};
use crate::mesh::{edge_rule, Mesh, Side};
use crate::model::{BcKind, ModelKind, ProblemSpec};
use crate::{Error, Result};
use std::sync::Arc;

/// Pressure gauge selection for problems without natural boundary segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GaugeChoice {
    /// Zero-mean constraint when needed, nothing otherwise.
    #[default]
    Auto,
    /// Force the zero-mean Lagrange multiplier.
    ZeroMean,
    /// Pin the first pressure dof to zero.
    PinFirst,
    /// No gauge even if the problem looks all-essential.
    None,
}

/// Assembly controls; the defaults produce the steady system at t = 0.
#[derive(Clone, Default)]
pub struct AssemblyOptions {
    /// Evaluation time for boundary data and the body force.
    pub time: f64,
    /// Backward-Euler shift rho/dt added to the drag coefficient.
    pub alpha_shift: f64,
    /// Previous-step velocity coefficients (transient runs).
    pub prev_velocity: Option<Arc<Vec<f64>>>,
    pub gauge: GaugeChoice,
    /// Assemble elements in reverse order (used by the uniqueness checks;
    /// the result must agree with forward order to roundoff).
    pub reverse_traversal: bool,
}

/// The assembled linear system in triplet form, Dirichlet constraints
/// already eliminated symmetrically.
pub struct DiscreteSystem {
    pub mesh: Arc<Mesh>,
    pub model: ModelKind,
    pub n_vel: usize,
    pub n_pres: usize,
    /// Total unknowns including the gauge multiplier, when present.
    pub n_total: usize,
    pub has_gauge_row: bool,
    pub pin_first_pressure: bool,
    pub(crate) triplets: Vec<(usize, usize, f64)>,
    pub(crate) rhs: Vec<f64>,
    /// Prescribed values for constrained velocity dofs.
    pub(crate) dirichlet: Vec<Option<f64>>,
}

impl DiscreteSystem {
    pub fn n_unknowns(&self) -> usize {
        self.n_total
    }

    /// Dense copy of the (small) assembled matrix, for tests.
    pub fn dense(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n_total]; self.n_total];
        for &(i, j, v) in &self.triplets {
            m[i][j] += v;
        }
        m
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    /// Residual `K u - f` of the assembled system at a given vector.
    pub fn residual(&self, u: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; self.n_total];
        for &(i, j, v) in &self.triplets {
            r[i] += v * u[j];
        }
        for i in 0..self.n_total {
            r[i] -= self.rhs[i];
        }
        r
    }
}

/// Assembles the steady (or shifted transient) system for `spec` on `mesh`.
///
/// The mesh must already carry the spec's segment tags (see
/// [`ProblemSpec::prepare_mesh`]).
pub fn assemble(
    mesh: &Arc<Mesh>,
    spec: &ProblemSpec,
    opts: &AssemblyOptions,
) -> Result<DiscreteSystem> {
    spec.validate(mesh)?;
    let n_nodes = mesh.n_nodes();
    let n_vel = 2 * n_nodes;
    let n_pres = mesh.corner_nodes().len();
    let use_gauge = match opts.gauge {
        GaugeChoice::Auto => spec.needs_pressure_gauge(),
        GaugeChoice::ZeroMean => true,
        GaugeChoice::PinFirst | GaugeChoice::None => false,
    };
    let pin_first = opts.gauge == GaugeChoice::PinFirst;
    let n_total = n_vel + n_pres + usize::from(use_gauge);
    let pdof = |k: usize| n_vel + k;

    let mu = spec.fluid.mu;
    let rho = spec.fluid.rho;
    let brinkman = spec.model == ModelKind::DarcyBrinkman;
    let shift = opts.alpha_shift;
    let prev = opts.prev_velocity.as_deref();
    if let Some(p) = prev {
        if p.len() != n_vel {
            return Err(Error::Assembly(format!(
                "previous velocity has {} entries, expected {n_vel}",
                p.len()
            )));
        }
    }

    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    let mut rhs = vec![0.0; n_total];
    let mut gauge_weights = vec![0.0; n_pres];

    for_each_quadrature_point_ordered(mesh, 4, opts.reverse_traversal, &mut |qp| {
        let nv = qp.phi.len();
        let np = qp.psi.len();
        let alpha = spec.alpha(qp.x)? + shift;
        if !(alpha > 0.0) {
            return Err(Error::Assembly(format!(
                "drag coefficient must be positive, got {alpha} at {:?}",
                qp.x
            )));
        }
        let w = qp.w;
        // Effective force: rho b + (rho/dt) v_prev.
        let b = (spec.body_force.eval)(qp.x, opts.time);
        let mut force = [rho * b[0], rho * b[1]];
        if let Some(prev) = prev {
            let mut vp = [0.0; 2];
            for (a, &n) in qp.conn.iter().enumerate() {
                vp[0] += qp.phi[a] * prev[2 * n];
                vp[1] += qp.phi[a] * prev[2 * n + 1];
            }
            force[0] += shift * vp[0];
            force[1] += shift * vp[1];
        }
        // tau h^2 / alpha stabilization for Darcy only.
        let tau = if brinkman {
            0.0
        } else {
            qp.h_elem * qp.h_elem / alpha
        };
        let mass_coeff = alpha - tau * alpha * alpha;

        for i in 0..nv {
            let gi = 2 * qp.conn[i];
            let rhs_scale = w * qp.phi[i] * (1.0 - tau * alpha);
            rhs[gi] += rhs_scale * force[0];
            rhs[gi + 1] += rhs_scale * force[1];
            for j in 0..nv {
                let gj = 2 * qp.conn[j];
                let m = w * mass_coeff * qp.phi[i] * qp.phi[j];
                if brinkman {
                    let gg = qp.grad_phi[i][0] * qp.grad_phi[j][0]
                        + qp.grad_phi[i][1] * qp.grad_phi[j][1];
                    for a in 0..2 {
                        for bdir in 0..2 {
                            let mut k = w * mu * qp.grad_phi[i][bdir] * qp.grad_phi[j][a];
                            if a == bdir {
                                k += w * mu * gg + m;
                            }
                            triplets.push((gi + a, gj + bdir, k));
                        }
                    }
                } else {
                    triplets.push((gi, gj, m));
                    triplets.push((gi + 1, gj + 1, m));
                }
            }
            for mp in 0..np {
                let k = mesh
                    .corner_index(qp.conn[mp])
                    .expect("pressure basis node is a corner");
                let col = pdof(k);
                for a in 0..2 {
                    let mut c = -w * qp.psi[mp] * qp.grad_phi[i][a];
                    if tau != 0.0 {
                        c -= w * tau * alpha * qp.phi[i] * qp.grad_psi[mp][a];
                    }
                    triplets.push((gi + a, col, c));
                    triplets.push((col, gi + a, c));
                }
            }
        }
        if tau != 0.0 {
            for mp in 0..np {
                let km = mesh.corner_index(qp.conn[mp]).unwrap();
                rhs[pdof(km)] -=
                    w * tau * (qp.grad_psi[mp][0] * force[0] + qp.grad_psi[mp][1] * force[1]);
                for npp in 0..np {
                    let kn = mesh.corner_index(qp.conn[npp]).unwrap();
                    let c = -w
                        * tau
                        * (qp.grad_psi[mp][0] * qp.grad_psi[npp][0]
                            + qp.grad_psi[mp][1] * qp.grad_psi[npp][1]);
                    triplets.push((pdof(km), pdof(kn), c));
                }
            }
        }
        if use_gauge {
            for mp in 0..np {
                let km = mesh.corner_index(qp.conn[mp]).unwrap();
                gauge_weights[km] += w * qp.psi[mp];
            }
        }
        Ok(())
    })?;

    // Natural boundary terms.
    let (ts, tw) = edge_rule(3);
    for be in mesh.boundary_edges() {
        let bc = &spec.bcs[&be.tag];
        let geo = edge_geometry(mesh, be.element, be.local_edge);
        match bc {
            BcKind::Traction(f) => {
                for (q, &t) in ts.iter().enumerate() {
                    let x = [geo.start[0] + t * geo.dir[0], geo.start[1] + t * geo.dir[1]];
                    let tr = f(x, opts.time);
                    let n1 = edge_shape(t);
                    let w = tw[q] * geo.length;
                    for (i, &node) in geo.nodes.iter().enumerate() {
                        rhs[2 * node] += w * n1[i] * tr[0];
                        rhs[2 * node + 1] += w * n1[i] * tr[1];
                    }
                }
            }
            BcKind::Pressure(f) => {
                for (q, &t) in ts.iter().enumerate() {
                    let x = [geo.start[0] + t * geo.dir[0], geo.start[1] + t * geo.dir[1]];
                    let p0 = f(x, opts.time);
                    let n1 = edge_shape(t);
                    let w = tw[q] * geo.length;
                    for (i, &node) in geo.nodes.iter().enumerate() {
                        rhs[2 * node] -= w * n1[i] * p0 * geo.normal[0];
                        rhs[2 * node + 1] -= w * n1[i] * p0 * geo.normal[1];
                    }
                }
            }
            _ => {}
        }
    }

    // Essential constraints, in ascending tag order so the last tag wins at
    // shared corner nodes.
    let mut dirichlet: Vec<Option<f64>> = vec![None; n_total];
    for (tag, bc) in &spec.bcs {
        if !bc.is_essential() {
            continue;
        }
        for be in mesh.boundary_edges().iter().filter(|b| &b.tag == tag) {
            let geo = edge_geometry(mesh, be.element, be.local_edge);
            for &node in &geo.nodes {
                let x = mesh.node(node);
                match bc {
                    BcKind::VelocityVector(f) => {
                        let v = f(x, opts.time);
                        dirichlet[2 * node] = Some(v[0]);
                        dirichlet[2 * node + 1] = Some(v[1]);
                    }
                    BcKind::NormalVelocity(f) => {
                        let vn = f(x, opts.time);
                        let (comp, sign) = match be.side {
                            Side::Left | Side::Right => (0, be.side.normal()[0]),
                            Side::Bottom | Side::Top => (1, be.side.normal()[1]),
                        };
                        dirichlet[2 * node + comp] = Some(vn * sign);
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
    if pin_first {
        dirichlet[pdof(0)] = Some(0.0);
    }

    // Zero-mean pressure gauge via a bordered Lagrange multiplier row.
    if use_gauge {
        let g = n_total - 1;
        for (k, &wk) in gauge_weights.iter().enumerate() {
            triplets.push((g, pdof(k), wk));
            triplets.push((pdof(k), g, wk));
        }
    }

    // Symmetric elimination of the constraints.
    let mut reduced: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
    for &(i, j, v) in &triplets {
        match (dirichlet[i], dirichlet[j]) {
            (Some(_), _) => {}
            (None, Some(val)) => rhs[i] -= v * val,
            (None, None) => reduced.push((i, j, v)),
        }
    }
    for (i, d) in dirichlet.iter().enumerate() {
        if let Some(val) = d {
            reduced.push((i, i, 1.0));
            rhs[i] = *val;
        }
    }

    Ok(DiscreteSystem {
        mesh: mesh.clone(),
        model: spec.model,
        n_vel,
        n_pres,
        n_total,
        has_gauge_row: use_gauge,
        pin_first_pressure: pin_first,
        triplets: reduced,
        rhs,
        dirichlet,
    })
}
