//! Assembly and solution of the mixed velocity-pressure systems.
//!
//! Velocities use the quadratic basis on all mesh nodes (Q2 on Q9 cells, P2
//! on T6 cells); pressures use the continuous linear basis on corner nodes
//! (Q1 / P1). Global dof layout: `[vx_0, vy_0, vx_1, vy_1, ..., p_0, ...]`,
//! with an optional trailing Lagrange multiplier when a zero-mean pressure
//! gauge is active.

mod assemble;
mod export;
mod field;
mod solver;
mod transient;

pub use assemble::{assemble, AssemblyOptions, DiscreteSystem, GaugeChoice};
pub use export::{write_solution_csv, write_solution_vtk};
pub use field::SolutionField;
pub use solver::{solve_steady, solve_vector};
pub use transient::{initial_state, step_transient, transient_march, ProbeSeries, TransientState};

use crate::mesh::{quadrature_for, Mesh, ShapeBasis};
use crate::model::ProblemSpec;
use crate::Result;
use std::sync::Arc;

/// Prepares the mesh for a spec (segment carving), assembles and solves the
/// steady system.
pub fn solve_problem(spec: &ProblemSpec, mesh: Mesh) -> Result<(Arc<Mesh>, SolutionField)> {
    let mesh = Arc::new(spec.prepare_mesh(mesh)?);
    let system = assemble(&mesh, spec, &AssemblyOptions::default())?;
    let solution = solve_steady(&system)?;
    Ok((mesh, solution))
}

/// Data available at one quadrature point during an element sweep.
pub(crate) struct QpData<'a> {
    pub element: usize,
    pub conn: &'a [usize],
    /// Physical coordinates of the point.
    pub x: [f64; 2],
    /// Quadrature weight times the Jacobian determinant.
    pub w: f64,
    /// Velocity-basis values.
    pub phi: &'a [f64],
    /// Velocity-basis physical gradients.
    pub grad_phi: &'a [[f64; 2]],
    /// Pressure-basis values (corner nodes of the element).
    pub psi: &'a [f64],
    /// Pressure-basis physical gradients.
    pub grad_psi: &'a [[f64; 2]],
    /// Element diameter (used for stabilization scaling).
    pub h_elem: f64,
}

/// Walks all quadrature points of all elements, with velocity and pressure
/// basis data evaluated in physical coordinates.
///
/// The quadrature `degree` must integrate the products of quadratic bases;
/// both assembly and the verification functionals run on degree 4 or higher.
pub(crate) fn for_each_quadrature_point(
    mesh: &Mesh,
    degree: usize,
    mut f: impl FnMut(&QpData<'_>) -> Result<()>,
) -> Result<()> {
    for_each_quadrature_point_ordered(mesh, degree, false, &mut f)
}

pub(crate) fn for_each_quadrature_point_ordered(
    mesh: &Mesh,
    degree: usize,
    reverse: bool,
    f: &mut impl FnMut(&QpData<'_>) -> Result<()>,
) -> Result<()> {
    let vel_basis = ShapeBasis::new(mesh.kind(), 2);
    let pres_basis = ShapeBasis::new(mesh.kind(), 1);
    let rule = quadrature_for(mesh.kind(), degree)?;
    let nv = vel_basis.len();
    let np = pres_basis.len();

    // Reference-space basis tables, shared by every element.
    let mut phi_tab = vec![vec![0.0; nv]; rule.len()];
    let mut dphi_tab = vec![vec![[0.0; 2]; nv]; rule.len()];
    let mut psi_tab = vec![vec![0.0; np]; rule.len()];
    let mut dpsi_tab = vec![vec![[0.0; 2]; np]; rule.len()];
    for (q, pt) in rule.points.iter().enumerate() {
        vel_basis.eval(*pt, &mut phi_tab[q], &mut dphi_tab[q]);
        pres_basis.eval(*pt, &mut psi_tab[q], &mut dpsi_tab[q]);
    }

    let mut grad_phi = vec![[0.0; 2]; nv];
    let mut grad_psi = vec![[0.0; 2]; np];
    let elems: Vec<usize> = if reverse {
        (0..mesh.n_elements()).rev().collect()
    } else {
        (0..mesh.n_elements()).collect()
    };
    for e in elems {
        let conn = mesh.element(e);
        let h_elem = element_diameter(mesh, conn);
        for q in 0..rule.len() {
            // Jacobian of the isoparametric map.
            let mut jac = [[0.0; 2]; 2];
            let mut x = [0.0; 2];
            for (a, &n) in conn.iter().enumerate() {
                let p = mesh.node(n);
                let g = dphi_tab[q][a];
                jac[0][0] += p[0] * g[0];
                jac[0][1] += p[0] * g[1];
                jac[1][0] += p[1] * g[0];
                jac[1][1] += p[1] * g[1];
                x[0] += phi_tab[q][a] * p[0];
                x[1] += phi_tab[q][a] * p[1];
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            debug_assert!(det > 0.0, "non-positive Jacobian in element {e}");
            let inv = [
                [jac[1][1] / det, -jac[0][1] / det],
                [-jac[1][0] / det, jac[0][0] / det],
            ];
            // d/dx_r = sum_c dref_c * inv[c][r]
            for a in 0..nv {
                let g = dphi_tab[q][a];
                grad_phi[a] = [
                    g[0] * inv[0][0] + g[1] * inv[1][0],
                    g[0] * inv[0][1] + g[1] * inv[1][1],
                ];
            }
            for m in 0..np {
                let g = dpsi_tab[q][m];
                grad_psi[m] = [
                    g[0] * inv[0][0] + g[1] * inv[1][0],
                    g[0] * inv[0][1] + g[1] * inv[1][1],
                ];
            }
            f(&QpData {
                element: e,
                conn,
                x,
                w: rule.weights[q] * det,
                phi: &phi_tab[q],
                grad_phi: &grad_phi,
                psi: &psi_tab[q],
                grad_psi: &grad_psi,
                h_elem,
            })?;
        }
    }
    Ok(())
}

// Element size h: the largest bounding-box extent. For squares this is the
// side length, for right-isosceles triangles the leg length, matching the
// h convention used for the meshes.
fn element_diameter(mesh: &Mesh, conn: &[usize]) -> f64 {
    let nc = mesh.kind().corners();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &n in conn.iter().take(nc) {
        let p = mesh.node(n);
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    (x1 - x0).max(y1 - y0)
}

/// 1D quadratic Lagrange basis on an edge, nodes at t = 0, 1/2, 1 in the
/// order (corner, midside, corner).
pub(crate) fn edge_shape(t: f64) -> [f64; 3] {
    [
        (2.0 * t - 1.0) * (t - 1.0),
        4.0 * t * (1.0 - t),
        t * (2.0 * t - 1.0),
    ]
}

/// Geometry of one straight boundary edge: end points, unit outward normal
/// and length. Node order matches [`Mesh::edge_nodes`].
pub(crate) struct EdgeGeometry {
    pub nodes: [usize; 3],
    pub start: [f64; 2],
    pub dir: [f64; 2],
    pub normal: [f64; 2],
    pub length: f64,
}

pub(crate) fn edge_geometry(mesh: &Mesh, element: usize, local_edge: usize) -> EdgeGeometry {
    let nodes = mesh.edge_nodes(element, local_edge);
    let a = mesh.node(nodes[0]);
    let b = mesh.node(nodes[2]);
    let d = [b[0] - a[0], b[1] - a[1]];
    let length = (d[0] * d[0] + d[1] * d[1]).sqrt();
    let t = [d[0] / length, d[1] / length];
    // Elements are counter-clockwise, so the outward normal is the tangent
    // rotated clockwise.
    EdgeGeometry {
        nodes,
        start: a,
        dir: d,
        normal: [t[1], -t[0]],
        length,
    }
}
