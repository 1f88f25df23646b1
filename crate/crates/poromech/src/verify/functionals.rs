//! The dissipation and total mechanical power functionals.

use crate::fem::SolutionField;
use crate::fem::{edge_geometry, edge_shape, for_each_quadrature_point};
use crate::mesh::{edge_rule, Mesh};
use crate::model::{BcKind, ModelKind, ProblemSpec};
use crate::{Error, Result};

fn check_model(solution: &SolutionField, spec: &ProblemSpec) -> Result<()> {
    if solution.model != spec.model {
        return Err(Error::ModelMismatch {
            expected: spec.model.name().to_string(),
            got: solution.model.name().to_string(),
        });
    }
    Ok(())
}

/// Dissipation of a nodal velocity vector on a mesh:
/// `int alpha v.v` plus, for Darcy-Brinkman, `int 2 mu D(v).D(v)`.
pub fn dissipation_of_velocity(mesh: &Mesh, velocity: &[f64], spec: &ProblemSpec) -> Result<f64> {
    let mu = spec.fluid.mu;
    let brinkman = spec.model == ModelKind::DarcyBrinkman;
    let mut total = 0.0;
    for_each_quadrature_point(mesh, 4, |qp| {
        let alpha = spec.alpha(qp.x)?;
        let mut v = [0.0; 2];
        let mut grad = [[0.0; 2]; 2];
        for (a, &n) in qp.conn.iter().enumerate() {
            let vx = velocity[2 * n];
            let vy = velocity[2 * n + 1];
            v[0] += qp.phi[a] * vx;
            v[1] += qp.phi[a] * vy;
            if brinkman {
                for j in 0..2 {
                    grad[0][j] += vx * qp.grad_phi[a][j];
                    grad[1][j] += vy * qp.grad_phi[a][j];
                }
            }
        }
        let mut integrand = alpha * (v[0] * v[0] + v[1] * v[1]);
        if brinkman {
            let d = [
                [grad[0][0], 0.5 * (grad[0][1] + grad[1][0])],
                [0.5 * (grad[0][1] + grad[1][0]), grad[1][1]],
            ];
            let dd = d[0][0] * d[0][0] + 2.0 * d[0][1] * d[0][1] + d[1][1] * d[1][1];
            integrand += 2.0 * mu * dd;
        }
        total += qp.w * integrand;
        Ok(())
    })?;
    Ok(total)
}

/// Dissipation functional of a solution.
pub fn dissipation(solution: &SolutionField, spec: &ProblemSpec) -> Result<f64> {
    check_model(solution, spec)?;
    dissipation_of_velocity(&solution.mesh, &solution.velocity, spec)
}

/// Cross-dissipation of two fields:
/// `int alpha v1.v2 (+ int 2 mu D1.D2)`. This is the common value both sides
/// of the reciprocal relation reduce to.
pub fn cross_dissipation(
    sol1: &SolutionField,
    sol2: &SolutionField,
    spec: &ProblemSpec,
) -> Result<f64> {
    check_model(sol1, spec)?;
    check_model(sol2, spec)?;
    let mu = spec.fluid.mu;
    let brinkman = spec.model == ModelKind::DarcyBrinkman;
    let mesh = &sol1.mesh;
    let mut total = 0.0;
    for_each_quadrature_point(mesh, 4, |qp| {
        let alpha = spec.alpha(qp.x)?;
        let mut v1 = [0.0; 2];
        let mut v2 = [0.0; 2];
        let mut g1 = [[0.0; 2]; 2];
        let mut g2 = [[0.0; 2]; 2];
        for (a, &n) in qp.conn.iter().enumerate() {
            for c in 0..2 {
                v1[c] += qp.phi[a] * sol1.velocity[2 * n + c];
                v2[c] += qp.phi[a] * sol2.velocity[2 * n + c];
                if brinkman {
                    for j in 0..2 {
                        g1[c][j] += sol1.velocity[2 * n + c] * qp.grad_phi[a][j];
                        g2[c][j] += sol2.velocity[2 * n + c] * qp.grad_phi[a][j];
                    }
                }
            }
        }
        let mut integrand = alpha * (v1[0] * v2[0] + v1[1] * v2[1]);
        if brinkman {
            let d1 = [
                [g1[0][0], 0.5 * (g1[0][1] + g1[1][0])],
                [0.5 * (g1[0][1] + g1[1][0]), g1[1][1]],
            ];
            let d2 = [
                [g2[0][0], 0.5 * (g2[0][1] + g2[1][0])],
                [0.5 * (g2[0][1] + g2[1][0]), g2[1][1]],
            ];
            integrand +=
                2.0 * mu * (d1[0][0] * d2[0][0] + 2.0 * d1[0][1] * d2[0][1] + d1[1][1] * d2[1][1]);
        }
        total += qp.w * integrand;
        Ok(())
    })?;
    Ok(total)
}

/// Work of the body force against a velocity vector: `int rho b . v`.
pub(crate) fn body_force_work(
    mesh: &Mesh,
    velocity: &[f64],
    spec: &ProblemSpec,
    time: f64,
) -> Result<f64> {
    let rho = spec.fluid.rho;
    let mut total = 0.0;
    for_each_quadrature_point(mesh, 4, |qp| {
        let b = (spec.body_force.eval)(qp.x, time);
        let mut v = [0.0; 2];
        for (a, &n) in qp.conn.iter().enumerate() {
            v[0] += qp.phi[a] * velocity[2 * n];
            v[1] += qp.phi[a] * velocity[2 * n + 1];
        }
        total += qp.w * rho * (b[0] * v[0] + b[1] * v[1]);
        Ok(())
    })?;
    Ok(total)
}

/// Boundary work on the natural segments: `int_Gt t^p . v` for
/// Darcy-Brinkman, `-int_Gt p0 v.n` for Darcy, evaluated with the prescribed
/// data.
pub(crate) fn boundary_work(
    mesh: &Mesh,
    velocity: &[f64],
    spec: &ProblemSpec,
    time: f64,
) -> Result<f64> {
    let (ts, tw) = edge_rule(3);
    let mut total = 0.0;
    for be in mesh.boundary_edges() {
        let bc = spec.bcs.get(&be.tag).ok_or_else(|| {
            Error::InvalidProblem(format!("no boundary condition for segment `{}`", be.tag))
        })?;
        if bc.is_essential() {
            continue;
        }
        let geo = edge_geometry(mesh, be.element, be.local_edge);
        for (q, &t) in ts.iter().enumerate() {
            let x = [geo.start[0] + t * geo.dir[0], geo.start[1] + t * geo.dir[1]];
            let n1 = edge_shape(t);
            let mut v = [0.0; 2];
            for (i, &node) in geo.nodes.iter().enumerate() {
                v[0] += n1[i] * velocity[2 * node];
                v[1] += n1[i] * velocity[2 * node + 1];
            }
            let w = tw[q] * geo.length;
            match bc {
                BcKind::Traction(f) => {
                    let tr = f(x, time);
                    total += w * (tr[0] * v[0] + tr[1] * v[1]);
                }
                BcKind::Pressure(f) => {
                    let p0 = f(x, time);
                    total -= w * p0 * (v[0] * geo.normal[0] + v[1] * geo.normal[1]);
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(total)
}

/// Total mechanical power of a nodal velocity vector:
/// `1/2 Phi - int rho b . v - int_Gt t^p . v` (Darcy-Brinkman) or
/// `1/2 Phi - int rho b . v + int_Gt p0 v.n` (Darcy).
pub fn total_mechanical_power_of_velocity(
    mesh: &Mesh,
    velocity: &[f64],
    spec: &ProblemSpec,
) -> Result<f64> {
    let phi = dissipation_of_velocity(mesh, velocity, spec)?;
    let body = body_force_work(mesh, velocity, spec, 0.0)?;
    let boundary = boundary_work(mesh, velocity, spec, 0.0)?;
    Ok(0.5 * phi - body - boundary)
}

/// Total mechanical power of a solution.
pub fn total_mechanical_power(solution: &SolutionField, spec: &ProblemSpec) -> Result<f64> {
    check_model(solution, spec)?;
    total_mechanical_power_of_velocity(&solution.mesh, &solution.velocity, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::SolutionField;
    use crate::mesh::{build_quad_mesh, build_tri_mesh};
    use crate::model::{benchmark, Overrides};
    use std::sync::Arc;

    #[test]
    fn zero_field_has_zero_phi_and_tmp() {
        let spec = benchmark("body_force", &Overrides::default()).unwrap();
        let mesh = Arc::new(build_quad_mesh(4, 4, spec.domain).unwrap());
        let field = SolutionField::interpolate_velocity(&mesh, spec.model, |_| [0.0, 0.0]);
        assert_eq!(dissipation(&field, &spec).unwrap(), 0.0);
        assert_eq!(total_mechanical_power(&field, &spec).unwrap(), 0.0);
    }

    #[test]
    fn constant_darcy_field_on_unit_square() {
        // alpha = 1, v = (1, 0) on the unit square: Phi = 1.
        let spec = benchmark("body_force", &Overrides::default()).unwrap();
        for mesh in [
            Arc::new(build_quad_mesh(3, 5, spec.domain).unwrap()),
            Arc::new(build_tri_mesh(4, 4, spec.domain).unwrap()),
        ] {
            let field = SolutionField::interpolate_velocity(&mesh, spec.model, |_| [1.0, 0.0]);
            let phi = dissipation(&field, &spec).unwrap();
            assert!((phi - 1.0).abs() < 1e-13, "{phi}");
        }
    }

    #[test]
    fn phi_is_quadratic_in_scaling() {
        let spec = benchmark("body_force", &Overrides::default()).unwrap();
        let mesh = Arc::new(build_quad_mesh(4, 4, spec.domain).unwrap());
        let f1 = SolutionField::interpolate_velocity(&mesh, spec.model, |x| {
            [x[0] * x[1], -x[1] + 0.3 * x[0] * x[0]]
        });
        let mut f3 = f1.clone();
        for v in &mut f3.velocity {
            *v *= 3.0;
        }
        let p1 = dissipation(&f1, &spec).unwrap();
        let p3 = dissipation(&f3, &spec).unwrap();
        assert!((p3 - 9.0 * p1).abs() < 1e-12 * p1.max(1.0), "{p1} {p3}");
    }

    #[test]
    fn model_mismatch_rejected() {
        let spec = benchmark("body_force", &Overrides::default()).unwrap();
        let mesh = Arc::new(build_quad_mesh(2, 2, spec.domain).unwrap());
        let field = SolutionField::interpolate_velocity(
            &mesh,
            crate::model::ModelKind::DarcyBrinkman,
            |_| [0.0, 0.0],
        );
        assert!(dissipation(&field, &spec).is_err());
    }
}
