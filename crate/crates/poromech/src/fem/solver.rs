//! Sparse direct solution of the assembled systems.

use super::{DiscreteSystem, SolutionField};
use crate::{Error, Result};
use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};

const RESIDUAL_TOLERANCE: f64 = 1e-10;
const MAX_REFINEMENT: usize = 8;

/// Factors and solves the system, returning the solution field.
///
/// The matrix is symmetrically equilibrated before the sparse LU
/// factorization (saddle-point blocks scale very differently), and the
/// solution is polished by iterative refinement on the original system. The
/// relative residual must come out below 1e-10; a violation signals an
/// ill-posed system (missing gauge, incompatible boundary data) and is
/// reported as an error.
pub fn solve_steady(system: &DiscreteSystem) -> Result<SolutionField> {
    let u = solve_vector(system)?;
    // With a zero-mean gauge the bordered system stays solvable even for
    // incompatible boundary data; the inconsistency is absorbed by the
    // multiplier instead of the residual, so inspect it.
    if system.has_gauge_row {
        let lambda = u[system.n_total - 1];
        let vel_scale = u[..system.n_vel].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if lambda.abs() > 1e-8 * (1.0 + vel_scale) {
            return Err(Error::SingularSystem(format!(
                "boundary data is incompatible: the continuity equations admit no solution \
                 (gauge multiplier {lambda:.3e}); the prescribed velocity has nonzero net \
                 boundary flux"
            )));
        }
    }
    Ok(SolutionField::from_raw(system, &u))
}

/// Solves for the raw unknown vector (velocity, pressure, gauge multiplier).
pub fn solve_vector(system: &DiscreteSystem) -> Result<Vec<f64>> {
    let n = system.n_total;
    // Merge duplicate entries (assembly emits one triplet per element
    // contribution) so equilibration sees the summed matrix.
    let mut merged: Vec<(usize, usize, f64)> = system.triplets.clone();
    merged.sort_unstable_by_key(|&(i, j, _)| (j, i));
    let mut summed: Vec<(usize, usize, f64)> = Vec::with_capacity(merged.len() / 4);
    for (i, j, v) in merged {
        match summed.last_mut() {
            Some(t) if t.0 == i && t.1 == j => t.2 += v,
            _ => summed.push((i, j, v)),
        }
    }
    summed.retain(|&(_, _, v)| v != 0.0);

    // Symmetric Jacobi equilibration: scale by the row max magnitudes.
    let mut rowmax = vec![0.0f64; n];
    for &(i, _, v) in &summed {
        rowmax[i] = rowmax[i].max(v.abs());
    }
    let scale: Vec<f64> = rowmax
        .iter()
        .map(|&m| if m > 0.0 { 1.0 / m.sqrt() } else { 1.0 })
        .collect();
    let trips: Vec<Triplet<usize, usize, f64>> = summed
        .iter()
        .map(|&(i, j, v)| Triplet::new(i, j, v * scale[i] * scale[j]))
        .collect();
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trips)
        .map_err(|e| Error::Assembly(format!("matrix construction failed: {e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| {
        Error::SingularSystem(format!(
            "LU factorization failed ({e:?}); {}",
            nullspace_hint(system)
        ))
    })?;

    // Solve D K D y = D f, x = D y, then refine on the original system.
    let b = faer::Mat::<f64>::from_fn(n, 1, |i, _| system.rhs[i] * scale[i]);
    let y = lu.solve(&b);
    let mut xs: Vec<f64> = (0..n).map(|i| y[(i, 0)] * scale[i]).collect();

    let fnorm = norm2(&system.rhs);
    let mut rel = f64::INFINITY;
    for _ in 0..MAX_REFINEMENT {
        let r = system.residual(&xs);
        let rnorm = norm2(&r);
        rel = if fnorm > 0.0 { rnorm / fnorm } else { rnorm };
        if !rel.is_finite() || rel < 0.01 * RESIDUAL_TOLERANCE {
            break;
        }
        let rb = faer::Mat::<f64>::from_fn(n, 1, |i, _| -r[i] * scale[i]);
        let dy = lu.solve(&rb);
        for i in 0..n {
            xs[i] += dy[(i, 0)] * scale[i];
        }
    }
    if rel.is_finite() {
        let rnorm = norm2(&system.residual(&xs));
        rel = if fnorm > 0.0 { rnorm / fnorm } else { rnorm };
    }

    if !rel.is_finite() || rel > RESIDUAL_TOLERANCE {
        return Err(if rel.is_finite() {
            Error::NonConvergence {
                residual: rel,
                tolerance: RESIDUAL_TOLERANCE,
            }
        } else {
            Error::SingularSystem(format!(
                "solution is not finite; {}",
                nullspace_hint(system)
            ))
        });
    }
    Ok(xs)
}

fn nullspace_hint(system: &DiscreteSystem) -> String {
    if !system.has_gauge_row && !system.pin_first_pressure {
        "if every boundary segment is essential the pressure is determined only up to a \
         constant and a gauge is required"
            .to_string()
    } else {
        "the boundary data may be incompatible (nonzero net flux through an all-velocity \
         boundary) or the mesh/interpolation pairing unstable"
            .to_string()
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
