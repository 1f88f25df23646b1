//! Backward-Euler time stepping for the unsteady equations.
//!
//! One step solves the steady operator with the drag coefficient shifted by
//! rho/dt and the body force augmented with (rho/dt) v^n, which is exactly
//! the backward-Euler discretization of the unsteady momentum balance.

use super::{assemble, solve_steady, AssemblyOptions, SolutionField};
use crate::mesh::Mesh;
use crate::model::ProblemSpec;
use crate::{Error, Result};
use std::sync::Arc;

/// Rolling state of a transient march.
#[derive(Clone, Debug)]
pub struct TransientState {
    pub solution: SolutionField,
    /// Velocity coefficients of the previous accepted step.
    pub prev_velocity: Arc<Vec<f64>>,
    pub step: usize,
    pub dt: f64,
}

impl TransientState {
    pub fn time(&self) -> f64 {
        self.step as f64 * self.dt
    }
}

/// Builds the t = 0 state by interpolating the initial velocity at the
/// nodes; the pressure starts at zero (it is not used by the march).
pub fn initial_state(mesh: &Arc<Mesh>, spec: &ProblemSpec) -> Result<TransientState> {
    let tr = spec
        .transient
        .as_ref()
        .ok_or_else(|| Error::InvalidProblem("transient options missing".into()))?;
    if !(tr.dt > 0.0) {
        return Err(Error::InvalidProblem(format!(
            "time step {} must be positive",
            tr.dt
        )));
    }
    let v0 = tr.v0.clone();
    let mut solution = SolutionField::interpolate_velocity(mesh, spec.model, move |x| v0(x));
    solution.time = Some(0.0);
    let prev = Arc::new(solution.velocity.clone());
    Ok(TransientState {
        solution,
        prev_velocity: prev,
        step: 0,
        dt: tr.dt,
    })
}

/// Advances the state by one backward-Euler step.
pub fn step_transient(state: &TransientState, spec: &ProblemSpec) -> Result<TransientState> {
    let mesh = &state.solution.mesh;
    let rho = spec.fluid.rho;
    let t_next = (state.step + 1) as f64 * state.dt;
    let opts = AssemblyOptions {
        time: t_next,
        alpha_shift: rho / state.dt,
        prev_velocity: Some(state.prev_velocity.clone()),
        ..Default::default()
    };
    let system = assemble(mesh, spec, &opts)?;
    let mut solution = solve_steady(&system)?;
    solution.time = Some(t_next);
    let prev = Arc::new(solution.velocity.clone());
    Ok(TransientState {
        solution,
        prev_velocity: prev,
        step: state.step + 1,
        dt: state.dt,
    })
}

/// A probe time series collected during a march.
#[derive(Clone, Debug, Default)]
pub struct ProbeSeries {
    pub location: [f64; 2],
    /// (t, vorticity) samples, one per step including t = 0.
    pub samples: Vec<(f64, f64)>,
}

/// Marches to `t_end`, invoking `on_step` after every accepted step.
pub fn transient_march(
    mesh: &Arc<Mesh>,
    spec: &ProblemSpec,
    mut on_step: impl FnMut(&TransientState) -> Result<()>,
) -> Result<TransientState> {
    let tr = spec
        .transient
        .as_ref()
        .ok_or_else(|| Error::InvalidProblem("transient options missing".into()))?;
    let n_steps = (tr.t_end / tr.dt).round() as usize;
    let n_steps = n_steps.max(1);
    let mut state = initial_state(mesh, spec)?;
    on_step(&state)?;
    for _ in 0..n_steps {
        state = step_transient(&state, spec)?;
        on_step(&state)?;
    }
    Ok(state)
}
