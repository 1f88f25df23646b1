//! Mechanics-based a posteriori verification criteria.
//!
//! The four checks assess a numerical solution without an analytical
//! reference:
//!
//! - dissipation and total mechanical power, whose minima over kinematically
//!   admissible fields characterize the exact solution;
//! - the reciprocal (Betti-type) relation between two load cases;
//! - maximum principles and transient decay for the vorticity.
//!
//! All operations here are pure functions of immutable inputs.

mod convergence;
mod decay;
mod functionals;
mod perturb;
mod reciprocal;
mod vorticity;

pub use convergence::{
    convergence_study, metric_flags, ConvergenceRow, ConvergenceTable, MeshSpec, MetricFlags,
};
pub use decay::{decay_slope, DecayFit};
pub use functionals::{
    cross_dissipation, dissipation, dissipation_of_velocity, total_mechanical_power,
    total_mechanical_power_of_velocity,
};
pub use perturb::admissible_perturbation;
pub use reciprocal::{reciprocal_residual, ReciprocalCheck};
pub use vorticity::{
    eigen_residual, max_principle_check, vorticity_field, MaxPrincipleReport, VorticityField,
};

use serde::{Deserialize, Serialize};

/// Summary record of the verification criteria for one solution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Dissipation functional.
    pub phi: f64,
    /// Total mechanical power.
    pub tmp: f64,
    /// Normalized reciprocal residual, when a pair was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reciprocal: Option<ReciprocalCheck>,
    pub vorticity: MaxPrincipleReport,
    /// Transient decay fit, when a march was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecayFit>,
    /// True when the minimum-dissipation hypotheses (velocity data on the
    /// whole boundary, conservative body force) hold for this problem, so
    /// the dissipation minimum is actually meaningful.
    pub dissipation_theorem_applicable: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Flattened key,value rows.
    pub fn to_csv(&self) -> String {
        let mut rows = vec![
            ("phi".to_string(), self.phi.to_string()),
            ("tmp".to_string(), self.tmp.to_string()),
        ];
        if let Some(r) = &self.reciprocal {
            rows.push(("reciprocal_left".into(), r.left.to_string()));
            rows.push(("reciprocal_right".into(), r.right.to_string()));
            match r.epsilon {
                Some(e) => rows.push(("reciprocal_epsilon".into(), e.to_string())),
                None => rows.push(("reciprocal_unnormalized".into(), r.difference.to_string())),
            }
        }
        rows.push((
            "vorticity_interior_max".into(),
            self.vorticity.interior_max.to_string(),
        ));
        rows.push((
            "vorticity_interior_min".into(),
            self.vorticity.interior_min.to_string(),
        ));
        rows.push((
            "vorticity_boundary_max".into(),
            self.vorticity.boundary_max.to_string(),
        ));
        rows.push((
            "vorticity_boundary_min".into(),
            self.vorticity.boundary_min.to_string(),
        ));
        rows.push((
            "max_principle_ok".into(),
            self.vorticity.max_principle_ok.to_string(),
        ));
        rows.push((
            "max_principle_tol".into(),
            self.vorticity.tolerance.to_string(),
        ));
        if let Some(d) = &self.decay {
            rows.push(("decay_slope".into(), d.slope.to_string()));
            rows.push(("decay_target".into(), d.target.to_string()));
            rows.push(("decay_points".into(), d.points_used.to_string()));
        }
        rows.push((
            "dissipation_theorem_applicable".into(),
            self.dissipation_theorem_applicable.to_string(),
        ));
        let mut out = String::from("key,value\n");
        for (k, v) in rows {
            out.push_str(&k);
            out.push(',');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }
}

/// Whether the minimum-dissipation theorem hypotheses hold for a problem:
/// essential data on the whole boundary and a conservative body force.
pub fn dissipation_theorem_applicable(spec: &crate::model::ProblemSpec) -> bool {
    spec.needs_pressure_gauge() && spec.body_force.is_conservative()
}
