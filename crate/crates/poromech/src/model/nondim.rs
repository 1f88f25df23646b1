//! Non-dimensionalization of dimensional problem data.
//!
//! Reference quantities are a length L, the gravitational acceleration g and
//! the atmospheric pressure p_atm. The resulting map is
//!
//! ```text
//! x' = x / L          v' = v / sqrt(g L)      b' = b / g
//! p' = p / p_atm      rho' = rho g L / p_atm  k' = k / L^2
//! alpha' = alpha sqrt(g L^3) / p_atm
//! mu' = mu sqrt(g / L) / p_atm
//! ```
//!
//! which leaves the drag-permeability relation alpha = mu / k form-invariant.

use super::{
    BcKind, BodyForce, FluidProperties, ModelKind, PermeabilityField, ProblemSpec, RasterField,
    SegmentDef,
};
use crate::mesh::Rect;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The three reference quantities of the scaling map.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceQuantities {
    pub l: f64,
    pub g: f64,
    pub p_atm: f64,
}

impl ReferenceQuantities {
    pub fn new(l: f64, g: f64, p_atm: f64) -> Result<Self> {
        if !(l > 0.0 && g > 0.0 && p_atm > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "reference quantities must be positive (L = {l}, g = {g}, p_atm = {p_atm})"
            )));
        }
        Ok(Self { l, g, p_atm })
    }

    pub fn length(&self, x: f64) -> f64 {
        x / self.l
    }

    pub fn velocity(&self, v: f64) -> f64 {
        v / (self.g * self.l).sqrt()
    }

    pub fn pressure(&self, p: f64) -> f64 {
        p / self.p_atm
    }

    pub fn body_force(&self, b: f64) -> f64 {
        b / self.g
    }

    pub fn density(&self, rho: f64) -> f64 {
        rho * self.g * self.l / self.p_atm
    }

    pub fn drag(&self, alpha: f64) -> f64 {
        alpha * (self.g * self.l.powi(3)).sqrt() / self.p_atm
    }

    pub fn viscosity(&self, mu: f64) -> f64 {
        mu * (self.g / self.l).sqrt() / self.p_atm
    }

    pub fn permeability(&self, k: f64) -> f64 {
        k / (self.l * self.l)
    }

    // Inverse maps, for round-trip checks and report re-dimensionalization.
    pub fn dimensional_drag(&self, alpha: f64) -> f64 {
        alpha * self.p_atm / (self.g * self.l.powi(3)).sqrt()
    }

    pub fn dimensional_viscosity(&self, mu: f64) -> f64 {
        mu * self.p_atm / (self.g / self.l).sqrt()
    }

    pub fn dimensional_permeability(&self, k: f64) -> f64 {
        k * self.l * self.l
    }

    pub fn rect(&self, r: Rect) -> Rect {
        Rect::new(
            self.length(r.x0),
            self.length(r.y0),
            self.length(r.x1),
            self.length(r.y1),
        )
    }
}

/// A problem posed in dimensional quantities.
pub struct DimensionalInputs {
    pub reference: ReferenceQuantities,
    pub model: ModelKind,
    /// Dimensional domain rectangle.
    pub domain: Rect,
    /// Dimensional viscosity and density.
    pub mu: f64,
    pub rho: f64,
    /// Dimensional permeability.
    pub permeability: PermeabilityField,
    /// Dimensional specific body force b(x, t) at dimensional x.
    pub body_force: BodyForce,
    /// Boundary data in dimensional units at dimensional coordinates.
    pub bcs: BTreeMap<String, BcKind>,
    pub segments: Vec<SegmentDef>,
}

/// Applies the scaling map, producing a non-dimensional [`ProblemSpec`].
pub fn nondimensionalize(inputs: &DimensionalInputs) -> Result<ProblemSpec> {
    let r = inputs.reference;
    ReferenceQuantities::new(r.l, r.g, r.p_atm)?;
    let fluid = FluidProperties::new(r.viscosity(inputs.mu), r.density(inputs.rho))?;
    let permeability = match &inputs.permeability {
        PermeabilityField::Uniform(k) => PermeabilityField::uniform(r.permeability(*k))?,
        PermeabilityField::Raster(field) => {
            let scaled = RasterField::new(
                field.nx,
                field.ny,
                field.values.iter().map(|v| r.permeability(*v)).collect(),
                r.rect(field.extent),
            )?;
            PermeabilityField::Raster(Arc::new(scaled))
        }
    };
    let body = inputs.body_force.clone();
    let scaled_eval = {
        let eval = body.eval.clone();
        Arc::new(move |x: [f64; 2], t: f64| {
            let b = eval([x[0] * r.l, x[1] * r.l], t);
            [r.body_force(b[0]), r.body_force(b[1])]
        })
    };
    // psi' = psi / p_atm keeps rho' b' = -grad' psi'.
    let scaled_potential = body.potential.clone().map(|psi| {
        Arc::new(move |x: [f64; 2]| psi([x[0] * r.l, x[1] * r.l]) / r.p_atm) as super::PotentialFn
    });
    let body_force = BodyForce {
        eval: scaled_eval,
        potential: scaled_potential,
    };

    let mut bcs = BTreeMap::new();
    for (tag, bc) in &inputs.bcs {
        let scaled = match bc {
            BcKind::VelocityVector(f) => {
                let f = f.clone();
                BcKind::VelocityVector(Arc::new(move |x, t| {
                    let v = f([x[0] * r.l, x[1] * r.l], t);
                    [r.velocity(v[0]), r.velocity(v[1])]
                }))
            }
            BcKind::NormalVelocity(f) => {
                let f = f.clone();
                BcKind::NormalVelocity(Arc::new(move |x, t| {
                    r.velocity(f([x[0] * r.l, x[1] * r.l], t))
                }))
            }
            BcKind::Traction(f) => {
                let f = f.clone();
                BcKind::Traction(Arc::new(move |x, t| {
                    let tr = f([x[0] * r.l, x[1] * r.l], t);
                    [r.pressure(tr[0]), r.pressure(tr[1])]
                }))
            }
            BcKind::Pressure(f) => {
                let f = f.clone();
                BcKind::Pressure(Arc::new(move |x, t| {
                    r.pressure(f([x[0] * r.l, x[1] * r.l], t))
                }))
            }
        };
        bcs.insert(tag.clone(), scaled);
    }
    let segments = inputs
        .segments
        .iter()
        .map(|s| SegmentDef {
            side: s.side,
            span: (r.length(s.span.0), r.length(s.span.1)),
            tag: s.tag.clone(),
        })
        .collect();

    Ok(ProblemSpec {
        name: "nondimensionalized".into(),
        model: inputs.model,
        domain: r.rect(inputs.domain),
        fluid,
        permeability,
        body_force,
        bcs,
        segments,
        transient: None,
        document: None,
    })
}
