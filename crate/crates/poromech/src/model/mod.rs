//! Problem descriptions: material fields, body forces, boundary conditions,
//! the non-dimensionalization map and the benchmark catalog.
//!
//! Specs are immutable value objects; every evaluator stored here must be
//! pure and reentrant.

mod catalog;
mod nondim;
mod raster;

pub use catalog::{benchmark, default_initial_condition, Overrides, SpecDocument, BENCHMARK_NAMES};
pub use nondim::{nondimensionalize, DimensionalInputs, ReferenceQuantities};
pub use raster::{load_permeability_raster, RasterField};

use crate::mesh::{Mesh, Rect, Side};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Which momentum balance governs the problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Darcy,
    DarcyBrinkman,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Darcy => "darcy",
            ModelKind::DarcyBrinkman => "darcy_brinkman",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Non-dimensional fluid constants.
#[derive(Clone, Copy, Debug)]
pub struct FluidProperties {
    pub mu: f64,
    pub rho: f64,
}

impl FluidProperties {
    pub fn new(mu: f64, rho: f64) -> Result<Self> {
        if !(mu > 0.0) || !(rho > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "viscosity and density must be positive (mu = {mu}, rho = {rho})"
            )));
        }
        Ok(Self { mu, rho })
    }
}

/// Permeability, either uniform or sampled from a raster grid.
#[derive(Clone, Debug)]
pub enum PermeabilityField {
    Uniform(f64),
    Raster(Arc<RasterField>),
}

impl PermeabilityField {
    pub fn uniform(k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "permeability {k} must be positive"
            )));
        }
        Ok(PermeabilityField::Uniform(k))
    }

    /// Permeability at a point.
    pub fn k_at(&self, x: [f64; 2]) -> Result<f64> {
        match self {
            PermeabilityField::Uniform(k) => Ok(*k),
            PermeabilityField::Raster(r) => r.sample(x),
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, PermeabilityField::Uniform(_))
    }
}

/// Drag coefficient mu / k(x) (the permeability-viscosity ratio entering the
/// momentum balance).
pub fn alpha_at(perm: &PermeabilityField, mu: f64, x: [f64; 2]) -> Result<f64> {
    Ok(mu / perm.k_at(x)?)
}

pub type VectorFn = Arc<dyn Fn([f64; 2], f64) -> [f64; 2] + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn([f64; 2], f64) -> f64 + Send + Sync>;
pub type PotentialFn = Arc<dyn Fn([f64; 2]) -> f64 + Send + Sync>;
pub type InitialFn = Arc<dyn Fn([f64; 2]) -> [f64; 2] + Send + Sync>;

/// Specific body force b(x, t); `rho * b` enters the momentum balance.
///
/// When the body force is conservative, the scalar potential with
/// `rho b = -grad psi` can be attached; several verification criteria
/// require it.
#[derive(Clone)]
pub struct BodyForce {
    pub eval: VectorFn,
    pub potential: Option<PotentialFn>,
}

impl BodyForce {
    pub fn zero() -> Self {
        BodyForce {
            eval: Arc::new(|_, _| [0.0, 0.0]),
            potential: Some(Arc::new(|_| 0.0)),
        }
    }

    pub fn new(eval: VectorFn) -> Self {
        BodyForce {
            eval,
            potential: None,
        }
    }

    pub fn with_potential(eval: VectorFn, potential: PotentialFn) -> Self {
        BodyForce {
            eval,
            potential: Some(potential),
        }
    }

    pub fn is_conservative(&self) -> bool {
        self.potential.is_some()
    }

    /// Checks `-grad psi = rho b` by central differences at scattered points.
    pub fn check_potential(&self, rect: Rect, rho: f64, tol: f64) -> Result<()> {
        let Some(psi) = &self.potential else {
            return Ok(());
        };
        let h = 1e-6 * (rect.width().max(rect.height()));
        for i in 0..100 {
            let u = 0.05 + 0.9 * ((i as f64 * 0.618_033_988_749_895) % 1.0);
            let v = 0.05 + 0.9 * ((i as f64 * 0.414_213_562_373_095) % 1.0);
            let x = [rect.x0 + u * rect.width(), rect.y0 + v * rect.height()];
            let b = (self.eval)(x, 0.0);
            let gx = (psi([x[0] + h, x[1]]) - psi([x[0] - h, x[1]])) / (2.0 * h);
            let gy = (psi([x[0], x[1] + h]) - psi([x[0], x[1] - h])) / (2.0 * h);
            let rx = rho * b[0] + gx;
            let ry = rho * b[1] + gy;
            if rx.abs() > tol || ry.abs() > tol {
                return Err(Error::InvalidProblem(format!(
                    "potential mismatch at {x:?}: ||rho b + grad psi|| = {:.3e}",
                    (rx * rx + ry * ry).sqrt()
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for BodyForce {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BodyForce {{ conservative: {} }}",
            self.is_conservative()
        )
    }
}

/// Boundary data attached to one segment tag.
#[derive(Clone)]
pub enum BcKind {
    /// Full velocity vector (Darcy-Brinkman essential BC).
    VelocityVector(VectorFn),
    /// Normal velocity component (Darcy essential BC); the tangential
    /// component is left free.
    NormalVelocity(ScalarFn),
    /// Prescribed traction vector (Darcy-Brinkman natural BC).
    Traction(VectorFn),
    /// Prescribed pressure (Darcy natural BC).
    Pressure(ScalarFn),
}

impl BcKind {
    pub fn velocity_const(v: [f64; 2]) -> Self {
        BcKind::VelocityVector(Arc::new(move |_, _| v))
    }

    pub fn normal_const(vn: f64) -> Self {
        BcKind::NormalVelocity(Arc::new(move |_, _| vn))
    }

    pub fn pressure_const(p: f64) -> Self {
        BcKind::Pressure(Arc::new(move |_, _| p))
    }

    /// Traction -p n on a given side (a normal pressure load).
    pub fn normal_traction(p: f64, side: Side) -> Self {
        let n = side.normal();
        BcKind::Traction(Arc::new(move |_, _| [-p * n[0], -p * n[1]]))
    }

    /// True for essential (velocity-type) conditions.
    pub fn is_essential(&self) -> bool {
        matches!(self, BcKind::VelocityVector(_) | BcKind::NormalVelocity(_))
    }

    pub fn compatible_with(&self, model: ModelKind) -> bool {
        match model {
            ModelKind::Darcy => {
                matches!(self, BcKind::NormalVelocity(_) | BcKind::Pressure(_))
            }
            ModelKind::DarcyBrinkman => {
                matches!(self, BcKind::VelocityVector(_) | BcKind::Traction(_))
            }
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            BcKind::VelocityVector(_) => "velocity_vector",
            BcKind::NormalVelocity(_) => "normal_velocity",
            BcKind::Traction(_) => "traction",
            BcKind::Pressure(_) => "pressure",
        }
    }
}

impl std::fmt::Debug for BcKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.kind_name())
    }
}

/// Carves a sub-segment out of a rectangle side; edges whose midpoints fall
/// in `span` (in the coordinate running along the side) receive `tag`.
#[derive(Clone, Debug)]
pub struct SegmentDef {
    pub side: Side,
    pub span: (f64, f64),
    pub tag: String,
}

/// Transient solve data.
#[derive(Clone)]
pub struct TransientOptions {
    pub v0: InitialFn,
    pub dt: f64,
    pub t_end: f64,
}

impl std::fmt::Debug for TransientOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TransientOptions {{ dt: {}, t_end: {} }}",
            self.dt, self.t_end
        )
    }
}

/// A complete problem statement in non-dimensional form.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub model: ModelKind,
    pub domain: Rect,
    pub fluid: FluidProperties,
    pub permeability: PermeabilityField,
    pub body_force: BodyForce,
    /// Boundary conditions per segment tag. Where segments share a corner
    /// node, essential values are applied in ascending tag order, so the
    /// lexicographically last tag wins at the corner.
    pub bcs: BTreeMap<String, BcKind>,
    /// Segment carvings to apply to a generated mesh before solving.
    pub segments: Vec<SegmentDef>,
    pub transient: Option<TransientOptions>,
    /// The document this spec was built from, when it came from the catalog.
    pub document: Option<SpecDocument>,
}

impl ProblemSpec {
    /// Drag coefficient at a point.
    pub fn alpha(&self, x: [f64; 2]) -> Result<f64> {
        alpha_at(&self.permeability, self.fluid.mu, x)
    }

    /// Applies this spec's segment carvings to a mesh of the same rectangle.
    pub fn prepare_mesh(&self, mesh: Mesh) -> Result<Mesh> {
        let mut mesh = mesh;
        for seg in &self.segments {
            let (lo, hi) = seg.span;
            let horizontal = matches!(seg.side, Side::Top | Side::Bottom);
            mesh = mesh.retag_side(
                seg.side,
                move |p| {
                    let s = if horizontal { p[0] } else { p[1] };
                    s >= lo && s <= hi
                },
                &seg.tag,
            );
        }
        self.validate(&mesh)?;
        Ok(mesh)
    }

    /// Checks BC/tag consistency against a mesh.
    pub fn validate(&self, mesh: &Mesh) -> Result<()> {
        if self.fluid.mu <= 0.0 || self.fluid.rho <= 0.0 {
            return Err(Error::InvalidProblem(
                "non-positive fluid properties".into(),
            ));
        }
        let mesh_tags = mesh.tags();
        for tag in self.bcs.keys() {
            if !mesh_tags.contains(tag) {
                return Err(Error::InvalidProblem(format!(
                    "boundary condition references tag `{tag}` not present on the mesh"
                )));
            }
        }
        for tag in &mesh_tags {
            if !self.bcs.contains_key(tag) {
                return Err(Error::InvalidProblem(format!(
                    "mesh segment `{tag}` has no boundary condition; segments must partition the boundary"
                )));
            }
        }
        for (tag, bc) in &self.bcs {
            if !bc.compatible_with(self.model) {
                return Err(Error::InvalidProblem(format!(
                    "boundary condition `{}` on `{tag}` is incompatible with the {} model",
                    bc.kind_name(),
                    self.model
                )));
            }
        }
        if let Some(tr) = &self.transient {
            if !(tr.dt > 0.0) {
                return Err(Error::InvalidProblem(format!(
                    "time step {} must be positive",
                    tr.dt
                )));
            }
            if !(tr.t_end > 0.0) {
                return Err(Error::InvalidProblem(format!(
                    "horizon {} must be positive",
                    tr.t_end
                )));
            }
        }
        Ok(())
    }

    /// True when no natural (traction/pressure) segment exists, so the
    /// pressure is only determined up to a constant and a gauge is needed.
    pub fn needs_pressure_gauge(&self) -> bool {
        self.bcs.values().all(|bc| bc.is_essential())
    }

    pub fn with_transient(mut self, v0: InitialFn, dt: f64, t_end: f64) -> Self {
        self.transient = Some(TransientOptions { v0, dt, t_end });
        self
    }
}
