//! The benchmark problem catalog.
//!
//! Each entry reproduces one of the standard porous-flow test problems in
//! non-dimensional form, with its standard parameter defaults, and accepts
//! overrides for the values that vary between runs (model, viscosity,
//! injection pressure, ...).

use super::{
    BcKind, BodyForce, FluidProperties, ModelKind, PermeabilityField, ProblemSpec, SegmentDef,
};
use crate::mesh::{Rect, Side};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::Arc;

pub const BENCHMARK_NAMES: [&str; 7] = [
    "body_force",
    "lid_cavity",
    "pipe_bend_velocity",
    "pipe_bend_pressure",
    "pressure_slab",
    "pressure_driven",
    "reservoir",
];

/// Catalog overrides; unset fields take the benchmark defaults.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Overrides {
    pub model: Option<ModelKind>,
    /// Uniform drag coefficient; stored as permeability k = mu / alpha.
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub rho: Option<f64>,
    /// Uniform permeability (alternative to `alpha`).
    pub k: Option<f64>,
    /// Body-force amplitude `a` for the body-force problem.
    pub amplitude: Option<f64>,
    pub p_inj: Option<f64>,
    pub p_atm: Option<f64>,
    /// Raster permeability file for the reservoir problem.
    pub raster: Option<PathBuf>,
    /// Linear scale applied to raster values before the 1/L^2 scaling.
    pub raster_scale: Option<f64>,
    /// Reference length used to non-dimensionalize raster permeability.
    pub reference_length: Option<f64>,
    /// Center of inlet/outlet/well segments along their side, when the
    /// benchmark has one.
    pub segment_center: Option<f64>,
    /// Length of inlet/outlet/well segments.
    pub segment_length: Option<f64>,
}

/// A serializable problem document: catalog name plus overrides.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpecDocument {
    pub benchmark: String,
    #[serde(default)]
    pub overrides: Overrides,
}

impl SpecDocument {
    pub fn from_json(text: &str) -> Result<SpecDocument> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn build(&self) -> Result<ProblemSpec> {
        benchmark(&self.benchmark, &self.overrides)
    }
}

struct Defaults {
    model: ModelKind,
    alpha: f64,
    mu_darcy: f64,
    mu_brinkman: f64,
    rho: f64,
    p_inj: f64,
    p_atm: f64,
}

impl Defaults {
    fn std() -> Self {
        Defaults {
            model: ModelKind::Darcy,
            alpha: 1.0,
            mu_darcy: 1.0,
            mu_brinkman: 0.001,
            rho: 1.0,
            p_inj: 5.0,
            p_atm: 1.0,
        }
    }
}

struct Resolved {
    model: ModelKind,
    fluid: FluidProperties,
    permeability: PermeabilityField,
    p_inj: f64,
    p_atm: f64,
}

fn resolve(name: &str, d: &Defaults, ov: &Overrides) -> Result<Resolved> {
    let model = ov.model.unwrap_or(d.model);
    let mu = ov.mu.unwrap_or(match model {
        ModelKind::Darcy => d.mu_darcy,
        ModelKind::DarcyBrinkman => d.mu_brinkman,
    });
    let rho = ov.rho.unwrap_or(d.rho);
    let fluid = FluidProperties::new(mu, rho)?;
    if ov.alpha.is_some() && ov.k.is_some() {
        return Err(Error::InvalidProblem(
            "give either `alpha` or `k`, not both".into(),
        ));
    }
    let permeability = if let Some(path) = &ov.raster {
        if name != "reservoir" {
            return Err(Error::InvalidProblem(format!(
                "raster permeability is only supported by the reservoir benchmark, not `{name}`"
            )));
        }
        let l_ref = ov.reference_length.unwrap_or(384.0);
        super::raster::load_permeability_raster(
            path,
            reservoir_rect(),
            l_ref,
            ov.raster_scale.unwrap_or(1.0),
        )?
    } else if let Some(k) = ov.k {
        PermeabilityField::uniform(k)?
    } else {
        let alpha = ov.alpha.unwrap_or(d.alpha);
        if !(alpha > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "drag coefficient {alpha} must be positive"
            )));
        }
        PermeabilityField::uniform(mu / alpha)?
    };
    Ok(Resolved {
        model,
        fluid,
        permeability,
        p_inj: ov.p_inj.unwrap_or(d.p_inj),
        p_atm: ov.p_atm.unwrap_or(d.p_atm),
    })
}

// Zero velocity data for the whole boundary in the model's own BC variant.
fn homogeneous_velocity(model: ModelKind, sides: &[&str]) -> BTreeMap<String, BcKind> {
    sides
        .iter()
        .map(|s| {
            let bc = match model {
                ModelKind::Darcy => BcKind::normal_const(0.0),
                ModelKind::DarcyBrinkman => BcKind::velocity_const([0.0, 0.0]),
            };
            (s.to_string(), bc)
        })
        .collect()
}

// Quadratic profile with unit peak on [c - hw, c + hw], zero outside.
fn parabolic(s: f64, center: f64, halfwidth: f64) -> f64 {
    let t = (s - center) / halfwidth;
    (1.0 - t * t).max(0.0)
}

fn natural_bc(model: ModelKind, p: f64, side: Side) -> BcKind {
    match model {
        ModelKind::Darcy => BcKind::pressure_const(p),
        ModelKind::DarcyBrinkman => BcKind::normal_traction(p, side),
    }
}

/// Builds a catalog problem with the given overrides.
pub fn benchmark(name: &str, ov: &Overrides) -> Result<ProblemSpec> {
    let mut spec = match name {
        "body_force" => body_force(ov)?,
        "lid_cavity" => lid_cavity(ov)?,
        "pipe_bend_velocity" => pipe_bend(ov, false)?,
        "pipe_bend_pressure" => pipe_bend(ov, true)?,
        "pressure_slab" => pressure_slab(ov)?,
        "pressure_driven" => pressure_driven(ov)?,
        "reservoir" => reservoir(ov)?,
        _ => return Err(Error::UnknownBenchmark(name.to_string())),
    };
    spec.document = Some(SpecDocument {
        benchmark: name.to_string(),
        overrides: ov.clone(),
    });
    Ok(spec)
}

// Conservative body force rho b = a [sin(pi x), cos(pi y)] on the unit
// square, homogeneous velocity everywhere; the exact solution is v = 0,
// p = -psi + const.
fn body_force(ov: &Overrides) -> Result<ProblemSpec> {
    let r = resolve("body_force", &Defaults::std(), ov)?;
    let a = ov.amplitude.unwrap_or(10.0);
    let rho = r.fluid.rho;
    let eval = Arc::new(move |x: [f64; 2], _t: f64| {
        [(a / rho) * (PI * x[0]).sin(), (a / rho) * (PI * x[1]).cos()]
    });
    let potential = Arc::new(move |x: [f64; 2]| (a / PI) * ((PI * x[0]).cos() - (PI * x[1]).sin()));
    Ok(ProblemSpec {
        name: "body_force".into(),
        model: r.model,
        domain: Rect::unit(),
        fluid: r.fluid,
        permeability: r.permeability,
        body_force: BodyForce::with_potential(eval, potential),
        bcs: homogeneous_velocity(r.model, &["left", "right", "bottom", "top"]),
        segments: vec![],
        transient: None,
        document: None,
    })
}

// Lid-driven cavity on the bi-unit square; top lid moves with v = (1, 0).
// Only compatible with the Darcy-Brinkman model: Darcy admits a normal
// velocity condition, not the full vector the lid prescribes.
fn lid_cavity(ov: &Overrides) -> Result<ProblemSpec> {
    let defaults = Defaults {
        model: ModelKind::DarcyBrinkman,
        mu_brinkman: 1.0,
        ..Defaults::std()
    };
    let r = resolve("lid_cavity", &defaults, ov)?;
    if r.model == ModelKind::Darcy {
        return Err(Error::InvalidProblem(
            "lid_cavity prescribes the full velocity vector on the boundary, \
             which is incompatible with the Darcy model"
                .into(),
        ));
    }
    let mut bcs = homogeneous_velocity(r.model, &["left", "right", "bottom"]);
    bcs.insert("top".into(), BcKind::velocity_const([1.0, 0.0]));
    Ok(ProblemSpec {
        name: "lid_cavity".into(),
        model: r.model,
        domain: Rect::new(-1.0, -1.0, 1.0, 1.0),
        fluid: r.fluid,
        permeability: r.permeability,
        body_force: BodyForce::zero(),
        bcs,
        segments: vec![],
        transient: None,
        document: None,
    })
}

// Pipe bend on the unit square: parabolic inflow on the left near the top
// corner, outflow through the bottom near the right corner. The velocity
// variant prescribes both profiles; the pressure variant replaces the
// outflow with a traction segment.
fn pipe_bend(ov: &Overrides, pressure_outlet: bool) -> Result<ProblemSpec> {
    let name = if pressure_outlet {
        "pipe_bend_pressure"
    } else {
        "pipe_bend_velocity"
    };
    let r = resolve(name, &Defaults::std(), ov)?;
    let center = ov.segment_center.unwrap_or(0.8);
    let hw = 0.5 * ov.segment_length.unwrap_or(0.2);
    let rho = r.fluid.rho;
    // rho b = rho [1, 1] derives from psi = -rho (x + y).
    let body = BodyForce::with_potential(
        Arc::new(|_, _| [1.0, 1.0]),
        Arc::new(move |x: [f64; 2]| -rho * (x[0] + x[1])),
    );
    let inflow_center = center;
    let mut bcs = homogeneous_velocity(r.model, &["right", "top"]);
    match r.model {
        ModelKind::DarcyBrinkman => {
            bcs.insert(
                "left".into(),
                BcKind::VelocityVector(Arc::new(move |x, _| {
                    [parabolic(x[1], inflow_center, hw), 0.0]
                })),
            );
        }
        ModelKind::Darcy => {
            // v . n = -v_x on the left side.
            bcs.insert(
                "left".into(),
                BcKind::NormalVelocity(Arc::new(move |x, _| -parabolic(x[1], inflow_center, hw))),
            );
        }
    }
    let mut segments = vec![];
    if pressure_outlet {
        bcs.extend(homogeneous_velocity(r.model, &["bottom"]));
        bcs.insert("outlet".into(), natural_bc(r.model, r.p_atm, Side::Bottom));
        segments.push(SegmentDef {
            side: Side::Bottom,
            span: (center - hw, center + hw),
            tag: "outlet".into(),
        });
    } else {
        match r.model {
            ModelKind::DarcyBrinkman => {
                bcs.insert(
                    "bottom".into(),
                    BcKind::VelocityVector(Arc::new(move |x, _| {
                        [0.0, -parabolic(x[0], center, hw)]
                    })),
                );
            }
            ModelKind::Darcy => {
                // v . n = -v_y on the bottom side.
                bcs.insert(
                    "bottom".into(),
                    BcKind::NormalVelocity(Arc::new(move |x, _| parabolic(x[0], center, hw))),
                );
            }
        }
    }
    Ok(ProblemSpec {
        name: name.into(),
        model: r.model,
        domain: Rect::unit(),
        fluid: r.fluid,
        permeability: r.permeability,
        body_force: body,
        bcs,
        segments,
        transient: None,
        document: None,
    })
}

// Pressure-driven slab: W x L rectangle, injection pressure on the left
// side, atmospheric on the right, homogeneous velocity on top and bottom.
fn pressure_slab(ov: &Overrides) -> Result<ProblemSpec> {
    let defaults = Defaults {
        mu_darcy: 0.001,
        ..Defaults::std()
    };
    let r = resolve("pressure_slab", &defaults, ov)?;
    let mut bcs = homogeneous_velocity(r.model, &["bottom", "top"]);
    bcs.insert("left".into(), natural_bc(r.model, r.p_inj, Side::Left));
    bcs.insert("right".into(), natural_bc(r.model, r.p_atm, Side::Right));
    Ok(ProblemSpec {
        name: "pressure_slab".into(),
        model: r.model,
        domain: Rect::new(0.0, 0.0, 0.2, 1.0),
        fluid: r.fluid,
        permeability: r.permeability,
        body_force: BodyForce::zero(),
        bcs,
        segments: vec![],
        transient: None,
        document: None,
    })
}

// Pressure-driven square: injection pressure on the whole left side,
// atmospheric pressure on the middle fifth of the right side.
fn pressure_driven(ov: &Overrides) -> Result<ProblemSpec> {
    let r = resolve("pressure_driven", &Defaults::std(), ov)?;
    let center = ov.segment_center.unwrap_or(0.5);
    let hw = 0.5 * ov.segment_length.unwrap_or(0.2);
    let mut bcs = homogeneous_velocity(r.model, &["bottom", "top", "right"]);
    bcs.insert("left".into(), natural_bc(r.model, r.p_inj, Side::Left));
    bcs.insert("outlet".into(), natural_bc(r.model, r.p_atm, Side::Right));
    Ok(ProblemSpec {
        name: "pressure_driven".into(),
        model: r.model,
        domain: Rect::unit(),
        fluid: r.fluid,
        permeability: r.permeability,
        body_force: BodyForce::zero(),
        bcs,
        segments: vec![SegmentDef {
            side: Side::Right,
            span: (center - hw, center + hw),
            tag: "outlet".into(),
        }],
        transient: None,
        document: None,
    })
}

fn reservoir_rect() -> Rect {
    Rect::new(0.0, 0.0, 2.0, 1.0)
}

// Synthetic reservoir: 2 x 1 scaled domain, injection pressure on the left
// and right sides, a production well mouth on the middle of the top side,
// impermeable elsewhere. Permeability defaults to uniform but is normally
// loaded from a raster file.
fn reservoir(ov: &Overrides) -> Result<ProblemSpec> {
    let defaults = Defaults {
        mu_darcy: 0.001,
        ..Defaults::std()
    };
    let r = resolve("reservoir", &defaults, ov)?;
    let rect = reservoir_rect();
    let center = ov.segment_center.unwrap_or(0.5 * (rect.x0 + rect.x1));
    // Well mouth width defaults to W/L = 0.1 of the domain length.
    let hw = 0.5 * ov.segment_length.unwrap_or(0.1 * rect.width());
    let mut bcs = homogeneous_velocity(r.model, &["bottom", "top"]);
    bcs.insert("left".into(), natural_bc(r.model, r.p_inj, Side::Left));
    bcs.insert("right".into(), natural_bc(r.model, r.p_inj, Side::Right));
    bcs.insert("well".into(), natural_bc(r.model, r.p_atm, Side::Top));
    Ok(ProblemSpec {
        name: "reservoir".into(),
        model: r.model,
        domain: rect,
        fluid: r.fluid,
        permeability: r.permeability,
        body_force: BodyForce::zero(),
        bcs,
        segments: vec![SegmentDef {
            side: Side::Top,
            span: (center - hw, center + hw),
            tag: "well".into(),
        }],
        transient: None,
        document: None,
    })
}

/// Default transient initial condition for a benchmark: the separable sine
/// field v_x = v_y = sin(pi x / W) sin(pi y / L) on the domain (zero for the
/// cavity, whose flow is started from rest).
pub fn default_initial_condition(spec: &ProblemSpec) -> super::InitialFn {
    if spec.name == "lid_cavity" {
        return Arc::new(|_| [0.0, 0.0]);
    }
    let d = spec.domain;
    Arc::new(move |x: [f64; 2]| {
        let s = (PI * (x[0] - d.x0) / d.width()).sin() * (PI * (x[1] - d.y0) / d.height()).sin();
        [s, s]
    })
}
