//! Mixed finite-element solver for steady and transient Darcy and
//! Darcy-Brinkman porous-media flow, plus a mechanics-based a posteriori
//! verification suite (dissipation, total mechanical power, reciprocal
//! relation, vorticity maximum principles and decay) for assessing the
//! accuracy of numerical solutions on problems without analytical solutions.
//!
//! The crate is organized in four layers:
//!
//! - [`mesh`]: structured / graded 2D meshes of Q9 quadrilaterals and T6
//!   triangles, shape functions and quadrature.
//! - [`model`]: problem descriptions (material fields, body forces, boundary
//!   conditions), the non-dimensionalization map and the benchmark catalog.
//! - [`fem`]: assembly and direct solution of the mixed velocity-pressure
//!   systems, transient stepping, point evaluation and export.
//! - [`verify`]: the a posteriori criteria and convergence-study bookkeeping.

pub mod error;
pub mod fem;
pub mod mesh;
pub mod model;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
