//! Raster permeability fields (Marmousi-style grids).
//!
//! File format: plain ASCII, first line `nx ny`, followed by nx*ny positive
//! values in row-major order starting at the bottom row (y increasing).
//! Values are registered at grid nodes spanning the extent and sampled
//! bilinearly.

use super::PermeabilityField;
use crate::mesh::Rect;
use crate::{Error, Result};
use std::path::Path;
use std::sync::Arc;

/// A positive scalar field on a regular grid with bilinear interpolation.
#[derive(Clone, Debug)]
pub struct RasterField {
    pub nx: usize,
    pub ny: usize,
    /// Row-major, bottom row first, length nx * ny.
    pub values: Vec<f64>,
    pub extent: Rect,
}

impl RasterField {
    pub fn new(nx: usize, ny: usize, values: Vec<f64>, extent: Rect) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::Raster(format!(
                "grid must be at least 2x2 (got {nx} x {ny})"
            )));
        }
        if values.len() != nx * ny {
            return Err(Error::Raster(format!(
                "expected {} values for a {nx} x {ny} grid, got {}",
                nx * ny,
                values.len()
            )));
        }
        if !(extent.width() > 0.0 && extent.height() > 0.0) {
            return Err(Error::Raster(format!("degenerate extent {extent:?}")));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Raster(format!(
                    "non-positive value {v} at row {}, column {}",
                    i / nx,
                    i % nx
                )));
            }
        }
        Ok(Self {
            nx,
            ny,
            values,
            extent,
        })
    }

    /// Bilinear sample at `p`; errors when `p` lies outside the extent.
    pub fn sample(&self, p: [f64; 2]) -> Result<f64> {
        let tol = 1e-12 * (1.0 + self.extent.width().max(self.extent.height()));
        if !self.extent.contains(p, tol) {
            return Err(Error::OutsideDomain(p));
        }
        let fx = ((p[0] - self.extent.x0) / self.extent.width()) * (self.nx - 1) as f64;
        let fy = ((p[1] - self.extent.y0) / self.extent.height()) * (self.ny - 1) as f64;
        let i = (fx.floor() as usize).min(self.nx - 2);
        let j = (fy.floor() as usize).min(self.ny - 2);
        let tx = (fx - i as f64).clamp(0.0, 1.0);
        let ty = (fy - j as f64).clamp(0.0, 1.0);
        let at = |i: usize, j: usize| self.values[j * self.nx + i];
        let v = (1.0 - tx) * (1.0 - ty) * at(i, j)
            + tx * (1.0 - ty) * at(i + 1, j)
            + (1.0 - tx) * ty * at(i, j + 1)
            + tx * ty * at(i + 1, j + 1);
        Ok(v)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Loads a raster permeability from a file.
///
/// The permeability is `raw * scale / l_ref^2`, i.e. the raw values scale
/// linearly into a dimensional permeability which is then non-dimensionalized
/// by the reference length.
pub fn load_permeability_raster(
    path: &Path,
    domain: Rect,
    l_ref: f64,
    scale: f64,
) -> Result<PermeabilityField> {
    if !(l_ref > 0.0) {
        return Err(Error::Raster(format!(
            "reference length {l_ref} must be positive"
        )));
    }
    if !(scale > 0.0) {
        return Err(Error::Raster(format!("scale {scale} must be positive")));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Raster(format!("cannot read {}: {e}", path.display())))?;
    parse_raster(&text, domain, scale / (l_ref * l_ref))
}

fn parse_raster(text: &str, domain: Rect, factor: f64) -> Result<PermeabilityField> {
    let mut tokens = text.split_whitespace();
    let nx: usize = tokens
        .next()
        .ok_or_else(|| Error::Raster("empty file".into()))?
        .parse()
        .map_err(|e| Error::Raster(format!("bad nx in header: {e}")))?;
    let ny: usize = tokens
        .next()
        .ok_or_else(|| Error::Raster("missing ny in header".into()))?
        .parse()
        .map_err(|e| Error::Raster(format!("bad ny in header: {e}")))?;
    let mut values = Vec::with_capacity(nx * ny);
    for (idx, tok) in tokens.enumerate() {
        let v: f64 = tok.parse().map_err(|e| {
            Error::Raster(format!(
                "bad value `{tok}` at row {}, column {}: {e}",
                idx / nx.max(1),
                idx % nx.max(1)
            ))
        })?;
        values.push(v * factor);
    }
    let field = RasterField::new(nx, ny, values, domain)?;
    Ok(PermeabilityField::Raster(Arc::new(field)))
}
