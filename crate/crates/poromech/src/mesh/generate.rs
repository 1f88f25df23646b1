//! Structured mesh generation with optional geometric grading toward
//! selected sides.

use super::{BoundaryEdge, ElementKind, Mesh, Rect, Side, StructuredInfo};
use crate::{Error, Result};

/// Grading request for one axis end (see [`refine_region`]).
#[derive(Clone, Copy, Debug)]
pub struct GradedAxis {
    pub side: Side,
    pub ratio: f64,
    pub layers: usize,
}

/// Builds a uniform nx x ny mesh of nine-node quadrilaterals on `rect`.
///
/// Boundary edges are tagged `left`, `right`, `top`, `bottom`.
pub fn build_quad_mesh(nx: usize, ny: usize, rect: Rect) -> Result<Mesh> {
    let (xs, ys) = uniform_breaks(nx, ny, rect)?;
    Ok(tensor_mesh(ElementKind::Q9, &xs, &ys, rect))
}

/// Builds a uniform mesh of six-node triangles: each cell of the nx x ny
/// grid is split along its lower-left to upper-right diagonal.
pub fn build_tri_mesh(nx: usize, ny: usize, rect: Rect) -> Result<Mesh> {
    let (xs, ys) = uniform_breaks(nx, ny, rect)?;
    Ok(tensor_mesh(ElementKind::T6, &xs, &ys, rect))
}

/// Builds a conforming tensor-product mesh graded toward the given sides.
///
/// Starting from the uniform nx x ny grid, the cell adjacent to each tagged
/// side is subdivided into `layers` cells whose sizes form a geometric
/// sequence with the given `ratio`, shrinking toward the side. Cell sizes
/// away from the tagged sides are unchanged, and the total area is exactly
/// preserved.
pub fn refine_region(
    kind: ElementKind,
    nx: usize,
    ny: usize,
    rect: Rect,
    graded: &[GradedAxis],
) -> Result<Mesh> {
    let (mut xs, mut ys) = uniform_breaks(nx, ny, rect)?;
    for g in graded {
        if !(g.ratio > 0.0 && g.ratio < 1.0) {
            return Err(Error::InvalidMesh(format!(
                "grading ratio {} must lie in (0, 1)",
                g.ratio
            )));
        }
        if g.layers == 0 {
            return Err(Error::InvalidMesh("grading layers must be >= 1".into()));
        }
        match g.side {
            Side::Left => grade_start(&mut xs, g.ratio, g.layers),
            Side::Right => grade_end(&mut xs, g.ratio, g.layers),
            Side::Bottom => grade_start(&mut ys, g.ratio, g.layers),
            Side::Top => grade_end(&mut ys, g.ratio, g.layers),
        }
    }
    Ok(tensor_mesh(kind, &xs, &ys, rect))
}

fn uniform_breaks(nx: usize, ny: usize, rect: Rect) -> Result<(Vec<f64>, Vec<f64>)> {
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidMesh(format!(
            "element counts must be positive (got {nx} x {ny})"
        )));
    }
    if !(rect.width() > 0.0 && rect.height() > 0.0) {
        return Err(Error::InvalidMesh(format!("degenerate rectangle {rect:?}")));
    }
    let xs = (0..=nx)
        .map(|i| rect.x0 + rect.width() * i as f64 / nx as f64)
        .collect();
    let ys = (0..=ny)
        .map(|j| rect.y0 + rect.height() * j as f64 / ny as f64)
        .collect();
    Ok((xs, ys))
}

// Splits the last interval of `breaks` into `layers` geometric sub-intervals
// shrinking toward the end point.
fn grade_end(breaks: &mut Vec<f64>, ratio: f64, layers: usize) {
    let n = breaks.len();
    let hi = breaks[n - 1];
    let lo = breaks[n - 2];
    let h = hi - lo;
    let total: f64 = (1..=layers).map(|i| ratio.powi(i as i32)).sum();
    breaks.pop();
    let mut x = lo;
    for i in 1..layers {
        x += h * ratio.powi(i as i32) / total;
        breaks.push(x);
    }
    breaks.push(hi);
}

// Mirror of `grade_end` for the first interval.
fn grade_start(breaks: &mut Vec<f64>, ratio: f64, layers: usize) {
    let lo = breaks[0];
    let hi = breaks[1];
    let h = hi - lo;
    let total: f64 = (1..=layers).map(|i| ratio.powi(i as i32)).sum();
    let mut inserted = Vec::with_capacity(layers - 1);
    // Sizes shrink toward `lo`, so walk from `hi` down.
    let mut x = hi;
    for i in 1..layers {
        x -= h * ratio.powi(i as i32) / total;
        inserted.push(x);
    }
    inserted.reverse();
    breaks.splice(1..1, inserted);
}

// Builds the Q9/T6 mesh on the tensor grid defined by the break arrays.
fn tensor_mesh(kind: ElementKind, xs: &[f64], ys: &[f64], rect: Rect) -> Mesh {
    let nx = xs.len() - 1;
    let ny = ys.len() - 1;
    // Node grid includes cell midpoints in both directions.
    let gx = with_midpoints(xs);
    let gy = with_midpoints(ys);
    let stride = gx.len();
    let mut nodes = Vec::with_capacity(stride * gy.len());
    for &y in &gy {
        for &x in &gx {
            nodes.push([x, y]);
        }
    }
    let nid = |i: usize, j: usize| j * stride + i;

    let mut elements = Vec::new();
    let mut boundary_edges = Vec::new();
    let mut h_max: f64 = 0.0;
    for cy in 0..ny {
        for cx in 0..nx {
            let (i, j) = (2 * cx, 2 * cy);
            h_max = h_max.max(xs[cx + 1] - xs[cx]).max(ys[cy + 1] - ys[cy]);
            match kind {
                ElementKind::Q9 => {
                    let e = elements.len() / 9;
                    elements.extend_from_slice(&[
                        nid(i, j),
                        nid(i + 2, j),
                        nid(i + 2, j + 2),
                        nid(i, j + 2),
                        nid(i + 1, j),
                        nid(i + 2, j + 1),
                        nid(i + 1, j + 2),
                        nid(i, j + 1),
                        nid(i + 1, j + 1),
                    ]);
                    if cy == 0 {
                        boundary_edges.push(edge(e, 0, Side::Bottom));
                    }
                    if cx == nx - 1 {
                        boundary_edges.push(edge(e, 1, Side::Right));
                    }
                    if cy == ny - 1 {
                        boundary_edges.push(edge(e, 2, Side::Top));
                    }
                    if cx == 0 {
                        boundary_edges.push(edge(e, 3, Side::Left));
                    }
                }
                ElementKind::T6 => {
                    // Lower triangle (a, b, c), upper triangle (a, c, d) with
                    // the shared diagonal a-c; the cell center is its midside.
                    let e = elements.len() / 6;
                    elements.extend_from_slice(&[
                        nid(i, j),
                        nid(i + 2, j),
                        nid(i + 2, j + 2),
                        nid(i + 1, j),
                        nid(i + 2, j + 1),
                        nid(i + 1, j + 1),
                    ]);
                    elements.extend_from_slice(&[
                        nid(i, j),
                        nid(i + 2, j + 2),
                        nid(i, j + 2),
                        nid(i + 1, j + 1),
                        nid(i + 1, j + 2),
                        nid(i, j + 1),
                    ]);
                    if cy == 0 {
                        boundary_edges.push(edge(e, 0, Side::Bottom));
                    }
                    if cx == nx - 1 {
                        boundary_edges.push(edge(e, 1, Side::Right));
                    }
                    if cy == ny - 1 {
                        boundary_edges.push(edge(e + 1, 1, Side::Top));
                    }
                    if cx == 0 {
                        boundary_edges.push(edge(e + 1, 2, Side::Left));
                    }
                }
            }
        }
    }
    Mesh::from_parts(
        kind,
        nodes,
        elements,
        boundary_edges,
        h_max,
        rect,
        StructuredInfo {
            x_breaks: xs.to_vec(),
            y_breaks: ys.to_vec(),
        },
    )
}

fn edge(element: usize, local_edge: usize, side: Side) -> BoundaryEdge {
    BoundaryEdge {
        element,
        local_edge,
        tag: side.tag().to_string(),
        side,
    }
}

fn with_midpoints(breaks: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * breaks.len() - 1);
    for w in breaks.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(*breaks.last().unwrap());
    out
}
