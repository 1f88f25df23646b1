//! Structured and region-graded 2D meshes of nine-node quadrilaterals (Q9)
//! and six-node triangles (T6).
//!
//! Meshes are immutable after construction; every operation here is pure, so
//! meshes can be shared freely across threads.

mod generate;
pub mod quadrature;
pub mod shape;
mod vtk;

pub use generate::{build_quad_mesh, build_tri_mesh, refine_region, GradedAxis};
pub use quadrature::{edge_rule, gauss_legendre, quadrature_for, QuadratureRule};
pub use shape::ShapeBasis;
pub(crate) use vtk::write_header as vtk_write_header;

use crate::{Error, Result};

/// Supported element families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ElementKind {
    /// Nine-node biquadratic quadrilateral.
    Q9,
    /// Six-node quadratic triangle.
    T6,
}

impl ElementKind {
    pub fn nodes_per_element(self) -> usize {
        match self {
            ElementKind::Q9 => 9,
            ElementKind::T6 => 6,
        }
    }

    pub fn corners(self) -> usize {
        match self {
            ElementKind::Q9 => 4,
            ElementKind::T6 => 3,
        }
    }

    pub fn edges_per_element(self) -> usize {
        self.corners()
    }
}

/// An axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn unit() -> Self {
        Self::new(0.0, 0.0, 1.0, 1.0)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        p[0] >= self.x0 - tol
            && p[0] <= self.x1 + tol
            && p[1] >= self.y0 - tol
            && p[1] <= self.y1 + tol
    }
}

/// Sides of a rectangular domain, used as boundary segment tags.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

    pub fn tag(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Bottom => "bottom",
            Side::Top => "top",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            "bottom" => Some(Side::Bottom),
            "top" => Some(Side::Top),
            _ => None,
        }
    }

    /// Outward unit normal on this side of an axis-aligned rectangle.
    pub fn normal(self) -> [f64; 2] {
        match self {
            Side::Left => [-1.0, 0.0],
            Side::Right => [1.0, 0.0],
            Side::Bottom => [0.0, -1.0],
            Side::Top => [0.0, 1.0],
        }
    }
}

/// One tagged edge on the mesh boundary.
#[derive(Clone, Debug)]
pub struct BoundaryEdge {
    pub element: usize,
    /// Local edge id within the element (0..4 for Q9, 0..3 for T6).
    pub local_edge: usize,
    pub tag: String,
    /// The rectangle side this edge geometrically lies on.
    pub side: Side,
}

// Structured tensor-grid info retained for O(log n) point location.
#[derive(Clone, Debug)]
pub(crate) struct StructuredInfo {
    pub x_breaks: Vec<f64>,
    pub y_breaks: Vec<f64>,
}

/// An immutable 2D mesh of quadratic elements.
#[derive(Clone, Debug)]
pub struct Mesh {
    kind: ElementKind,
    nodes: Vec<[f64; 2]>,
    // Flat connectivity, stride = kind.nodes_per_element().
    elements: Vec<usize>,
    boundary_edges: Vec<BoundaryEdge>,
    h_max: f64,
    rect: Rect,
    // Corner (vertex) nodes carry the linear pressure dofs.
    corner_nodes: Vec<usize>,
    corner_index: Vec<Option<usize>>,
    boundary_nodes: Vec<usize>,
    pub(crate) structured: StructuredInfo,
}

impl Mesh {
    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len() / self.kind.nodes_per_element()
    }

    pub fn node(&self, i: usize) -> [f64; 2] {
        self.nodes[i]
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn element(&self, e: usize) -> &[usize] {
        let n = self.kind.nodes_per_element();
        &self.elements[e * n..(e + 1) * n]
    }

    pub fn boundary_edges(&self) -> &[BoundaryEdge] {
        &self.boundary_edges
    }

    pub fn h_max(&self) -> f64 {
        self.h_max
    }

    /// The domain rectangle this mesh tiles.
    pub fn rect(&self) -> Rect {
        self.rect
    }

    /// Vertex nodes, in ascending node order; these carry pressure dofs.
    pub fn corner_nodes(&self) -> &[usize] {
        &self.corner_nodes
    }

    /// Per-node index into `corner_nodes` (None for edge/center nodes).
    pub fn corner_index(&self, node: usize) -> Option<usize> {
        self.corner_index[node]
    }

    /// Nodes lying on the domain boundary, ascending.
    pub fn boundary_nodes(&self) -> &[usize] {
        &self.boundary_nodes
    }

    /// Global node ids of the three nodes on a given local edge, ordered
    /// (corner, midside, corner) counter-clockwise around the element.
    pub fn edge_nodes(&self, element: usize, local_edge: usize) -> [usize; 3] {
        let conn = self.element(element);
        match self.kind {
            ElementKind::Q9 => {
                let (a, b, m) = match local_edge {
                    0 => (0, 1, 4),
                    1 => (1, 2, 5),
                    2 => (2, 3, 6),
                    3 => (3, 0, 7),
                    _ => panic!("bad local edge"),
                };
                [conn[a], conn[m], conn[b]]
            }
            ElementKind::T6 => {
                let (a, b, m) = match local_edge {
                    0 => (0, 1, 3),
                    1 => (1, 2, 4),
                    2 => (2, 0, 5),
                    _ => panic!("bad local edge"),
                };
                [conn[a], conn[m], conn[b]]
            }
        }
    }

    /// Re-tags boundary edges on `side` whose midpoint satisfies `pred`,
    /// returning a new mesh. Used to carve sub-segments (inlets, wells) out
    /// of a rectangle side.
    pub fn retag_side(&self, side: Side, pred: impl Fn([f64; 2]) -> bool, new_tag: &str) -> Mesh {
        let mut out = self.clone();
        for be in &mut out.boundary_edges {
            if be.side == side {
                let [a, m, _b] = self.edge_nodes(be.element, be.local_edge);
                let _ = a;
                let mid = self.nodes[m];
                if pred(mid) {
                    be.tag = new_tag.to_string();
                }
            }
        }
        out
    }

    /// All distinct boundary tags present on this mesh.
    pub fn tags(&self) -> Vec<String> {
        let mut tags: Vec<String> = self.boundary_edges.iter().map(|b| b.tag.clone()).collect();
        tags.sort();
        tags.dedup();
        tags
    }

    /// Locates the element containing `p` and the reference coordinates of
    /// `p` within it.
    pub fn locate(&self, p: [f64; 2]) -> Result<(usize, [f64; 2])> {
        let tol = 1e-10 * (1.0 + self.h_max);
        if !self.rect.contains(p, tol) {
            return Err(Error::OutsideDomain(p));
        }
        let sx = &self.structured;
        let cx = find_cell(&sx.x_breaks, p[0]);
        let cy = find_cell(&sx.y_breaks, p[1]);
        let nx = sx.x_breaks.len() - 1;
        let cell = cy * nx + cx;
        let x0 = sx.x_breaks[cx];
        let x1 = sx.x_breaks[cx + 1];
        let y0 = sx.y_breaks[cy];
        let y1 = sx.y_breaks[cy + 1];
        let u = (p[0] - x0) / (x1 - x0);
        let v = (p[1] - y0) / (y1 - y0);
        match self.kind {
            ElementKind::Q9 => Ok((cell, [2.0 * u - 1.0, 2.0 * v - 1.0])),
            ElementKind::T6 => {
                // Cells split along the lower-left to upper-right diagonal:
                // element 2*cell covers v <= u, element 2*cell+1 covers v >= u.
                if v <= u {
                    // Vertices (0,0), (1,0), (1,1) in cell coordinates.
                    Ok((2 * cell, [u - v, v]))
                } else {
                    // Vertices (0,0), (1,1), (0,1).
                    Ok((2 * cell + 1, [u, v - u]))
                }
            }
        }
    }

    /// Writes the mesh as VTK legacy ASCII (no solution data).
    pub fn write_vtk(&self, path: &std::path::Path) -> Result<()> {
        vtk::write_mesh_vtk(self, path)
    }

    pub(crate) fn from_parts(
        kind: ElementKind,
        nodes: Vec<[f64; 2]>,
        elements: Vec<usize>,
        boundary_edges: Vec<BoundaryEdge>,
        h_max: f64,
        rect: Rect,
        structured: StructuredInfo,
    ) -> Mesh {
        let npe = kind.nodes_per_element();
        let n_elems = elements.len() / npe;
        let mut is_corner = vec![false; nodes.len()];
        for e in 0..n_elems {
            for c in 0..kind.corners() {
                is_corner[elements[e * npe + c]] = true;
            }
        }
        let corner_nodes: Vec<usize> = (0..nodes.len()).filter(|&i| is_corner[i]).collect();
        let mut corner_index = vec![None; nodes.len()];
        for (k, &n) in corner_nodes.iter().enumerate() {
            corner_index[n] = Some(k);
        }
        let mut mesh = Mesh {
            kind,
            nodes,
            elements,
            boundary_edges,
            h_max,
            rect,
            corner_nodes,
            corner_index,
            boundary_nodes: Vec::new(),
            structured,
        };
        let mut on_boundary = vec![false; mesh.n_nodes()];
        for be in &mesh.boundary_edges {
            for n in mesh.edge_nodes(be.element, be.local_edge) {
                on_boundary[n] = true;
            }
        }
        mesh.boundary_nodes = (0..mesh.n_nodes()).filter(|&i| on_boundary[i]).collect();
        mesh
    }
}

fn find_cell(breaks: &[f64], x: f64) -> usize {
    let n = breaks.len() - 1;
    match breaks.binary_search_by(|b| b.partial_cmp(&x).unwrap()) {
        Ok(i) => i.min(n - 1),
        Err(i) => i.saturating_sub(1).min(n - 1),
    }
}
