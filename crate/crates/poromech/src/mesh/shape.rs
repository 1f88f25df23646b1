//! Lagrange shape functions on the reference square and triangle.
//!
//! Reference elements:
//! - Q9 / Q4 live on the bi-unit square `[-1,1]^2`.
//! - T6 / T3 live on the unit triangle `{(x,y): x,y >= 0, x+y <= 1}`.
//!
//! Node orderings match the VTK quadratic cell conventions so solutions can
//! be exported without remapping: corners counter-clockwise, then edge
//! midpoints, then (Q9 only) the cell center.

use crate::mesh::ElementKind;

/// A scalar Lagrange basis on a reference element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeBasis {
    pub kind: ElementKind,
    /// 1 for the linear (pressure) basis, 2 for the quadratic (velocity) basis.
    pub order: u8,
}

impl ShapeBasis {
    pub fn new(kind: ElementKind, order: u8) -> Self {
        assert!(
            order == 1 || order == 2,
            "only orders 1 and 2 are supported"
        );
        Self { kind, order }
    }

    /// Number of basis functions.
    pub fn len(&self) -> usize {
        match (self.kind, self.order) {
            (ElementKind::Q9, 2) => 9,
            (ElementKind::Q9, 1) => 4,
            (ElementKind::T6, 2) => 6,
            (ElementKind::T6, 1) => 3,
            _ => unreachable!(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Reference coordinates of the basis nodes.
    pub fn nodes(&self) -> Vec<[f64; 2]> {
        match (self.kind, self.order) {
            (ElementKind::Q9, 2) => vec![
                [-1.0, -1.0],
                [1.0, -1.0],
                [1.0, 1.0],
                [-1.0, 1.0],
                [0.0, -1.0],
                [1.0, 0.0],
                [0.0, 1.0],
                [-1.0, 0.0],
                [0.0, 0.0],
            ],
            (ElementKind::Q9, 1) => {
                vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]
            }
            (ElementKind::T6, 2) => vec![
                [0.0, 0.0],
                [1.0, 0.0],
                [0.0, 1.0],
                [0.5, 0.0],
                [0.5, 0.5],
                [0.0, 0.5],
            ],
            (ElementKind::T6, 1) => vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            _ => unreachable!(),
        }
    }

    /// Evaluates all basis values and reference gradients at `p`.
    ///
    /// `values` and `grads` must have length `self.len()`.
    pub fn eval(&self, p: [f64; 2], values: &mut [f64], grads: &mut [[f64; 2]]) {
        debug_assert_eq!(values.len(), self.len());
        debug_assert_eq!(grads.len(), self.len());
        match (self.kind, self.order) {
            (ElementKind::Q9, 2) => eval_q2(p, values, grads),
            (ElementKind::Q9, 1) => eval_q1(p, values, grads),
            (ElementKind::T6, 2) => eval_p2(p, values, grads),
            (ElementKind::T6, 1) => eval_p1(p, values, grads),
            _ => unreachable!(),
        }
    }

    /// Convenience allocating variant of [`ShapeBasis::eval`].
    pub fn eval_vec(&self, p: [f64; 2]) -> (Vec<f64>, Vec<[f64; 2]>) {
        let n = self.len();
        let mut values = vec![0.0; n];
        let mut grads = vec![[0.0; 2]; n];
        self.eval(p, &mut values, &mut grads);
        (values, grads)
    }

    /// Reference-space second derivatives `(d_xx, d_xy, d_yy)` of each basis
    /// function at `p`. Only the quadratic bases carry curvature.
    pub fn eval_hessian(&self, p: [f64; 2]) -> Vec<[f64; 3]> {
        match (self.kind, self.order) {
            (ElementKind::Q9, 2) => {
                let (lx, ly) = (lag2(p[0]), lag2(p[1]));
                let (dx, dy) = (dlag2(p[0]), dlag2(p[1]));
                let (cx, cy) = ([1.0, 1.0, -2.0], [1.0, 1.0, -2.0]);
                Q9_TENSOR
                    .iter()
                    .map(|&(a, b)| [cx[a] * ly[b], dx[a] * dy[b], lx[a] * cy[b]])
                    .collect()
            }
            (ElementKind::T6, 2) => vec![
                [4.0, 4.0, 4.0],
                [4.0, 0.0, 0.0],
                [0.0, 0.0, 4.0],
                [-8.0, -4.0, 0.0],
                [0.0, 4.0, 0.0],
                [0.0, -4.0, -8.0],
            ],
            (ElementKind::Q9, 1) => {
                // Bilinear: only the mixed derivative survives.
                let xs = [-1.0, 1.0, 1.0, -1.0];
                let ys = [-1.0, -1.0, 1.0, 1.0];
                (0..4).map(|i| [0.0, 0.25 * xs[i] * ys[i], 0.0]).collect()
            }
            (ElementKind::T6, 1) => vec![[0.0; 3]; 3],
            _ => unreachable!(),
        }
    }
}

// 1D quadratic Lagrange on {-1, +1, 0} and its derivative.
fn lag2(t: f64) -> [f64; 3] {
    [0.5 * t * (t - 1.0), 0.5 * t * (t + 1.0), 1.0 - t * t]
}

fn dlag2(t: f64) -> [f64; 3] {
    [t - 0.5, t + 0.5, -2.0 * t]
}

// Tensor index per Q9 node: (xi-node, eta-node) with 0 -> -1, 1 -> +1, 2 -> 0.
const Q9_TENSOR: [(usize, usize); 9] = [
    (0, 0),
    (1, 0),
    (1, 1),
    (0, 1),
    (2, 0),
    (1, 2),
    (2, 1),
    (0, 2),
    (2, 2),
];

fn eval_q2(p: [f64; 2], values: &mut [f64], grads: &mut [[f64; 2]]) {
    let (lx, ly) = (lag2(p[0]), lag2(p[1]));
    let (dx, dy) = (dlag2(p[0]), dlag2(p[1]));
    for (i, &(a, b)) in Q9_TENSOR.iter().enumerate() {
        values[i] = lx[a] * ly[b];
        grads[i] = [dx[a] * ly[b], lx[a] * dy[b]];
    }
}

fn eval_q1(p: [f64; 2], values: &mut [f64], grads: &mut [[f64; 2]]) {
    let [xi, eta] = p;
    let xs = [-1.0, 1.0, 1.0, -1.0];
    let ys = [-1.0, -1.0, 1.0, 1.0];
    for i in 0..4 {
        values[i] = 0.25 * (1.0 + xs[i] * xi) * (1.0 + ys[i] * eta);
        grads[i] = [
            0.25 * xs[i] * (1.0 + ys[i] * eta),
            0.25 * ys[i] * (1.0 + xs[i] * xi),
        ];
    }
}

fn eval_p2(p: [f64; 2], values: &mut [f64], grads: &mut [[f64; 2]]) {
    let [x, y] = p;
    let l0 = 1.0 - x - y;
    // Barycentric gradients: grad l0 = (-1,-1), grad l1 = (1,0), grad l2 = (0,1).
    values[0] = l0 * (2.0 * l0 - 1.0);
    values[1] = x * (2.0 * x - 1.0);
    values[2] = y * (2.0 * y - 1.0);
    values[3] = 4.0 * l0 * x;
    values[4] = 4.0 * x * y;
    values[5] = 4.0 * y * l0;
    let d0 = 4.0 * l0 - 1.0;
    grads[0] = [-d0, -d0];
    grads[1] = [4.0 * x - 1.0, 0.0];
    grads[2] = [0.0, 4.0 * y - 1.0];
    grads[3] = [4.0 * (l0 - x), -4.0 * x];
    grads[4] = [4.0 * y, 4.0 * x];
    grads[5] = [-4.0 * y, 4.0 * (l0 - y)];
}

fn eval_p1(p: [f64; 2], values: &mut [f64], grads: &mut [[f64; 2]]) {
    let [x, y] = p;
    values[0] = 1.0 - x - y;
    values[1] = x;
    values[2] = y;
    grads[0] = [-1.0, -1.0];
    grads[1] = [1.0, 0.0];
    grads[2] = [0.0, 1.0];
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_bases() -> Vec<ShapeBasis> {
        vec![
            ShapeBasis::new(ElementKind::Q9, 2),
            ShapeBasis::new(ElementKind::Q9, 1),
            ShapeBasis::new(ElementKind::T6, 2),
            ShapeBasis::new(ElementKind::T6, 1),
        ]
    }

    fn random_ref_point(kind: ElementKind, u: f64, v: f64) -> [f64; 2] {
        match kind {
            ElementKind::Q9 => [2.0 * u - 1.0, 2.0 * v - 1.0],
            // Fold the unit square onto the unit triangle.
            ElementKind::T6 => {
                if u + v <= 1.0 {
                    [u, v]
                } else {
                    [1.0 - u, 1.0 - v]
                }
            }
        }
    }

    #[test]
    fn partition_of_unity_and_kronecker() {
        for basis in all_bases() {
            // Kronecker property at the basis nodes.
            for (i, node) in basis.nodes().iter().enumerate() {
                let (vals, _) = basis.eval_vec(*node);
                for (j, v) in vals.iter().enumerate() {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((v - expect).abs() < 1e-14, "{basis:?} node {i} fn {j}: {v}");
                }
            }
            // Partition of unity at scattered points.
            for k in 0..100 {
                let u = (k as f64 * 0.618_033_988_749_895) % 1.0;
                let v = (k as f64 * 0.414_213_562_373_095) % 1.0;
                let p = random_ref_point(basis.kind, u, v);
                let (vals, grads) = basis.eval_vec(p);
                let sum: f64 = vals.iter().sum();
                assert!((sum - 1.0).abs() < 1e-13, "{basis:?} at {p:?}: {sum}");
                let gsum = grads
                    .iter()
                    .fold([0.0; 2], |acc, g| [acc[0] + g[0], acc[1] + g[1]]);
                assert!(gsum[0].abs() < 1e-13 && gsum[1].abs() < 1e-13);
            }
        }
    }

    #[test]
    fn gradients_match_central_differences() {
        let h = 1e-6;
        for basis in all_bases() {
            for k in 0..25 {
                let u = 0.1 + 0.8 * ((k as f64 * 0.37) % 1.0);
                let v = 0.1 + 0.8 * ((k as f64 * 0.73) % 1.0);
                let p = random_ref_point(basis.kind, 0.5 * u, 0.4 * v);
                let (_, grads) = basis.eval_vec(p);
                for d in 0..2 {
                    let mut pp = p;
                    let mut pm = p;
                    pp[d] += h;
                    pm[d] -= h;
                    let (vp, _) = basis.eval_vec(pp);
                    let (vm, _) = basis.eval_vec(pm);
                    for i in 0..basis.len() {
                        let fd = (vp[i] - vm[i]) / (2.0 * h);
                        assert!(
                            (fd - grads[i][d]).abs() < 1e-8,
                            "{basis:?} fn {i} dir {d}: fd {fd} vs {g}",
                            g = grads[i][d]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn q2_center_sums_to_one() {
        let basis = ShapeBasis::new(ElementKind::Q9, 2);
        let (vals, _) = basis.eval_vec([0.0, 0.0]);
        let sum: f64 = vals.iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
        // Center node carries the full value there.
        assert!((vals[8] - 1.0).abs() < 1e-15);
    }
}
