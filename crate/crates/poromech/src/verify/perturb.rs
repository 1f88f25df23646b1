//! Kinematically admissible perturbation fields for testing the minimum
//! principles.
//!
//! The perturbation is the curl of a random stream function built from
//! squared sine bubbles,
//!
//! ```text
//! psi(x, y) = sum_{m,n} c_mn sin^2(m pi X) sin^2(n pi Y),   X, Y in [0, 1]
//! ```
//!
//! so `div delta_v = 0` holds analytically, and both psi and grad psi vanish
//! on the boundary, hence `delta_v = 0` on the whole boundary.
//!
//! The field is interpolated onto the velocity space with one adjustment:
//! the normal component at each edge midside node is corrected so the
//! quadratic edge flux equals the exact flux of the analytic field. Each
//! midside belongs to exactly one edge, neighbours see the same corrected
//! trace, and the integrated divergence of every element vanishes to
//! quadrature precision. Boundary nodes stay exactly zero.

use crate::mesh::{gauss_legendre, Mesh};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::f64::consts::PI;

const MAX_MODE: usize = 4;

/// Builds the perturbation's nodal velocity coefficients (interleaved, two
/// per node). The maximum nodal magnitude is scaled to `amplitude`.
pub fn admissible_perturbation(mesh: &Mesh, amplitude: f64, seed: u64) -> Vec<f64> {
    assert!(amplitude >= 0.0, "amplitude must be non-negative");
    let rect = mesh.rect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Low modes carry most of the weight; high modes would need much finer
    // meshes before the interpolated field is nearly solenoidal.
    let mut coeff = [[0.0; MAX_MODE]; MAX_MODE];
    for (m, row) in coeff.iter_mut().enumerate() {
        for (n, c) in row.iter_mut().enumerate() {
            let damp = ((m + 1) * (m + 1) + (n + 1) * (n + 1)) as f64;
            *c = rng.random_range(-1.0..1.0) / (damp * damp);
        }
    }

    let lx = rect.width();
    let ly = rect.height();
    let delta = move |p: [f64; 2]| -> [f64; 2] {
        let xu = (p[0] - rect.x0) / lx;
        let yu = (p[1] - rect.y0) / ly;
        let mut vx = 0.0;
        let mut vy = 0.0;
        for m in 0..MAX_MODE {
            let mm = (m + 1) as f64;
            let sx = (mm * PI * xu).sin();
            let sx2 = sx * sx;
            let dsx2 = 2.0 * sx * (mm * PI * xu).cos() * mm * PI / lx;
            for n in 0..MAX_MODE {
                let nn = (n + 1) as f64;
                let sy = (nn * PI * yu).sin();
                let sy2 = sy * sy;
                let dsy2 = 2.0 * sy * (nn * PI * yu).cos() * nn * PI / ly;
                // curl of psi e_z: (d psi / dy, -d psi / dx).
                vx += coeff[m][n] * sx2 * dsy2;
                vy -= coeff[m][n] * dsx2 * sy2;
            }
        }
        [vx, vy]
    };

    let n_nodes = mesh.n_nodes();
    let mut values = vec![0.0; 2 * n_nodes];
    for i in 0..n_nodes {
        let v = delta(mesh.node(i));
        values[2 * i] = v[0];
        values[2 * i + 1] = v[1];
    }

    // Flux-preserving midside correction, once per geometric edge.
    let (gx, gw) = gauss_legendre(16);
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let ne = mesh.kind().edges_per_element();
    for e in 0..mesh.n_elements() {
        for le in 0..ne {
            let [a, m, b] = mesh.edge_nodes(e, le);
            let key = (a.min(b), a.max(b));
            if seen.insert(key, ()).is_some() {
                continue;
            }
            let pa = mesh.node(a);
            let pb = mesh.node(b);
            let d = [pb[0] - pa[0], pb[1] - pa[1]];
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            let normal = [d[1] / len, -d[0] / len];
            // Exact flux of the analytic field across the edge.
            let mut exact = 0.0;
            for (q, &x) in gx.iter().enumerate() {
                let t = 0.5 * (x + 1.0);
                let p = [pa[0] + t * d[0], pa[1] + t * d[1]];
                let v = delta(p);
                exact += 0.5 * gw[q] * len * (v[0] * normal[0] + v[1] * normal[1]);
            }
            // Simpson flux of the interpolant: (len/6) (f_a + 4 f_m + f_b).
            let f = |n: usize| values[2 * n] * normal[0] + values[2 * n + 1] * normal[1];
            let simpson = (len / 6.0) * (f(a) + 4.0 * f(m) + f(b));
            let corr = 6.0 * (exact - simpson) / (4.0 * len);
            values[2 * m] += corr * normal[0];
            values[2 * m + 1] += corr * normal[1];
        }
    }

    let max_mag = values.iter().fold(0.0f64, |mx, v| mx.max(v.abs()));
    let scale = if max_mag > 0.0 {
        amplitude / max_mag
    } else {
        0.0
    };
    for v in &mut values {
        *v *= scale;
    }
    // The analytic field vanishes on the boundary; pin the nodes exactly.
    for &n in mesh.boundary_nodes() {
        values[2 * n] = 0.0;
        values[2 * n + 1] = 0.0;
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::for_each_quadrature_point;
    use crate::mesh::{build_quad_mesh, build_tri_mesh, Rect};

    #[test]
    fn zero_amplitude_gives_zero_field() {
        let mesh = build_quad_mesh(4, 4, Rect::unit()).unwrap();
        let v = admissible_perturbation(&mesh, 0.0, 7);
        assert!(v.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn boundary_nodes_are_exactly_zero_and_amplitude_is_respected() {
        for seed in [0u64, 1, 42, 1234] {
            let mesh = build_tri_mesh(6, 5, Rect::new(-1.0, 0.5, 2.0, 2.5)).unwrap();
            let v = admissible_perturbation(&mesh, 0.25, seed);
            for &n in mesh.boundary_nodes() {
                assert_eq!(v[2 * n], 0.0);
                assert_eq!(v[2 * n + 1], 0.0);
            }
            let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(max <= 0.25 + 1e-12 && max > 0.05, "seed {seed}: {max}");
        }
    }

    #[test]
    fn per_element_divergence_integral_vanishes() {
        for (kind, mesh) in [
            ("quad", build_quad_mesh(4, 7, Rect::unit()).unwrap()),
            ("tri", build_tri_mesh(6, 6, Rect::unit()).unwrap()),
            (
                "coarse",
                build_quad_mesh(2, 2, Rect::new(-1.0, -1.0, 1.0, 1.0)).unwrap(),
            ),
        ] {
            let v = admissible_perturbation(&mesh, 1.0, 3);
            let mut elem_div = vec![0.0; mesh.n_elements()];
            for_each_quadrature_point(&mesh, 4, |qp| {
                let mut d = 0.0;
                for (a, &n) in qp.conn.iter().enumerate() {
                    d += qp.grad_phi[a][0] * v[2 * n] + qp.grad_phi[a][1] * v[2 * n + 1];
                }
                elem_div[qp.element] += qp.w * d;
                Ok(())
            })
            .unwrap();
            let max = elem_div.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(max < 1e-10, "{kind}: max element divergence {max}");
        }
    }

    #[test]
    fn deterministic_in_the_seed() {
        let mesh = build_quad_mesh(5, 5, Rect::unit()).unwrap();
        let a = admissible_perturbation(&mesh, 0.5, 99);
        let b = admissible_perturbation(&mesh, 0.5, 99);
        let c = admissible_perturbation(&mesh, 0.5, 100);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
