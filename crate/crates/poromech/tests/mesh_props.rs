//! Property tests for mesh generation, quadrature and shape functions.

use poromech::mesh::{
    build_quad_mesh, build_tri_mesh, quadrature_for, refine_region, ElementKind, GradedAxis, Rect,
    ShapeBasis, Side,
};
use proptest::prelude::*;

// Element areas via the isoparametric Jacobian, asserting positivity.
fn mesh_area(mesh: &poromech::mesh::Mesh) -> f64 {
    let basis = ShapeBasis::new(mesh.kind(), 2);
    let rule = quadrature_for(mesh.kind(), 4).unwrap();
    let mut total = 0.0;
    for e in 0..mesh.n_elements() {
        let conn = mesh.element(e);
        for (q, pt) in rule.points.iter().enumerate() {
            let (_, grads) = basis.eval_vec(*pt);
            let mut j = [[0.0; 2]; 2];
            for (a, &n) in conn.iter().enumerate() {
                let xy = mesh.node(n);
                for r in 0..2 {
                    for c in 0..2 {
                        j[r][c] += xy[r] * grads[a][c];
                    }
                }
            }
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            assert!(det > 0.0, "element {e}: det {det}");
            total += det * rule.weights[q];
        }
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_and_area_hold_for_all_sizes(nx in 1usize..=64, ny in 1usize..=64,
                                          w in 0.1f64..5.0, h in 0.1f64..5.0) {
        let rect = Rect::new(-1.0, 2.0, -1.0 + w, 2.0 + h);
        let quad = build_quad_mesh(nx, ny, rect).unwrap();
        prop_assert_eq!(quad.n_nodes(), (2 * nx + 1) * (2 * ny + 1));
        prop_assert_eq!(quad.n_elements(), nx * ny);
        prop_assert!((mesh_area(&quad) - rect.area()).abs() < 1e-12 * rect.area().max(1.0));
        prop_assert!((quad.h_max() - (w / nx as f64).max(h / ny as f64)).abs() < 1e-12);

        let tri = build_tri_mesh(nx, ny, rect).unwrap();
        prop_assert_eq!(tri.n_nodes(), (2 * nx + 1) * (2 * ny + 1));
        prop_assert_eq!(tri.n_elements(), 2 * nx * ny);
        prop_assert!((mesh_area(&tri) - rect.area()).abs() < 1e-12 * rect.area().max(1.0));
    }

    #[test]
    fn graded_meshes_preserve_area(nx in 2usize..=16, ny in 2usize..=16,
                                   ratio in 0.2f64..0.9, layers in 1usize..=5,
                                   side_pick in 0usize..4) {
        let rect = Rect::unit();
        let side = Side::ALL[side_pick];
        for kind in [ElementKind::Q9, ElementKind::T6] {
            let mesh = refine_region(kind, nx, ny, rect,
                &[GradedAxis { side, ratio, layers }]).unwrap();
            prop_assert!((mesh_area(&mesh) - 1.0).abs() < 1e-12);
            let extra = layers - 1;
            let cells = match side {
                Side::Left | Side::Right => (nx + extra) * ny,
                Side::Top | Side::Bottom => nx * (ny + extra),
            };
            let per_cell = if kind == ElementKind::Q9 { 1 } else { 2 };
            prop_assert_eq!(mesh.n_elements(), cells * per_cell);
        }
    }

    #[test]
    fn partition_of_unity_at_random_points(u in 0.0f64..1.0, v in 0.0f64..1.0) {
        for kind in [ElementKind::Q9, ElementKind::T6] {
            for order in [1u8, 2] {
                let basis = ShapeBasis::new(kind, order);
                let p = match kind {
                    ElementKind::Q9 => [2.0 * u - 1.0, 2.0 * v - 1.0],
                    ElementKind::T6 => {
                        if u + v <= 1.0 { [u, v] } else { [1.0 - u, 1.0 - v] }
                    }
                };
                let (vals, _) = basis.eval_vec(p);
                let sum: f64 = vals.iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn boundary_edges_unique_and_cover() {
    for kind in [ElementKind::Q9, ElementKind::T6] {
        let mesh = match kind {
            ElementKind::Q9 => build_quad_mesh(7, 4, Rect::new(0.0, 0.0, 2.0, 1.0)).unwrap(),
            ElementKind::T6 => build_tri_mesh(7, 4, Rect::new(0.0, 0.0, 2.0, 1.0)).unwrap(),
        };
        // Each boundary edge appears once, and the sum of tagged lengths is
        // the perimeter.
        let mut seen = std::collections::HashSet::new();
        let mut perimeter = 0.0;
        for be in mesh.boundary_edges() {
            let [a, _, b] = mesh.edge_nodes(be.element, be.local_edge);
            let key = (a.min(b), a.max(b));
            assert!(seen.insert(key), "duplicate boundary edge {key:?}");
            let (pa, pb) = (mesh.node(a), mesh.node(b));
            perimeter += ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2)).sqrt();
        }
        assert!((perimeter - 6.0).abs() < 1e-12, "{kind:?}: {perimeter}");
    }
}

#[test]
fn locate_round_trips_isoparametric_map() {
    // locate() then re-evaluating the map recovers the query point.
    for mesh in [
        build_quad_mesh(5, 3, Rect::new(0.0, 0.0, 0.2, 1.0)).unwrap(),
        build_tri_mesh(5, 3, Rect::new(0.0, 0.0, 0.2, 1.0)).unwrap(),
    ] {
        let basis = ShapeBasis::new(mesh.kind(), 2);
        for k in 0..200 {
            let p = [
                0.2 * ((k as f64 * 0.618_033_988_749_895) % 1.0),
                (k as f64 * 0.414_213_562_373_095) % 1.0,
            ];
            let (e, xi) = mesh.locate(p).unwrap();
            let (vals, _) = basis.eval_vec(xi);
            let conn = mesh.element(e);
            let mut x = [0.0; 2];
            for (a, &n) in conn.iter().enumerate() {
                let node = mesh.node(n);
                x[0] += vals[a] * node[0];
                x[1] += vals[a] * node[1];
            }
            assert!(
                (x[0] - p[0]).abs() < 1e-12 && (x[1] - p[1]).abs() < 1e-12,
                "{p:?} -> {x:?}"
            );
        }
    }
}
