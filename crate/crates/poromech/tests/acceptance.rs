//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the measured values (run with `--nocapture` to see them).

use poromech::fem::{
    assemble, solve_problem, solve_steady, transient_march, AssemblyOptions, GaugeChoice,
    SolutionField,
};
use poromech::mesh::{
    build_quad_mesh, build_tri_mesh, refine_region, ElementKind, GradedAxis, Mesh, Side,
};
use poromech::model::{benchmark, BcKind, ModelKind, Overrides, ProblemSpec};
use poromech::verify::{
    admissible_perturbation, cross_dissipation, decay_slope, dissipation, dissipation_of_velocity,
    max_principle_check, metric_flags, reciprocal_residual, total_mechanical_power,
    total_mechanical_power_of_velocity, vorticity_field,
};
use std::f64::consts::PI;
use std::sync::Arc;

fn line(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn with_model(name: &str, model: ModelKind) -> ProblemSpec {
    let ov = Overrides {
        model: Some(model),
        ..Default::default()
    };
    benchmark(name, &ov).unwrap()
}

// Mesh at refinement level 1/h: square cells of size 1/level.
fn level_mesh(spec: &ProblemSpec, level: usize) -> Mesh {
    let nx = ((level as f64) * spec.domain.width()).round().max(1.0) as usize;
    let ny = ((level as f64) * spec.domain.height()).round().max(1.0) as usize;
    build_quad_mesh(nx, ny, spec.domain).unwrap()
}

fn solve_at_level(spec: &ProblemSpec, level: usize) -> SolutionField {
    solve_problem(spec, level_mesh(spec, level)).unwrap().1
}

#[test]
fn criterion_01_body_force_exactness() {
    // The exact solution is v = 0: Phi and |tmp| decrease monotonically over
    // 1/h in {4, 8, 16, 32} and Phi(1/h=32) < Phi(1/h=4) / 10, both models.
    // Runtime budget: 2 minutes.
    let start = std::time::Instant::now();
    let mut all_ok = true;
    let mut detail = String::new();
    for model in [ModelKind::Darcy, ModelKind::DarcyBrinkman] {
        let spec = with_model("body_force", model);
        let mut phis = Vec::new();
        let mut tmps = Vec::new();
        for level in [4usize, 8, 16, 32] {
            let sol = solve_at_level(&spec, level);
            phis.push(dissipation(&sol, &spec).unwrap());
            tmps.push(total_mechanical_power(&sol, &spec).unwrap().abs());
        }
        let phi_dec = phis.windows(2).all(|w| w[1] < w[0]);
        let tmp_dec = tmps.windows(2).all(|w| w[1] < w[0]);
        let tenfold = phis[3] < phis[0] / 10.0;
        all_ok &= phi_dec && tmp_dec && tenfold;
        detail.push_str(&format!(
            "{model:?}: phi {:?} decreasing={phi_dec} tenfold={tenfold}, |tmp| decreasing={tmp_dec}; ",
            phis.iter().map(|p| format!("{p:.3e}")).collect::<Vec<_>>()
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    all_ok &= elapsed < 120.0;
    detail.push_str(&format!("runtime {elapsed:.1}s (limit 120s)"));
    line("01 body-force exactness", all_ok, &detail);
    assert!(all_ok, "{detail}");
}

#[test]
fn criterion_02_minimum_dissipation() {
    // Lid cavity Brinkman at 1/h = 16: Phi[v + dv] >= Phi[v] for 50 seeded
    // admissible perturbations, zero violations.
    let start = std::time::Instant::now();
    let spec = benchmark("lid_cavity", &Overrides::default()).unwrap();
    let (mesh, sol) = solve_problem(&spec, level_mesh(&spec, 16)).unwrap();
    let phi0 = dissipation(&sol, &spec).unwrap();
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for seed in 0..50u64 {
        let delta = admissible_perturbation(&mesh, 0.25, seed);
        let v: Vec<f64> = sol
            .velocity
            .iter()
            .zip(&delta)
            .map(|(a, b)| a + b)
            .collect();
        let phi = dissipation_of_velocity(&mesh, &v, &spec).unwrap();
        min_margin = min_margin.min(phi - phi0);
        if phi < phi0 {
            violations += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = violations == 0 && elapsed < 60.0;
    line(
        "02 minimum dissipation",
        ok,
        &format!(
            "phi = {phi0:.4}, 50 seeds, violations = {violations}, smallest margin = {min_margin:.3e}, runtime {elapsed:.1}s (limit 60s)"
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_03_minimum_total_mechanical_power() {
    // Pipe bend (velocity data), both models: same perturbation test on the
    // total mechanical power, zero violations.
    let mut all_ok = true;
    let mut detail = String::new();
    for model in [ModelKind::Darcy, ModelKind::DarcyBrinkman] {
        let spec = with_model("pipe_bend_velocity", model);
        let (mesh, sol) = solve_problem(&spec, level_mesh(&spec, 16)).unwrap();
        let tmp0 = total_mechanical_power(&sol, &spec).unwrap();
        let mut violations = 0;
        let mut min_margin = f64::INFINITY;
        for seed in 0..50u64 {
            let delta = admissible_perturbation(&mesh, 0.25, seed);
            let v: Vec<f64> = sol
                .velocity
                .iter()
                .zip(&delta)
                .map(|(a, b)| a + b)
                .collect();
            let tmp = total_mechanical_power_of_velocity(&mesh, &v, &spec).unwrap();
            min_margin = min_margin.min(tmp - tmp0);
            if tmp < tmp0 {
                violations += 1;
            }
        }
        all_ok &= violations == 0;
        detail.push_str(&format!(
            "{model:?}: tmp = {tmp0:.4}, violations = {violations}, smallest margin = {min_margin:.3e}; "
        ));
    }
    line("03 minimum total mechanical power", all_ok, &detail);
    assert!(all_ok, "{detail}");
}

fn slab_pair(model: ModelKind) -> (ProblemSpec, ProblemSpec) {
    let mk = |p_inj: f64| {
        let ov = Overrides {
            model: Some(model),
            p_inj: Some(p_inj),
            ..Default::default()
        };
        benchmark("pressure_slab", &ov).unwrap()
    };
    (mk(5.0), mk(7.5))
}

fn reciprocal_over_levels(model: ModelKind, levels: &[usize]) -> Vec<f64> {
    let (s1, s2) = slab_pair(model);
    levels
        .iter()
        .map(|&level| {
            let mesh = Arc::new(level_mesh(&s1, level));
            let sol1 = solve_steady(&assemble(&mesh, &s1, &Default::default()).unwrap()).unwrap();
            let sol2 = solve_steady(&assemble(&mesh, &s2, &Default::default()).unwrap()).unwrap();
            reciprocal_residual(&sol1, &s1, &sol2, &s2)
                .unwrap()
                .magnitude()
        })
        .collect()
}

#[test]
fn criterion_04_reciprocal_relation() {
    // Darcy slab pair p_inj in {5, 7.5}: |eps| < 1e-8 on every level
    // 1/h in {5, 10, 20, 40}. Brinkman pair: |eps| monotone decreasing.
    let levels = [5usize, 10, 20, 40];
    let darcy = reciprocal_over_levels(ModelKind::Darcy, &levels);
    let darcy_ok = darcy.iter().all(|&e| e < 1e-8);
    let brinkman = reciprocal_over_levels(ModelKind::DarcyBrinkman, &levels);
    let brinkman_dec = brinkman.windows(2).all(|w| w[1] < w[0]);
    line(
        "04 reciprocal relation",
        darcy_ok && brinkman_dec,
        &format!(
            "darcy |eps| = {:?} (all < 1e-8: {darcy_ok}); brinkman |eps| = {:?} (monotone decreasing: {brinkman_dec})",
            darcy.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>(),
            brinkman.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>()
        ),
    );
    assert!(darcy_ok, "darcy residuals {darcy:?}");
    // The Galerkin discretization here is symmetric, which makes the
    // discrete reciprocal identity exact: the Brinkman residuals sit at the
    // floating-point floor (~1e-15) on every level instead of forming a
    // decreasing discretization-error curve. A monotone decrease cannot be
    // observed in that regime; the assertion is kept as specified and the
    // analysis is recorded in the project notes.
    assert!(
        brinkman_dec,
        "brinkman residuals are at the roundoff floor, not monotone: {brinkman:?}"
    );
}

#[test]
fn criterion_05_reciprocal_identity_oracle() {
    // On a 2 x 2 Brinkman slab mesh: left integral, right integral and the
    // direct quadrature of int alpha v1.v2 + int 2 mu D1.D2 agree pairwise
    // within 1e-8 relative.
    let (s1, s2) = slab_pair(ModelKind::DarcyBrinkman);
    let mesh = Arc::new(build_quad_mesh(2, 2, s1.domain).unwrap());
    let sol1 = solve_steady(&assemble(&mesh, &s1, &Default::default()).unwrap()).unwrap();
    let sol2 = solve_steady(&assemble(&mesh, &s2, &Default::default()).unwrap()).unwrap();
    let r = reciprocal_residual(&sol1, &s1, &sol2, &s2).unwrap();
    let cross = cross_dissipation(&sol1, &sol2, &s1).unwrap();
    let scale = cross.abs();
    let ok = (r.left - r.right).abs() < 1e-8 * scale
        && (r.left - cross).abs() < 1e-8 * scale
        && (r.right - cross).abs() < 1e-8 * scale;
    line(
        "05 reciprocal identity oracle",
        ok,
        &format!(
            "left = {:.10e}, right = {:.10e}, direct = {:.10e}",
            r.left, r.right, cross
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_06_steady_maximum_principle() {
    // Brinkman solutions of body_force, lid_cavity, pressure_slab at
    // 1/h = 20 all satisfy the vorticity maximum principle at tol 1e-10.
    let mut all_ok = true;
    let mut detail = String::new();
    for name in ["body_force", "lid_cavity", "pressure_slab"] {
        let spec = with_model(name, ModelKind::DarcyBrinkman);
        let sol = solve_at_level(&spec, 20);
        let w = vorticity_field(&sol).unwrap();
        let rep = max_principle_check(&w, 1e-10);
        all_ok &= rep.max_principle_ok;
        detail.push_str(&format!(
            "{name}: ok={} (interior [{:.3e}, {:.3e}], boundary [{:.3e}, {:.3e}]); ",
            rep.max_principle_ok,
            rep.interior_min,
            rep.interior_max,
            rep.boundary_min,
            rep.boundary_max
        ));
    }
    line("06 steady vorticity maximum principle", all_ok, &detail);
    assert!(all_ok, "{detail}");
}

#[test]
fn criterion_07_darcy_vorticity_vanishing() {
    // body_force Darcy: ||omega||_L2 must decrease by >= 4x from 1/h = 8 to
    // 1/h = 32. Measured on both element families; the T6 family carries the
    // real discretization signal (on tensor-product Q9 grids the discrete
    // curl is already at the solver floor, ~1e-10, on every level).
    let spec = benchmark("body_force", &Overrides::default()).unwrap();
    let norm_for = |mesh: Mesh| {
        let (_, sol) = solve_problem(&spec, mesh).unwrap();
        vorticity_field(&sol).unwrap().l2_norm().unwrap()
    };
    let q9: Vec<f64> = [8usize, 16, 32]
        .iter()
        .map(|&n| norm_for(build_quad_mesh(n, n, spec.domain).unwrap()))
        .collect();
    let t6: Vec<f64> = [8usize, 16, 32]
        .iter()
        .map(|&n| norm_for(build_tri_mesh(n, n, spec.domain).unwrap()))
        .collect();
    let t6_ratio = t6[0] / t6[2];
    let ok = t6_ratio >= 4.0;
    line(
        "07 Darcy vorticity vanishing",
        ok,
        &format!(
            "T6 norms {:?}, ratio 8->32 = {t6_ratio:.2} (required >= 4); Q9 norms {:?} (solver floor)",
            t6.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>(),
            q9.iter().map(|e| format!("{e:.1e}")).collect::<Vec<_>>()
        ),
    );
    // The conforming Galerkin velocity carries an O(1) vorticity layer one
    // element wide along the boundary (the tangential trace is not
    // controlled by the Darcy bilinear form), so ||omega|| decays like
    // h^(1/2) and a 4x drop over two halvings is not attainable with the
    // Q2/Q1 + symmetric-stabilization discretization this project mandates;
    // see the project notes. The assertion is kept as specified.
    assert!(ok, "T6 ratio {t6_ratio:.2} < 4, T6 {t6:?}, Q9 {q9:?}");
}

fn slab_transient(dt: f64) -> ProblemSpec {
    let spec = benchmark("pressure_slab", &Overrides::default()).unwrap();
    let w = spec.domain.width();
    let l = spec.domain.height();
    spec.with_transient(
        Arc::new(move |x: [f64; 2]| {
            let s = (PI * x[0] / w).sin() * (PI * x[1] / l).sin();
            [s, s]
        }),
        dt,
        1.0,
    )
}

fn decay_slopes(level: usize, dt: f64, probes: &[[f64; 2]]) -> Vec<f64> {
    let spec = slab_transient(dt);
    let mesh = Arc::new(level_mesh(&spec, level));
    let mut series: Vec<Vec<(f64, f64)>> = vec![vec![]; probes.len()];
    transient_march(&mesh, &spec, |state| {
        let w = vorticity_field(&state.solution)?;
        for (k, p) in probes.iter().enumerate() {
            series[k].push((state.time(), w.evaluate(*p)?));
        }
        Ok(())
    })
    .unwrap();
    series
        .iter()
        .map(|s| decay_slope(s, -1.0).unwrap().slope)
        .collect()
}

#[test]
fn criterion_08_transient_darcy_decay() {
    // Slab with the catalog defaults and sine initial data, dt = 0.01,
    // t_end = 1: fitted decay
    // slope within 2% of -1 at three distinct probes; halving dt shrinks
    // |slope + 1|.
    let probes = [[0.05, 0.95], [0.15, 0.35], [0.05, 0.25]];
    let slopes = decay_slopes(20, 0.01, &probes);
    let within = slopes.iter().all(|s| (s + 1.0).abs() < 0.02);
    let slopes_half = decay_slopes(20, 0.005, &probes);
    let improves = slopes
        .iter()
        .zip(&slopes_half)
        .all(|(a, b)| (b + 1.0).abs() < (a + 1.0).abs());
    let ok = within && improves;
    line(
        "08 transient Darcy decay",
        ok,
        &format!(
            "slopes(dt=0.01) = {:?} within 2% of -1: {within}; slopes(dt=0.005) = {:?} improve: {improves}",
            slopes.iter().map(|s| format!("{s:.5}")).collect::<Vec<_>>(),
            slopes_half.iter().map(|s| format!("{s:.5}")).collect::<Vec<_>>()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_09_transient_brinkman_maximum_principle() {
    // Cavity and body-force runs at dt = 0.5, 1/h = 10: the vorticity
    // maximum principle holds at t = 1.
    let mut all_ok = true;
    let mut detail = String::new();
    for name in ["lid_cavity", "body_force"] {
        let base = with_model(name, ModelKind::DarcyBrinkman);
        let d = base.domain;
        let v0: poromech::model::InitialFn = if name == "lid_cavity" {
            Arc::new(|_| [0.0, 0.0])
        } else {
            Arc::new(move |x: [f64; 2]| {
                let s = (PI * (x[0] - d.x0) / d.width()).sin()
                    * (PI * (x[1] - d.y0) / d.height()).sin();
                [s, s]
            })
        };
        let spec = base.with_transient(v0, 0.5, 1.0);
        let mesh = Arc::new(level_mesh(&spec, 10));
        let end = transient_march(&mesh, &spec, |_| Ok(())).unwrap();
        let w = vorticity_field(&end.solution).unwrap();
        let rep = max_principle_check(&w, 1e-10);
        all_ok &= rep.max_principle_ok;
        detail.push_str(&format!("{name}: ok={} at t=1; ", rep.max_principle_ok));
    }
    line("09 transient Brinkman maximum principle", all_ok, &detail);
    assert!(all_ok, "{detail}");
}

// Channel profile constants (slab defaults).
const CH_ALPHA: f64 = 1.0;
const CH_MU: f64 = 0.001;
const CH_G: f64 = (5.0 - 1.0) / 0.2;

fn channel_profile(y: f64) -> f64 {
    let m = (CH_ALPHA / CH_MU).sqrt();
    (CH_G / CH_ALPHA) * (1.0 - (m * (y - 0.5)).cosh() / (m * 0.5).cosh())
}

#[test]
fn criterion_10_channel_oracle() {
    // (a) Pressure-driven slab Brinkman at 1/h = 32: midline velocity within
    // 1% of the analytic cosh profile.
    let spec = with_model("pressure_slab", ModelKind::DarcyBrinkman);
    let sol = solve_at_level(&spec, 32);
    let peak = channel_profile(0.5);
    let mut max_dev: f64 = 0.0;
    for i in 1..400 {
        let y = i as f64 / 400.0;
        let (v, _) = sol.evaluate([0.1, y]).unwrap();
        max_dev = max_dev.max((v[0] - channel_profile(y)).abs());
    }
    let midline_ok = max_dev / peak < 0.01;

    // (b) Convergence order >= 2 across three h-halvings, measured on the
    // channel with the profile prescribed as inlet/outlet velocity data (the
    // configuration whose exact solution is the cosh profile).
    let mut mes = spec.clone();
    let profile = Arc::new(move |x: [f64; 2], _t: f64| [channel_profile(x[1]), 0.0]);
    mes.bcs
        .insert("left".into(), BcKind::VelocityVector(profile.clone()));
    mes.bcs
        .insert("right".into(), BcKind::VelocityVector(profile));
    let mut errs = Vec::new();
    for level in [8usize, 16, 32, 64] {
        let nx = ((0.2 * level as f64).ceil() as usize).max(1);
        let (_, s) = solve_problem(&mes, build_quad_mesh(nx, level, mes.domain).unwrap()).unwrap();
        let samples = 120;
        let mut total = 0.0;
        for i in 0..samples {
            for j in 0..samples {
                let x = 0.2 * (i as f64 + 0.5) / samples as f64;
                let y = (j as f64 + 0.5) / samples as f64;
                let (v, _) = s.evaluate([x, y]).unwrap();
                let dx = v[0] - channel_profile(y);
                total += (dx * dx + v[1] * v[1]) * 0.2 / (samples * samples) as f64;
            }
        }
        errs.push(total.sqrt());
    }
    let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let orders_ok = orders.iter().all(|&o| o >= 2.0);

    let ok = midline_ok && orders_ok;
    line(
        "10 channel oracle",
        ok,
        &format!(
            "midline max deviation {:.3}% of peak (limit 1%); orders over three halvings {:?}",
            100.0 * max_dev / peak,
            orders.iter().map(|o| format!("{o:.2}")).collect::<Vec<_>>()
        ),
    );
    assert!(ok, "midline {midline_ok}, orders {orders:?}");
}

#[test]
fn criterion_11_uniqueness() {
    // Two all-essential solves with different gauges and traversal orders:
    // velocity L2 difference < 1e-8, pressure difference std < 1e-8.
    let spec = with_model("body_force", ModelKind::DarcyBrinkman);
    let mesh = Arc::new(level_mesh(&spec, 12));
    let sol_a = solve_steady(&assemble(&mesh, &spec, &Default::default()).unwrap()).unwrap();
    let opts = AssemblyOptions {
        gauge: GaugeChoice::PinFirst,
        reverse_traversal: true,
        ..Default::default()
    };
    let sol_b = solve_steady(&assemble(&mesh, &spec, &opts).unwrap()).unwrap();
    let vdiff = sol_a.velocity_l2_difference(&sol_b).unwrap();
    let n = sol_a.pressure.len() as f64;
    let mean: f64 = sol_a
        .pressure
        .iter()
        .zip(&sol_b.pressure)
        .map(|(a, b)| a - b)
        .sum::<f64>()
        / n;
    let std = (sol_a
        .pressure
        .iter()
        .zip(&sol_b.pressure)
        .map(|(a, b)| (a - b - mean).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let ok = vdiff < 1e-8 && std < 1e-8;
    line(
        "11 uniqueness",
        ok,
        &format!(
            "velocity L2 diff = {vdiff:.3e}, pressure shift = {mean:.4}, shift std = {std:.3e}"
        ),
    );
    assert!(ok);
}

// Geometric-grading ratio (layers fixed) whose smallest cell equals target,
// found by bisection: smallest/h = r^(L-1) (1-r) / (1 - r^L).
fn grading_ratio_for(h: f64, layers: usize, target: f64) -> f64 {
    let frac = target / h;
    let f = |r: f64| r.powi(layers as i32 - 1) * (1.0 - r) / (1.0 - r.powi(layers as i32));
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < frac {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_12_pollution_detection() {
    // Cavity Brinkman dissipation: uniform meshes increase monotonically
    // with no plateau through 1/h = 32 (corner-singularity pollution), while
    // a graded family whose smallest near-corner cell is held at 1/256 sets
    // the plateau flag.
    let spec = benchmark("lid_cavity", &Overrides::default()).unwrap();
    let levels = [4usize, 8, 16, 32];
    let uniform: Vec<f64> = levels
        .iter()
        .map(|&n| dissipation(&solve_at_level(&spec, n), &spec).unwrap())
        .collect();
    let uf = metric_flags(&uniform);
    let uniform_ok = uf.monotone_increasing && !uf.plateau;

    let graded: Vec<f64> = levels
        .iter()
        .map(|&n| {
            let h = 1.0 / n as f64;
            let layers = 4;
            let ratio = grading_ratio_for(h, layers, 1.0 / 256.0);
            let mesh = refine_region(
                ElementKind::Q9,
                2 * n,
                2 * n,
                spec.domain,
                &[
                    GradedAxis {
                        side: Side::Top,
                        ratio,
                        layers,
                    },
                    GradedAxis {
                        side: Side::Left,
                        ratio,
                        layers,
                    },
                    GradedAxis {
                        side: Side::Right,
                        ratio,
                        layers,
                    },
                ],
            )
            .unwrap();
            let (_, sol) = solve_problem(&spec, mesh).unwrap();
            dissipation(&sol, &spec).unwrap()
        })
        .collect();
    let gf = metric_flags(&graded);
    let graded_ok = gf.plateau;

    let ok = uniform_ok && graded_ok;
    line(
        "12 pollution detection",
        ok,
        &format!(
            "uniform phi {:?} (increasing={}, plateau={}); graded phi {:?} (plateau={})",
            uniform
                .iter()
                .map(|p| format!("{p:.4}"))
                .collect::<Vec<_>>(),
            uf.monotone_increasing,
            uf.plateau,
            graded.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>(),
            gf.plateau
        ),
    );
    assert!(
        ok,
        "uniform {uniform:?} flags {uf:?}; graded {graded:?} flags {gf:?}"
    );
}

#[test]
fn acceptance_mesh_levels_are_well_formed() {
    // The slab level mapping used above yields integer cell counts at the
    // levels used by the reciprocal study.
    let spec = benchmark("pressure_slab", &Overrides::default()).unwrap();
    for (level, nx, ny) in [
        (5usize, 1usize, 5usize),
        (10, 2, 10),
        (20, 4, 20),
        (40, 8, 40),
    ] {
        let mesh = level_mesh(&spec, level);
        assert_eq!(mesh.n_elements(), nx * ny);
        assert!((mesh.h_max() - 1.0 / level as f64).abs() < 1e-12);
    }
    // The bi-unit cavity at 1/h = n uses 2n x 2n cells.
    let cavity = benchmark("lid_cavity", &Overrides::default()).unwrap();
    let mesh = level_mesh(&cavity, 16);
    assert_eq!(mesh.n_elements(), 32 * 32);
}
