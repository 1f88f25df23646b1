use crate::{
    CliError, ConvergenceArgs, MeshArgs, OutputArgs, ProblemArgs, ReportArgs, SolveArgs,
    TransientArgs,
};
use poromech::fem::{transient_march, write_solution_csv, write_solution_vtk};
use poromech::mesh::{
    build_quad_mesh, build_tri_mesh, refine_region, ElementKind, GradedAxis, Mesh, Side,
};
use poromech::model::{
    benchmark, default_initial_condition, ModelKind, Overrides, ProblemSpec, SpecDocument,
};
use poromech::verify::{
    convergence_study, decay_slope, dissipation, dissipation_theorem_applicable,
    max_principle_check, total_mechanical_power, vorticity_field, MeshSpec, VerificationReport,
};
use std::path::PathBuf;
use std::sync::Arc;

type Result<T> = std::result::Result<T, CliError>;

fn parse_model(s: &str) -> Result<ModelKind> {
    match s {
        "darcy" => Ok(ModelKind::Darcy),
        "darcy_brinkman" | "brinkman" | "darcy-brinkman" => Ok(ModelKind::DarcyBrinkman),
        _ => Err(CliError::Config(format!(
            "unknown model `{s}` (expected `darcy` or `darcy_brinkman`)"
        ))),
    }
}

fn overrides_from(args: &ProblemArgs) -> Result<Overrides> {
    Ok(Overrides {
        model: args.model.as_deref().map(parse_model).transpose()?,
        alpha: args.alpha,
        mu: args.mu,
        rho: args.rho,
        k: args.k,
        amplitude: args.amplitude,
        p_inj: args.p_inj,
        p_atm: args.p_atm,
        raster: args.raster.clone(),
        raster_scale: args.raster_scale,
        ..Default::default()
    })
}

fn build_spec(args: &ProblemArgs) -> Result<ProblemSpec> {
    match (&args.benchmark, &args.spec) {
        (Some(name), None) => Ok(benchmark(name, &overrides_from(args)?)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            let doc = SpecDocument::from_json(&text)
                .map_err(|e| CliError::Config(format!("malformed spec {}: {e}", path.display())))?;
            // Command-line overrides refine the document's.
            let mut doc = doc;
            let cli_ov = overrides_from(args)?;
            merge_overrides(&mut doc.overrides, &cli_ov);
            Ok(doc.build()?)
        }
        (None, None) => Err(CliError::Config(
            "exactly one problem source is required: --benchmark NAME or --spec FILE".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Config(
            "give either --benchmark or --spec, not both".into(),
        )),
    }
}

fn merge_overrides(base: &mut Overrides, cli: &Overrides) {
    macro_rules! take {
        ($($f:ident),*) => { $( if cli.$f.is_some() { base.$f = cli.$f.clone(); } )* };
    }
    take!(
        model,
        alpha,
        mu,
        rho,
        k,
        amplitude,
        p_inj,
        p_atm,
        raster,
        raster_scale
    );
}

fn gradings(pairs: &[(&Option<Vec<f64>>, Side)]) -> Result<Vec<GradedAxis>> {
    let mut out = Vec::new();
    for (arg, side) in pairs {
        if let Some(v) = arg {
            let layers = v[1] as usize;
            if v[1].fract() != 0.0 || layers == 0 {
                return Err(CliError::Config(format!(
                    "grading layers must be a positive integer, got {}",
                    v[1]
                )));
            }
            out.push(GradedAxis {
                side: *side,
                ratio: v[0],
                layers,
            });
        }
    }
    Ok(out)
}

fn build_mesh(args: &MeshArgs, spec: &ProblemSpec) -> Result<Mesh> {
    let graded = gradings(&[
        (&args.grade_top, Side::Top),
        (&args.grade_bottom, Side::Bottom),
        (&args.grade_left, Side::Left),
        (&args.grade_right, Side::Right),
    ])?;
    let (kind, nx, ny) = match (&args.quad, &args.tri) {
        (Some(q), None) => (ElementKind::Q9, q[0], q[1]),
        (None, Some(t)) => (ElementKind::T6, t[0], t[1]),
        (None, None) => {
            // Default: 1/h = 16 quadrilaterals.
            let nx = (16.0 * spec.domain.width()).round().max(1.0) as usize;
            let ny = (16.0 * spec.domain.height()).round().max(1.0) as usize;
            (ElementKind::Q9, nx, ny)
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let mesh = if graded.is_empty() {
        match kind {
            ElementKind::Q9 => build_quad_mesh(nx, ny, spec.domain)?,
            ElementKind::T6 => build_tri_mesh(nx, ny, spec.domain)?,
        }
    } else {
        refine_region(kind, nx, ny, spec.domain, &graded)?
    };
    Ok(mesh)
}

fn out_dir(args: &OutputArgs) -> Result<PathBuf> {
    let dir = args
        .out
        .clone()
        .or_else(|| std::env::var_os("POROMECH_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Config(format!("output directory {}: {e}", dir.display())))?;
    Ok(dir)
}

fn make_report(
    solution: &poromech::fem::SolutionField,
    spec: &ProblemSpec,
) -> Result<VerificationReport> {
    let phi = dissipation(solution, spec)?;
    let tmp = total_mechanical_power(solution, spec)?;
    let w = vorticity_field(solution)?;
    let vorticity = max_principle_check(&w, 1e-10);
    Ok(VerificationReport {
        phi,
        tmp,
        reciprocal: None,
        vorticity,
        decay: None,
        dissipation_theorem_applicable: dissipation_theorem_applicable(spec),
    })
}

pub fn solve(args: &SolveArgs, report_only: bool) -> Result<()> {
    let spec = build_spec(&args.problem)?;
    let mesh = build_mesh(&args.mesh, &spec)?;
    let (mesh, solution) = poromech::fem::solve_problem(&spec, mesh)?;
    let report = make_report(&solution, &spec)?;
    let dir = out_dir(&args.output)?;
    let report_path = dir.join(format!("{}_report.json", spec.name));
    std::fs::write(&report_path, report.to_json())?;
    if report_only {
        println!("{}", report.to_json());
        return Ok(());
    }
    println!(
        "{} [{}] on {} elements: phi = {:.6e}, tmp = {:.6e}, max principle: {}",
        spec.name,
        spec.model,
        mesh.n_elements(),
        report.phi,
        report.tmp,
        if report.vorticity.max_principle_ok {
            "ok"
        } else {
            "violated"
        },
    );
    let w = vorticity_field(&solution)?;
    if args.output.vtk {
        let path = dir.join(format!("{}_solution.vtk", spec.name));
        write_solution_vtk(&solution, Some(&w.values), &path)?;
        println!("wrote {}", path.display());
    }
    if args.output.csv {
        let path = dir.join(format!("{}_solution.csv", spec.name));
        write_solution_csv(&solution, Some(&w.values), &path)?;
        println!("wrote {}", path.display());
    }
    println!("wrote {}", report_path.display());
    Ok(())
}

pub fn convergence(args: &ConvergenceArgs) -> Result<()> {
    if args.levels.len() < 3 {
        return Err(CliError::Config(format!(
            "a convergence study needs at least 3 levels, got {}",
            args.levels.len()
        )));
    }
    let spec = build_spec(&args.problem)?;
    let graded = gradings(&[
        (&args.mesh_grading.grade_top, Side::Top),
        (&args.mesh_grading.grade_bottom, Side::Bottom),
        (&args.mesh_grading.grade_left, Side::Left),
        (&args.mesh_grading.grade_right, Side::Right),
    ])?;
    let kind = if args.tri {
        ElementKind::T6
    } else {
        ElementKind::Q9
    };
    let meshes: Vec<MeshSpec> = args
        .levels
        .iter()
        .map(|&level| MeshSpec {
            kind,
            nx: ((level as f64) * spec.domain.width()).round().max(1.0) as usize,
            ny: ((level as f64) * spec.domain.height()).round().max(1.0) as usize,
            graded: graded.clone(),
        })
        .collect();
    let pair = match args.pair_p_inj {
        Some(p) => {
            let mut pa = args.problem.clone();
            pa.p_inj = Some(p);
            Some(build_spec(&pa)?)
        }
        None => None,
    };
    let table = convergence_study(&spec, pair.as_ref(), &meshes)?;
    let dir = out_dir(&args.output)?;
    let path = dir.join(format!("{}_convergence.csv", spec.name));
    std::fs::write(&path, table.to_csv())?;
    print!("{}", table.to_csv());
    println!("wrote {}", path.display());
    if table.rows.iter().any(|r| r.error.is_some()) {
        return Err(CliError::Run("one or more levels failed to solve".into()));
    }
    Ok(())
}

pub fn transient(args: &TransientArgs) -> Result<()> {
    if !(args.dt > 0.0) {
        return Err(CliError::Config(format!(
            "--dt must be positive, got {}",
            args.dt
        )));
    }
    if !(args.t_end > 0.0) {
        return Err(CliError::Config(format!(
            "--t-end must be positive, got {}",
            args.t_end
        )));
    }
    if args.probe.len() % 2 != 0 {
        return Err(CliError::Config("--probe takes X Y pairs".into()));
    }
    let base = build_spec(&args.problem)?;
    let v0 = default_initial_condition(&base);
    let spec = base.with_transient(v0, args.dt, args.t_end);
    let mesh = build_mesh(&args.mesh, &spec)?;
    let mesh = Arc::new(spec.prepare_mesh(mesh)?);

    let probes: Vec<[f64; 2]> = if args.probe.is_empty() {
        vec![[
            0.5 * (spec.domain.x0 + spec.domain.x1),
            0.5 * (spec.domain.y0 + spec.domain.y1),
        ]]
    } else {
        args.probe.chunks(2).map(|c| [c[0], c[1]]).collect()
    };
    for p in &probes {
        if !spec.domain.contains(*p, 0.0) {
            return Err(CliError::Config(format!(
                "probe {p:?} lies outside the domain"
            )));
        }
    }

    let dir = out_dir(&args.output)?;
    let check_maxp = spec.model == ModelKind::DarcyBrinkman;
    let mut series: Vec<Vec<(f64, f64)>> = vec![vec![]; probes.len()];
    let mut rows: Vec<String> = Vec::new();
    let mut maxp_all_ok = true;
    let mut last_maxp = None;
    let vtk_every = args.vtk_every.unwrap_or(0);

    let end_state = transient_march(&mesh, &spec, |state| {
        let w = vorticity_field(&state.solution)?;
        let mut row = format!("{}", state.time());
        for (k, p) in probes.iter().enumerate() {
            let wz = w.evaluate(*p)?;
            series[k].push((state.time(), wz));
            row.push_str(&format!(",{wz}"));
        }
        if check_maxp {
            let rep = max_principle_check(&w, 1e-10);
            maxp_all_ok &= rep.max_principle_ok;
            row.push_str(&format!(",{}", rep.max_principle_ok));
            last_maxp = Some(rep);
        }
        rows.push(row);
        if vtk_every > 0 && state.step % vtk_every == 0 {
            let path = dir.join(format!("{}_step{:05}.vtk", spec.name, state.step));
            write_solution_vtk(&state.solution, Some(&w.values), &path)?;
        }
        Ok(())
    })?;

    // Time-series CSV.
    let mut csv = String::from("t");
    for (k, p) in probes.iter().enumerate() {
        csv.push_str(&format!(",omega_probe{k}_{}_{}", p[0], p[1]));
    }
    if check_maxp {
        csv.push_str(",max_principle_ok");
    }
    csv.push('\n');
    for row in &rows {
        csv.push_str(row);
        csv.push('\n');
    }

    // Decay fits for Darcy.
    let mut decay_fit = None;
    if spec.model == ModelKind::Darcy {
        let alpha = spec.alpha([
            0.5 * (spec.domain.x0 + spec.domain.x1),
            0.5 * (spec.domain.y0 + spec.domain.y1),
        ])?;
        let target = -alpha / spec.fluid.rho;
        for (k, s) in series.iter().enumerate() {
            match decay_slope(s, target) {
                Ok(fit) => {
                    csv.push_str(&format!(
                        "# probe{k} decay slope = {} (target {target})\n",
                        fit.slope
                    ));
                    println!("probe {k} decay slope: {:.6} (target {target})", fit.slope);
                    if decay_fit.is_none() {
                        decay_fit = Some(fit);
                    }
                }
                Err(e) => {
                    csv.push_str(&format!("# probe{k} decay fit failed: {e}\n"));
                    println!("probe {k} decay fit failed: {e}");
                }
            }
        }
    } else {
        println!(
            "max principle over all steps: {}",
            if maxp_all_ok { "ok" } else { "violated" }
        );
    }
    let csv_path = dir.join(format!("{}_timeseries.csv", spec.name));
    std::fs::write(&csv_path, &csv)?;
    println!("wrote {}", csv_path.display());

    // Final-state report.
    let mut report = make_report(&end_state.solution, &spec)?;
    report.decay = decay_fit;
    if let Some(rep) = last_maxp {
        report.vorticity = rep;
    }
    let report_path = dir.join(format!("{}_report.json", spec.name));
    std::fs::write(&report_path, report.to_json())?;
    println!("wrote {}", report_path.display());
    Ok(())
}

pub fn report(args: &ReportArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.input.display())))?;
    let report = VerificationReport::from_json(&text)
        .map_err(|e| CliError::Config(format!("malformed report: {e}")))?;
    let csv = report.to_csv();
    match &args.csv {
        Some(path) => {
            std::fs::write(path, &csv)?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}
