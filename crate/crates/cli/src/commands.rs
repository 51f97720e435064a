use std::path::Path;

use qclass_core::ensemble::{self, CPlusPredicate, ClassifyConfig, Ensemble, Figure};
use qclass_core::kernel::{
    build_pair_kernel, build_quatrit_kernel, pair_spectrum, quatrit_spectrum, validate_kernel,
    KernelResiduals, PairModuli, QuatritModuli,
};
use qclass_core::linalg::C64;
use qclass_core::wigner::{self, Group, OrbitOptions, PhasePoint};
use qclass_core::{Herm4, KernelKind, KernelSpec, Spectrum4, SwKernel, WignerBounds, XState};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::*;
use crate::config::Resolved;
use crate::error::{CliError, CliResult};
use crate::output::{emit, emit_csv, sig9, to_json, Metadata};

/// Dense 4×4 state with `[re, im]` entries.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DenseState {
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Reads a state file in either the X-state or the dense schema.
pub fn load_state(path: &Path) -> CliResult<Herm4> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let schema_err = |e: serde_json::Error| CliError::schema(format!("{}: {e}", path.display()));
    let value: serde_json::Value = serde_json::from_str(&text).map_err(schema_err)?;
    let rho = if value.get("matrix").is_some() {
        let dense: DenseState = serde_json::from_str(&text).map_err(schema_err)?;
        if dense.matrix.len() != 4 || dense.matrix.iter().any(|r| r.len() != 4) {
            return Err(CliError::schema(format!(
                "{}: `matrix` must be 4×4",
                path.display()
            )));
        }
        let entries = std::array::from_fn(|i| {
            std::array::from_fn(|j| C64::new(dense.matrix[i][j][0], dense.matrix[i][j][1]))
        });
        Herm4::new(entries)?
    } else {
        let x: XState = serde_json::from_str(&text).map_err(schema_err)?;
        x.validate()?;
        x.to_matrix()
    };
    rho.validate_density()?;
    Ok(rho)
}

fn c_plus(c: CPlus) -> CPlusPredicate {
    match c {
        CPlus::Polytope => CPlusPredicate::Polytope,
        CPlus::LuOrbit => CPlusPredicate::LuOrbit,
    }
}

#[derive(Serialize)]
struct OrbitReport {
    group: Group,
    min_value: f64,
    converged: bool,
    restarts_used: usize,
    gradient_norm: f64,
    iterations: usize,
    argmin_parameters: Vec<f64>,
    lower_bound: f64,
}

fn orbit_report(m: &wigner::OrbitMinimum, group: Group, bounds: &WignerBounds) -> OrbitReport {
    let argmin_parameters = match m.argmin {
        PhasePoint::Lu(p) => p.to_array().to_vec(),
        PhasePoint::Full(p) => p.to_array().to_vec(),
    };
    OrbitReport {
        group,
        min_value: m.min_value,
        converged: m.converged,
        restarts_used: m.restarts_used,
        gradient_norm: m.gradient_norm,
        iterations: m.iterations,
        argmin_parameters,
        lower_bound: bounds.lower,
    }
}

pub fn classify(args: &ClassifyArgs, r: &Resolved) -> CliResult<()> {
    let rho = load_state(&args.state)?;
    let kernel = args.kernel.build()?;
    let cfg = ClassifyConfig {
        orbit_check: args.orbit_check,
        orbit_restarts: r.config.orbit_restarts,
        orbit_budget: r.config.orbit_budget,
        c_plus: c_plus(args.c_plus),
        tolerances: r.config.tolerances,
    };
    let a = ensemble::assess(&rho, &kernel, &cfg)?;
    let params = json!({
        "state": args.state.display().to_string(),
        "kernel": args.kernel.to_string(),
        "orbit_check": cfg.orbit_check,
        "c_plus": cfg.c_plus,
    });
    let result = json!({
        "kernel": args.kernel.to_string(),
        "classification": a.classification,
        "ppt_margin": a.ppt_margin,
        "wigner_bounds": a.wigner_bounds,
        "spectrum": rho.spectrum().values(),
        "lu_orbit": a.lu_orbit.map(|m| orbit_report(&m, Group::Lu, &a.wigner_bounds)),
    });
    let c = a.classification;
    let summary = format!(
        "classify: separable={} absolutely_separable={} polytope_positive={} doubly_classical={} ppt_margin={} wigner_lower={}",
        c.separable,
        c.absolutely_separable,
        c.polytope_positive,
        c.doubly_classical,
        sig9(a.ppt_margin),
        sig9(a.wigner_bounds.lower)
    );
    let meta = Metadata::new("classify", &params, r);
    emit(
        r.config.output_path.as_deref(),
        &to_json(&meta, &result),
        &summary,
    )
}

#[derive(Serialize)]
struct KernelReport {
    kind: KernelKind,
    moduli: [f64; 2],
    matrix: Herm4,
    /// Eigenvalues in construction order.
    spectrum_raw: [f64; 4],
    spectrum_sorted: [f64; 4],
    residuals: KernelResiduals,
}

pub fn kernel(args: &KernelArgs, r: &Resolved) -> CliResult<()> {
    let (k, raw): (SwKernel, Spectrum4) = match args.family {
        Family::Pair => {
            let m = PairModuli::new(args.a, args.b)?;
            (build_pair_kernel(&m), pair_spectrum(&m))
        }
        Family::Quatrit => {
            let m = QuatritModuli::new(args.a, args.b)?;
            (build_quatrit_kernel(&m), quatrit_spectrum(&m).spectrum)
        }
    };
    let residuals = validate_kernel(&k);
    let report = KernelReport {
        kind: k.kind,
        moduli: [args.a, args.b],
        matrix: k.matrix,
        spectrum_raw: raw.values(),
        spectrum_sorted: k.spectrum.values(),
        residuals,
    };
    let s = k.spectrum.values().map(sig9);
    let summary = format!(
        "kernel: {} spectrum ({}) passes={}",
        k.kind,
        s.join(", "),
        residuals.passes
    );
    let params = json!({ "family": k.kind, "moduli": [args.a, args.b] });
    let meta = Metadata::new("kernel", &params, r);
    emit(
        r.config.output_path.as_deref(),
        &to_json(&meta, &report),
        &summary,
    )
}

pub fn polytope(args: &PolytopeArgs, r: &Resolved) -> CliResult<()> {
    let (pi, label) = match &args.spectrum {
        Some(v) => {
            if v.len() != 4 || v.iter().any(|x| !x.is_finite()) {
                return Err(CliError::schema("--spectrum needs four finite values"));
            }
            let s = Spectrum4::unsorted([v[0], v[1], v[2], v[3]]);
            (s, format!("spectrum:{},{},{},{}", v[0], v[1], v[2], v[3]))
        }
        None => (args.kernel.build()?.spectrum, args.kernel.to_string()),
    };
    let p = wigner::polytope_vertices(&pi);
    let raster = ensemble::Raster {
        header: vec!["r1", "r2", "r3", "r4"],
        rows: p
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| ensemble::Cell::Num(*x)).collect())
            .collect(),
    };
    let params = json!({ "kernel": label });
    let meta = Metadata::new("polytope", &params, r);
    let summary = format!("polytope: {} vertices for {label}", p.vertices.len());
    emit_csv(
        r.config.output_path.as_deref(),
        &raster.to_csv(),
        &meta,
        &summary,
    )
}

pub fn minimize(args: &MinimizeArgs, r: &Resolved) -> CliResult<()> {
    let rho = load_state(&args.state)?;
    let kernel = args.kernel.build()?;
    let group = match args.group {
        GroupArg::Lu => Group::Lu,
        GroupArg::Full => Group::Full,
    };
    let mut opts = OrbitOptions::new(group, r.config.orbit_restarts, r.config.orbit_budget);
    opts.grad_tol = 1e-7;
    let m = wigner::min_over_orbit_with(&rho, &kernel, &opts)?;
    let bounds = wigner::wf_bounds(&rho.spectrum(), &kernel.spectrum);
    let report = orbit_report(&m, group, &bounds);
    let params = json!({
        "state": args.state.display().to_string(),
        "kernel": args.kernel.to_string(),
        "group": group,
    });
    let meta = Metadata::new("minimize", &params, r);
    let summary = format!(
        "minimize: {group} orbit min {} (spectral lower bound {}) converged={}",
        sig9(m.min_value),
        sig9(bounds.lower),
        m.converged
    );
    emit(
        r.config.output_path.as_deref(),
        &to_json(&meta, &report),
        &summary,
    )
}

pub fn sample(args: &SampleArgs, r: &Resolved) -> CliResult<()> {
    let kernel = args.kernel.build()?;
    let ens = match args.ensemble {
        EnsembleArg::Hs => Ensemble::Hs,
        EnsembleArg::Xstate => Ensemble::Xstate,
    };
    let cfg = ClassifyConfig {
        orbit_check: args.orbit_check,
        orbit_restarts: r.config.orbit_restarts,
        orbit_budget: r.config.orbit_budget,
        c_plus: c_plus(args.c_plus),
        tolerances: r.config.tolerances,
    };
    let report = ensemble::estimate_fractions(r.config.samples, ens, &kernel, r.config.seed, &cfg)?;
    let params = json!({
        "n": r.config.samples,
        "ensemble": ens,
        "kernel": args.kernel.to_string(),
        "orbit_check": cfg.orbit_check,
        "c_plus": cfg.c_plus,
    });
    let meta = Metadata::new("sample", &params, r);
    let f = report.fractions;
    let summary = format!(
        "sample: n={} separable={} polytope_positive={} doubly_classical={} (±{})",
        report.n_samples,
        sig9(f.separable.fraction),
        sig9(f.polytope_positive.fraction),
        sig9(f.doubly_classical.fraction),
        sig9(report.wilson_halfwidth)
    );
    emit(
        r.config.output_path.as_deref(),
        &to_json(&meta, &report),
        &summary,
    )
}

pub fn radius(args: &RadiusArgs, r: &Resolved) -> CliResult<()> {
    let opts = ensemble::RadiusOptions {
        property: match args.property {
            PropertyArg::Separability => ensemble::RadiusProperty::Separability,
            PropertyArg::AbsoluteClassicality => ensemble::RadiusProperty::AbsoluteClassicality,
        },
        n_directions: args.directions,
        bisection_tol: args.bisection_tol,
        kernel_scan_resolution: r.config.grid_resolution,
        kernel_family: match args.family {
            Family::Pair => KernelKind::Pair,
            Family::Quatrit => KernelKind::Quatrit,
        },
        refine_steps: args.refine_steps,
        seed: r.config.seed,
    };
    let est = ensemble::estimate_ball_radius(&opts)?;
    let params = serde_json::to_value(opts).expect("serializable");
    let meta = Metadata::new("radius", &params, r);
    let summary = format!(
        "radius: {} r_hs={} (closed form {}), bloch-normalized {}",
        est.property,
        sig9(est.radius_hs),
        sig9(est.scalings[0].closed_form),
        sig9(est.scalings[1].value)
    );
    emit(
        r.config.output_path.as_deref(),
        &to_json(&meta, &est),
        &summary,
    )
}

fn figure(which: FigureArg) -> Option<Figure> {
    Some(match which {
        FigureArg::Fig1Right => Figure::Fig1Right,
        FigureArg::Fig2Left => Figure::Fig2Left,
        FigureArg::Fig2Right => Figure::Fig2Right,
        FigureArg::ModuliScan => Figure::ModuliScan,
        FigureArg::All => return None,
    })
}

pub fn figures(args: &FiguresArgs, r: &Resolved) -> CliResult<()> {
    let kernel: Option<Spectrum4> = args
        .kernel
        .as_ref()
        .map(KernelSpec::build)
        .transpose()?
        .map(|k| k.spectrum);
    let resolution = r.config.grid_resolution;
    let render = |f: Figure, path: Option<&Path>| -> CliResult<()> {
        let raster = ensemble::figure_grids(f, resolution, kernel)?;
        let params = json!({
            "figure": f.name(),
            "resolution": resolution,
            "kernel": args.kernel.map(|k| k.to_string()),
        });
        let meta = Metadata::new("figures", &params, r);
        let summary = format!("figures: {f} {} rows", raster.rows.len());
        emit_csv(path, &raster.to_csv(), &meta, &summary)
    };
    match figure(args.which) {
        Some(f) => render(f, r.config.output_path.as_deref()),
        None => {
            let dir = r
                .config
                .output_path
                .as_deref()
                .ok_or_else(|| CliError::schema("`figures all` needs --output DIR"))?;
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            for f in Figure::ALL {
                render(f, Some(&dir.join(format!("{}.csv", f.name()))))?;
            }
            Ok(())
        }
    }
}
