//! Command-line verification campaigns: each subcommand runs one pipeline
//! from the core library, writes a deterministic JSON report, and exits 0
//! on a full pass, 1 on a verification failure, 2 on usage errors.

mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ricci_forge::chart_calculus::{
    ricci_contract, riemann_contract, riemann_ricci_fd, sectional_fd,
};
use ricci_forge::core_verifier::{
    search_cosh_n, verify_core, CoreSpec, HChoice, SearchOutcome as CoreSearchOutcome,
};
use ricci_forge::glue_assembler::{
    assembly_plan, glue_check, BoundaryData, CoreBoundary, GlueMode,
};
use ricci_forge::neck_builder::{
    boundary_check, eta_profile, fixture_g1, neck_params, parameter_search, path_check,
    ricci_positivity_report, SearchBox, SearchOutcome,
};
use ricci_forge::numeric::linspace;
use ricci_forge::profile::ScalarProfile;
use ricci_forge::submersion_ricci::{
    doubly_warped_ricci, hopf_chart_c2, hopf_data, hopf_frame_c2, Algebra,
};
use ricci_forge::warped_forms::{
    necksectional, random_smooth_warp, slice_second_fundamental, warp_chart, SliceAxis,
};

use report::{write_grid_csv, Check, Report};

#[derive(Parser)]
#[command(
    name = "ricci-forge",
    version,
    about = "Grid verification of Ricci-positive metric constructions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cross-check the closed-form curvature kernels against the
    /// finite-difference oracle on randomized metrics.
    OracleCheck(OracleArgs),
    /// Verify a core-metric candidate on a projective space.
    VerifyCore(VerifyCoreArgs),
    /// Search for the smallest admissible cosh parameter.
    SearchCore(SearchCoreArgs),
    /// Check that the interpolating sphere family keeps curvature above 1.
    PathCheck(PathArgs),
    /// Search neck parameters for a shooting-fixture boundary profile.
    NeckSearch(NeckSearchArgs),
    /// Verify one explicit set of neck parameters.
    NeckVerify(NeckVerifyArgs),
    /// Check the gluing condition for two boundary data sets.
    GlueCheck(GlueArgs),
    /// Check the scaling bookkeeping for attaching cores to a docking
    /// station.
    Assemble(AssembleArgs),
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    std::process::exit(code);
}

fn run(cmd: Cmd) -> Result<i32, Box<dyn std::error::Error>> {
    match cmd {
        Cmd::OracleCheck(a) => oracle_check(a),
        Cmd::VerifyCore(a) => verify_core_cmd(a),
        Cmd::SearchCore(a) => search_core_cmd(a),
        Cmd::PathCheck(a) => path_check_cmd(a),
        Cmd::NeckSearch(a) => neck_search_cmd(a),
        Cmd::NeckVerify(a) => neck_verify_cmd(a),
        Cmd::GlueCheck(a) => glue_check_cmd(a),
        Cmd::Assemble(a) => assemble_cmd(a),
    }
}

/// Merge an optional JSON config file under explicit flags: flags win.
fn load_config(path: &Option<PathBuf>) -> Result<Value, Box<dyn std::error::Error>> {
    match path {
        Some(p) => Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?),
        None => Ok(Value::Null),
    }
}

fn cfg_f64(cfg: &Value, key: &str) -> Option<f64> {
    cfg.get(key).and_then(Value::as_f64)
}

fn cfg_u64(cfg: &Value, key: &str) -> Option<u64> {
    cfg.get(key).and_then(Value::as_u64)
}

fn cfg_str(cfg: &Value, key: &str) -> Option<String> {
    cfg.get(key).and_then(Value::as_str).map(str::to_string)
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    Algebra::parse(s).ok_or_else(|| format!("unknown algebra '{s}' (expected R, C, H, or O)"))
}

/// Relative defect with an absolute floor: values below `floor` are
/// compared absolutely at `tol * floor`.
fn defect(closed: f64, oracle: f64, floor: f64) -> f64 {
    (closed - oracle).abs() / closed.abs().max(floor)
}

// ---------------------------------------------------------------- oracle

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed for the randomized metrics and sample points.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of randomized two-variable warps.
    #[arg(long)]
    warps: Option<usize>,
    /// Sample points per warp.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn oracle_check(a: OracleArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let seed = a.seed.or(cfg_u64(&cfg, "seed")).unwrap_or(17);
    let warps = a
        .warps
        .or(cfg_u64(&cfg, "warps").map(|v| v as usize))
        .unwrap_or(20);
    let points = a
        .points
        .or(cfg_u64(&cfg, "points").map(|v| v as usize))
        .unwrap_or(3);
    let tol = 1e-4;
    let mut report = Report::new(
        "oracle-check",
        json!({"seed": seed, "warps": warps, "points": points, "tolerance": tol}),
    );

    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst_warp: f64 = 0.0;
    for _ in 0..warps {
        let w = random_smooth_warp(&mut rng);
        let chart = warp_chart(&w, (0.4, std::f64::consts::PI - 0.4));
        for _ in 0..points {
            let t = rng.gen_range(0.9..2.6);
            let x = rng.gen_range(-0.8..0.8);
            let th = rng.gen_range(0.8..2.2);
            let p = [t, x, th, 1.0];
            let c = riemann_ricci_fd(&chart, &p, 2e-3)?;
            let s = necksectional(&w, t, x)?;
            let (av, bv) = ((w.a)(t, x).v, (w.b)(t, x).v);
            let e_t = [1.0, 0.0, 0.0, 0.0];
            let e_x = [0.0, 1.0 / av, 0.0, 0.0];
            let e_th = [0.0, 0.0, 1.0 / bv, 0.0];
            let e_ph = [0.0, 0.0, 0.0, 1.0 / (bv * th.sin())];
            let pairs = [
                (s.k_tx.unwrap(), sectional_fd(&c, &e_t, &e_x)?),
                (s.k_tsigma.unwrap(), sectional_fd(&c, &e_t, &e_th)?),
                (s.k_xsigma, sectional_fd(&c, &e_x, &e_th)?),
                (s.k_sigmasigma, sectional_fd(&c, &e_th, &e_ph)?),
                (
                    s.ric_tx,
                    w.fiber_dim as f64 * riemann_contract(&c, &e_x, &e_th, &e_th, &e_t),
                ),
            ];
            for (closed, oracle) in pairs {
                worst_warp = worst_warp.max(defect(closed, oracle, 1e-2));
            }
            let ii = slice_second_fundamental(&w, SliceAxis::Time, t, x)?;
            let ii_fd = ricci_forge::chart_calculus::second_fundamental_fd(&chart, 0, &p, 2e-3)?;
            worst_warp = worst_warp.max(defect(ii.ii_xx, ii_fd[(0, 0)] / (av * av), 1e-2));
            worst_warp = worst_warp.max(defect(ii.ii_sigma, ii_fd[(1, 1)] / (bv * bv), 1e-2));
        }
    }
    report.push(Check::at_most("warp_kernels_max_defect", worst_warp, tol));

    // Doubly warped Hopf metric, complex plane case.
    let fib = hopf_data(Algebra::C, 2)?;
    let f = ScalarProfile::from_fn(
        |t| ricci_forge::profile::Jet2 {
            v: 0.8 + 0.3 * t.sin(),
            d1: 0.3 * t.cos(),
            d2: -0.3 * t.sin(),
        },
        (0.0, 3.0),
        16,
    );
    let h = ScalarProfile::from_fn(
        |t| ricci_forge::profile::Jet2 {
            v: 1.1 + 0.2 * (1.3 * t).cos(),
            d1: -0.26 * (1.3 * t).sin(),
            d2: -0.338 * (1.3 * t).cos(),
        },
        (0.0, 3.0),
        16,
    );
    let chart = hopf_chart_c2(&f, &h, (0.2, 2.8));
    let mut worst_hopf: f64 = 0.0;
    let mut worst_off: f64 = 0.0;
    for _ in 0..10 {
        let t = rng.gen_range(0.6..2.4);
        let th = rng.gen_range(0.8..2.2);
        let point = [t, th, rng.gen_range(1.0..5.0), 3.0];
        let c = riemann_ricci_fd(&chart, &point, 2e-3)?;
        let frame = hopf_frame_c2(&f, &h, t, th);
        let want = doubly_warped_ricci(&fib, &f, &h, t)?;
        let got = [
            ricci_contract(&c, &frame[0], &frame[0]),
            ricci_contract(&c, &frame[1], &frame[1]),
            ricci_contract(&c, &frame[2], &frame[2]),
            ricci_contract(&c, &frame[3], &frame[3]),
        ];
        worst_hopf = worst_hopf
            .max(defect(want.tt, got[0], 1e-2))
            .max(defect(want.xx, got[1], 1e-2))
            .max(defect(want.xx, got[2], 1e-2))
            .max(defect(want.vv.unwrap(), got[3], 1e-2));
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 2)] {
            worst_off = worst_off.max(ricci_contract(&c, &frame[i], &frame[j]).abs());
        }
    }
    report.push(Check::at_most("hopf_ricci_max_defect", worst_hopf, tol));
    report.push(Check::at_most("hopf_off_diagonal_max", worst_off, 1e-6));

    Ok(report.finish(a.out.as_deref())?)
}

// ------------------------------------------------------------ verify-core

#[derive(Args)]
struct VerifyCoreArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ground algebra: R, C, H, or O.
    #[arg(long)]
    algebra: Option<String>,
    /// Projective index.
    #[arg(long)]
    n: Option<usize>,
    /// Transverse profile: "cosh" or "const".
    #[arg(long)]
    h: Option<String>,
    /// Cosh parameter (with --h cosh).
    #[arg(long = "N")]
    cosh_n: Option<f64>,
    /// Constant value (with --h const).
    #[arg(long)]
    eps: Option<f64>,
    /// Grid samples.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional CSV dump of the Ricci components over the grid.
    #[arg(long)]
    grid_csv: Option<PathBuf>,
}

fn verify_core_cmd(a: VerifyCoreArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let algebra = parse_algebra(
        &a.algebra
            .or(cfg_str(&cfg, "algebra"))
            .unwrap_or_else(|| "C".into()),
    )?;
    let n = a.n.or(cfg_u64(&cfg, "n").map(|v| v as usize)).unwrap_or(2);
    let h_kind = a.h.or(cfg_str(&cfg, "h")).unwrap_or_else(|| "cosh".into());
    let h_choice = match h_kind.as_str() {
        "cosh" => HChoice::Cosh {
            n: a.cosh_n.or(cfg_f64(&cfg, "N")).unwrap_or(100.0),
        },
        "const" => HChoice::Const {
            eps: a.eps.or(cfg_f64(&cfg, "eps")).unwrap_or(0.1),
        },
        other => return Err(format!("unknown h profile '{other}'").into()),
    };
    let mut spec = CoreSpec::new(algebra, n, h_choice);
    if let Some(s) = a.samples.or(cfg_u64(&cfg, "samples").map(|v| v as usize)) {
        spec.t_samples = s.max(16);
    }

    let mut report = Report::new(
        "verify-core",
        serde_json::to_value(&spec).unwrap_or(Value::Null),
    );
    let grid = verify_core(&spec)?;
    for m in &grid.minima {
        report.push(Check::greater(&format!("min_{}", m.name), m.min, 0.0));
    }
    report.push(Check::at_most(
        "boundary_round_defect",
        grid.boundary_round_defect,
        1e-12,
    ));
    report.push(Check::greater(
        "boundary_ii_horizontal",
        grid.boundary.ii_horizontal,
        0.0,
    ));
    report.push(Check::greater(
        "boundary_ii_vertical",
        grid.boundary.ii_vertical,
        0.0,
    ));
    report.push(Check::boolean("cap_conditions", grid.cap_smooth));
    report.push(Check::boolean("even_conditions", grid.even_smooth));

    let mut details = json!({"t1": grid.t1, "boundary_radius": grid.boundary_radius});
    // Concavity obstruction witness for the degenerate real case: h must
    // turn convex somewhere to reach h'(t1) > 0, and the radial Ricci is
    // negative there.
    let fib = hopf_data(algebra, n)?;
    if fib.degenerate_fiber {
        let (f, h) = spec.profiles()?;
        let witness = linspace(spec.margin, grid.t1, 256)
            .into_iter()
            .find(|&t| h.jet(t).map(|j| j.d2 > 0.0).unwrap_or(false));
        if let Some(t) = witness {
            let r = doubly_warped_ricci(&fib, &f, &h, t)?;
            details["obstruction_witness"] = json!({
                "t": t,
                "h_second_derivative": h.jet(t)?.d2,
                "ric_tt": r.tt,
            });
        }
    }
    report.details = details;

    if let Some(csv) = &a.grid_csv {
        let (f, h) = spec.profiles()?;
        let mut rows: Vec<(f64, f64, &str, f64)> = Vec::new();
        for &t in linspace(spec.margin, grid.t1, 256).iter() {
            let r = doubly_warped_ricci(&fib, &f, &h, t)?;
            rows.push((t, 0.0, "ric_tt", r.tt));
            rows.push((t, 0.0, "ric_xx", r.xx));
            if let Some(vv) = r.vv {
                rows.push((t, 0.0, "ric_vv", vv));
            }
        }
        write_grid_csv(csv, &rows)?;
    }

    Ok(report.finish(a.out.as_deref())?)
}

// ------------------------------------------------------------ search-core

#[derive(Args)]
struct SearchCoreArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_lo: Option<f64>,
    #[arg(long)]
    n_hi: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn search_core_cmd(a: SearchCoreArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let algebra = parse_algebra(
        &a.algebra
            .or(cfg_str(&cfg, "algebra"))
            .unwrap_or_else(|| "C".into()),
    )?;
    let n = a.n.or(cfg_u64(&cfg, "n").map(|v| v as usize)).unwrap_or(2);
    let n_lo = a.n_lo.or(cfg_f64(&cfg, "n_lo")).unwrap_or(10.0);
    let n_hi = a.n_hi.or(cfg_f64(&cfg, "n_hi")).unwrap_or(1000.0);
    let mut report = Report::new(
        "search-core",
        json!({"algebra": format!("{algebra:?}"), "n": n, "n_lo": n_lo, "n_hi": n_hi}),
    );
    match search_cosh_n(algebra, n, n_lo, n_hi)? {
        CoreSearchOutcome::Passing {
            n: found,
            report_t1,
            boundary_ii,
            tried,
        } => {
            report.push(Check::boolean("passing_parameter_found", true));
            report.details = json!({
                "smallest_passing_n": found,
                "t1": report_t1,
                "boundary_ii": boundary_ii,
                "tried": tried,
            });
        }
        CoreSearchOutcome::Infeasible { tried } => {
            report.push(Check::boolean("passing_parameter_found", false));
            report.details = json!({"tried": tried});
        }
    }
    Ok(report.finish(a.out.as_deref())?)
}

// ------------------------------------------------------------- path-check

#[derive(Args)]
struct PathArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sphere dimension of the boundary profile.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    big_r: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    /// Curvature floor margin of the shooting fixture.
    #[arg(long)]
    margin: Option<f64>,
    /// Grid size per axis.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn path_check_cmd(a: PathArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let n = a.n.or(cfg_u64(&cfg, "n").map(|v| v as usize)).unwrap_or(4);
    let r = a.r.or(cfg_f64(&cfg, "r")).unwrap_or(0.1);
    let big_r = a.big_r.or(cfg_f64(&cfg, "big_r")).unwrap_or(0.5);
    let rho = a.rho.or(cfg_f64(&cfg, "rho")).unwrap_or(0.4);
    let margin = a.margin.or(cfg_f64(&cfg, "margin")).unwrap_or(2.0);
    let grid = a
        .grid
        .or(cfg_u64(&cfg, "grid").map(|v| v as usize))
        .unwrap_or(256)
        .max(16);
    let mut report = Report::new(
        "path-check",
        json!({"n": n, "r": r, "big_r": big_r, "rho": rho, "margin": margin, "grid": grid}),
    );
    let g1 = fixture_g1(n, r, big_r, margin)?;
    let prof = eta_profile(&g1, rho)?;
    let path = path_check(&prof, grid, grid)?;
    report.push(Check::greater("min_k_xsigma", path.min_k_xsigma, 1.0));
    report.push(Check::greater(
        "min_k_sigmasigma",
        path.min_k_sigmasigma,
        1.0,
    ));
    report.details = json!({
        "a1": prof.a1,
        "alpha_tilde": prof.alpha_tilde,
        "fixture_k_min": g1.k_min,
        "arg_min": path.arg_min,
    });
    Ok(report.finish(a.out.as_deref())?)
}

// ------------------------------------------------------------- neck-search

#[derive(Args)]
struct NeckSearchArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    big_r: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    t0_init: Option<f64>,
    #[arg(long)]
    t0_max: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    grid_csv: Option<PathBuf>,
}

fn neck_search_cmd(a: NeckSearchArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let n = a.n.or(cfg_u64(&cfg, "n").map(|v| v as usize)).unwrap_or(4);
    let r = a.r.or(cfg_f64(&cfg, "r")).unwrap_or(0.1);
    let big_r = a.big_r.or(cfg_f64(&cfg, "big_r")).unwrap_or(0.5);
    let rho = a.rho.or(cfg_f64(&cfg, "rho")).unwrap_or(0.4);
    let margin = a.margin.or(cfg_f64(&cfg, "margin")).unwrap_or(2.0);
    let mut search = SearchBox::default();
    if let Some(v) = a.t0_init.or(cfg_f64(&cfg, "t0_init")) {
        search.t0_init = v;
    }
    if let Some(v) = a.t0_max.or(cfg_f64(&cfg, "t0_max")) {
        search.t0_max = v;
    }
    let mut report = Report::new(
        "neck-search",
        json!({"n": n, "r": r, "big_r": big_r, "rho": rho, "margin": margin,
               "t0_init": search.t0_init, "t0_max": search.t0_max}),
    );
    let g1 = fixture_g1(n, r, big_r, margin)?;
    match parameter_search(&g1, rho, &search)? {
        SearchOutcome::Found {
            params,
            report: grid,
            boundary,
            path,
            eps,
            delta,
            trial_count,
        } => {
            report.push(Check::boolean("parameters_found", true));
            for m in grid.minima.iter().take(4) {
                report.push(Check::greater(&format!("min_{}", m.name), m.min, 0.0));
            }
            report.push(Check::at_least("ii_t1_min", boundary.ii_t1_min, 1.0));
            report.push(Check::greater(
                "path_min",
                path.min_k_xsigma.min(path.min_k_sigmasigma),
                1.0,
            ));
            report.details = json!({
                "params": params.summary(),
                "eps": eps,
                "delta": delta,
                "trials": trial_count,
                "grid": grid,
                "boundary": boundary,
            });
            if let Some(csv) = &a.grid_csv {
                let rows = ricci_forge::neck_builder::curvature::grid_rows(&params, 64, 24)?;
                let mut out: Vec<(f64, f64, &str, f64)> = Vec::new();
                for p in &rows {
                    out.push((p.t, p.x, "t2_ric_tt", p.ric_tt));
                    out.push((p.t, p.x, "t2_ric_xx", p.ric_xx));
                    out.push((p.t, p.x, "t2_ric_sigmasigma", p.ric_ss));
                    out.push((p.t, p.x, "t4_det_tx_block", p.det2));
                }
                write_grid_csv(csv, &out)?;
            }
        }
        SearchOutcome::Infeasible {
            reason,
            closest,
            trial_count,
        } => {
            report.push(Check::boolean("parameters_found", false));
            report.details = json!({
                "reason": reason,
                "closest": closest,
                "trials": trial_count,
            });
        }
    }
    Ok(report.finish(a.out.as_deref())?)
}

// ------------------------------------------------------------- neck-verify

#[derive(Args)]
struct NeckVerifyArgs {
    /// JSON file with n, r, big_r, margin, rho, t0, eps, delta.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    big_r: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn neck_verify_cmd(a: NeckVerifyArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.params)?;
    let n = a.n.or(cfg_u64(&cfg, "n").map(|v| v as usize)).unwrap_or(4);
    let r = a.r.or(cfg_f64(&cfg, "r")).unwrap_or(0.1);
    let big_r = a.big_r.or(cfg_f64(&cfg, "big_r")).unwrap_or(0.5);
    let margin = a.margin.or(cfg_f64(&cfg, "margin")).unwrap_or(2.0);
    let rho = a.rho.or(cfg_f64(&cfg, "rho")).unwrap_or(0.4);
    let t0 = a.t0.or(cfg_f64(&cfg, "t0")).unwrap_or(10.0);
    let eps = a.eps.or(cfg_f64(&cfg, "eps")).unwrap_or(0.25);
    let delta = a.delta.or(cfg_f64(&cfg, "delta")).unwrap_or(0.25);
    let nt =
        a.nt.or(cfg_u64(&cfg, "nt").map(|v| v as usize))
            .unwrap_or(256);
    let nx =
        a.nx.or(cfg_u64(&cfg, "nx").map(|v| v as usize))
            .unwrap_or(64);

    let mut report = Report::new(
        "neck-verify",
        json!({"n": n, "r": r, "big_r": big_r, "margin": margin, "rho": rho,
               "t0": t0, "eps": eps, "delta": delta, "nt": nt, "nx": nx}),
    );
    let g1 = fixture_g1(n, r, big_r, margin)?;
    let prof = eta_profile(&g1, rho)?;
    let params = neck_params(&prof, t0, eps, delta)?;
    let boundary = boundary_check(&params)?;
    report.push(Check::boolean("boundary_end_values", boundary.pass_ends));
    report.push(Check::boolean(
        "boundary_derivatives_vanish",
        boundary.pass_derivatives,
    ));
    report.push(Check::boolean(
        "boundary_t1_clauses",
        boundary.pass_t1_clauses,
    ));
    report.push(Check::at_least("ii_t1_min", boundary.ii_t1_min, 1.0));
    let grid = ricci_positivity_report(&params, nt, nx)?;
    for m in grid.minima.iter().take(4) {
        report.push(Check::greater(&format!("min_{}", m.name), m.min, 0.0));
    }
    report.details = json!({
        "params": params.summary(),
        "grid": grid,
        "boundary": boundary,
    });
    Ok(report.finish(a.out.as_deref())?)
}

// -------------------------------------------------------------- glue-check

#[derive(Args)]
struct GlueArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Common boundary radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Boundary dimension.
    #[arg(long)]
    dim: Option<usize>,
    /// Principal curvatures of side 1 (comma separated, or one value for all).
    #[arg(long, allow_hyphen_values = true)]
    ii1: Option<String>,
    /// Principal curvatures of side 2.
    #[arg(long, allow_hyphen_values = true)]
    ii2: Option<String>,
    /// strict | degenerate
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_curvatures(s: &str, dim: usize) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let vals = vals?;
    Ok(if vals.len() == 1 {
        vec![vals[0]; dim]
    } else {
        vals
    })
}

fn glue_check_cmd(a: GlueArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let radius = a.radius.or(cfg_f64(&cfg, "radius")).unwrap_or(0.4);
    let dim = a
        .dim
        .or(cfg_u64(&cfg, "dim").map(|v| v as usize))
        .unwrap_or(3);
    let ii1 = parse_curvatures(
        &a.ii1
            .or(cfg_str(&cfg, "ii1"))
            .unwrap_or_else(|| "2.0".into()),
        dim,
    )?;
    let ii2 = parse_curvatures(
        &a.ii2
            .or(cfg_str(&cfg, "ii2"))
            .unwrap_or_else(|| "-1.0".into()),
        dim,
    )?;
    let mode = match a
        .mode
        .or(cfg_str(&cfg, "mode"))
        .unwrap_or_else(|| "strict".into())
        .as_str()
    {
        "strict" => GlueMode::Strict,
        "degenerate" => GlueMode::Degenerate,
        other => return Err(format!("unknown mode '{other}'").into()),
    };
    let mut report = Report::new(
        "glue-check",
        json!({"radius": radius, "dim": dim, "ii1": ii1, "ii2": ii2, "mode": format!("{mode:?}")}),
    );
    let b1 = BoundaryData {
        shape: ricci_forge::glue_assembler::BoundaryShape::Round { radius },
        principal_curvatures: ii1,
        dim,
    };
    let b2 = BoundaryData {
        shape: ricci_forge::glue_assembler::BoundaryShape::Round { radius },
        principal_curvatures: ii2,
        dim,
    };
    let rep = glue_check(&b1, &b2, mode)?;
    report.push(Check::boolean("glue_condition", rep.pass));
    report.details = serde_json::to_value(&rep)?;
    Ok(report.finish(a.out.as_deref())?)
}

// ---------------------------------------------------------------- assemble

#[derive(Args)]
struct AssembleArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ambient dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Common boundary radius after scaling.
    #[arg(long)]
    rho: Option<f64>,
    /// Cores as "rho_i:nu_i,rho_i:nu_i,...".
    #[arg(long)]
    cores: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn assemble_cmd(a: AssembleArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = load_config(&a.config)?;
    let n = a.n.or(cfg_u64(&cfg, "n").map(|v| v as usize)).unwrap_or(4);
    let rho = a.rho.or(cfg_f64(&cfg, "rho")).unwrap_or(0.01);
    let cores_str = a
        .cores
        .or(cfg_str(&cfg, "cores"))
        .unwrap_or_else(|| "0.02:0.9,0.05:1.1,0.07:0.8".into());
    let mut cores = Vec::new();
    for part in cores_str.split(',') {
        let mut halves = part.split(':');
        let rho_i: f64 = halves
            .next()
            .ok_or("core entry missing rho")?
            .trim()
            .parse()?;
        let nu_i: f64 = halves
            .next()
            .ok_or("core entry missing nu")?
            .trim()
            .parse()?;
        cores.push(CoreBoundary { rho_i, nu_i });
    }
    let mut report = Report::new("assemble", json!({"n": n, "rho": rho, "cores": cores_str}));
    let plan = assembly_plan(&cores, n, rho)?;
    report.push(Check::boolean("docking_feasible", plan.docking.feasible));
    for (i, s) in plan.summands.iter().enumerate() {
        report.push(Check::greater(
            &format!("summand_{i}_scaled_nu"),
            s.scaled_nu,
            1.0,
        ));
    }
    report.details = serde_json::to_value(&plan)?;
    Ok(report.finish(a.out.as_deref())?)
}
