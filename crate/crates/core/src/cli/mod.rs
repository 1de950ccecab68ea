//! Command-line orchestration for the `fracwave` binary.
//!
//! One command per process; exit code 0 on success, 2 when a validation run
//! finished but produced findings (a rate outside tolerance, a violated
//! invariant), 1 on errors. Commands that write artifacts create the output
//! directory with a `manifest.json` echoing the fully resolved configuration
//! so a run can be reproduced from its directory alone.

pub mod config;
pub mod svg;

use crate::estimate_validator::{
    validate_boundedness, validate_pointwise_kernel, validate_smoothing, BoundednessReport,
    ProbeSpec,
};
use crate::mild_solver::{
    fit_decay_rate, solve, NormSelector, SolutionHistory, SolverOptions, Termination,
};
use crate::mittag_leffler::{ml_eval, MLParams};
use crate::regime_analyzer::{classify, derive_exponents, Classification, ParamPoint};
use crate::spectral_grid::{BoxGeometry, MultiplierFamily};
use clap::{Args, Parser, Subcommand};
use config::{SimulateConfig, SweepConfig, ThresholdConfig};
use std::fs;
use std::path::{Path, PathBuf};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "fracwave", version, about = "Numerical laboratory for coupled semilinear time-fractional wave systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the two-parameter Mittag-Leffler function E_{alpha,beta}(z)
    MlEval(MlEvalArgs),
    /// Classify a parameter point (global small-data vs blow-up)
    Classify(ClassifyArgs),
    /// Derive the delta-window exponents r1, r2, s1, s2, sigma1, sigma2
    Derive(ClassifyArgs),
    /// Classify a grid of parameter points into a phase-diagram table
    Sweep(SweepArgs),
    /// Integrate the coupled system from a JSON run configuration
    Simulate(SimulateArgs),
    /// Measure smoothing rates and kernel envelopes against the predictions
    ValidateKernels(ValidateArgs),
    /// Fit a decay slope to a recorded history.csv
    FitDecay(FitDecayArgs),
    /// Bisect the data scale between a completing and a blowing-up run
    FindThreshold(ThresholdArgs),
}

#[derive(Debug, Args)]
pub struct MlEvalArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    /// significant digits to print
    #[arg(long, default_value_t = 17)]
    pub digits: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub gamma1: f64,
    #[arg(long)]
    pub gamma2: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long, short = 'N')]
    pub dim: u32,
    /// "auto" (window midpoint) or an explicit value
    #[arg(long, default_value = "auto")]
    pub delta: String,
    /// emit the full report as JSON (classify always reports JSON; this
    /// also silences the human-readable summary)
    #[arg(long, default_value_t = false)]
    pub json: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON grid specification
    #[arg(long)]
    pub grid: PathBuf,
    /// output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// override the config's out_dir
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, short = 'N')]
    pub dim: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// relative slope tolerance that counts as a finding
    #[arg(long, default_value_t = 0.10)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct FitDecayArgs {
    /// history.csv produced by `simulate`
    #[arg(long)]
    pub history: PathBuf,
    #[arg(long)]
    pub t_lo: f64,
    #[arg(long)]
    pub t_hi: f64,
    /// one of: u_s1, v_s2, u_inf, v_inf, u_1, v_1
    #[arg(long, default_value = "u_s1")]
    pub column: String,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// JSON threshold configuration (template + bracket)
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Process-level entry; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    init_thread_cap();
    let result = match cli.command {
        Command::MlEval(a) => cmd_ml_eval(a),
        Command::Classify(a) => cmd_classify(a, false),
        Command::Derive(a) => cmd_classify(a, true),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::ValidateKernels(a) => cmd_validate(a),
        Command::FitDecay(a) => cmd_fit_decay(a),
        Command::FindThreshold(a) => cmd_threshold(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Honor FRACWAVE_THREADS; malformed values are ignored. Determinism never
/// depends on the thread count (all parallel loops write disjoint slots),
/// so this is a resource cap, not a correctness switch.
fn init_thread_cap() {
    if let Ok(v) = std::env::var("FRACWAVE_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

fn write_manifest(dir: &Path, command: &str, resolved: serde_json::Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let manifest = serde_json::json!({
        "artifact_version": ARTIFACT_VERSION,
        "command": command,
        "config": resolved,
    });
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest).unwrap() + "\n")
}

fn cmd_ml_eval(a: MlEvalArgs) -> CmdResult {
    let v = ml_eval(MLParams::new(a.alpha, a.beta, a.z))?;
    println!("{}", format_sig(v, a.digits));
    Ok(0)
}

fn format_sig(v: f64, digits: usize) -> String {
    let d = digits.clamp(1, 17);
    let s = format!("{v:.*e}", d - 1);
    // expand plain decimals for human-scale magnitudes
    if v == 0.0 || (v.abs() >= 1e-4 && v.abs() < 1e16) {
        let parsed: f64 = s.parse().unwrap();
        let plain = format!("{parsed}");
        return plain;
    }
    s
}

fn cmd_classify(a: ClassifyArgs, derive_only: bool) -> CmdResult {
    let point = ParamPoint::new(a.gamma1, a.gamma2, a.p, a.q, a.dim)?;
    let delta = match a.delta.as_str() {
        "auto" => None,
        other => Some(other.parse::<f64>().map_err(|_| format!("bad --delta {other}"))?),
    };

    let payload = if derive_only {
        let normalized = if point.gamma1 <= point.gamma2 && point.p <= point.q {
            point
        } else {
            point.role_swapped()
        };
        let exps = derive_exponents(&normalized, delta)?;
        serde_json::to_value(&exps)?
    } else {
        let mut report = classify(&point)?;
        if let (Some(d), Some(npt)) = (delta, report.normalized) {
            report.derived = Some(derive_exponents(&npt, Some(d))?);
        }
        serde_json::to_value(&report)?
    };

    println!("{}", serde_json::to_string_pretty(&payload)?);
    if let Some(dir) = &a.out_dir {
        write_manifest(
            dir,
            if derive_only { "derive" } else { "classify" },
            serde_json::json!({
                "gamma1": a.gamma1, "gamma2": a.gamma2, "p": a.p, "q": a.q, "N": a.dim,
                "delta": a.delta,
            }),
        )?;
        fs::write(
            dir.join("report.json"),
            serde_json::to_string_pretty(&payload)? + "\n",
        )?;
        let mut txt = String::new();
        txt.push_str(&format!(
            "point: gamma1={} gamma2={} p={} q={} N={}\n",
            a.gamma1, a.gamma2, a.p, a.q, a.dim
        ));
        txt.push_str(&payload.to_string());
        txt.push('\n');
        fs::write(dir.join("report.txt"), txt)?;
    }
    Ok(0)
}

fn classification_tag(c: Classification) -> &'static str {
    match c {
        Classification::GlobalSmallData => "global_small_data",
        Classification::BlowUp => "blow_up",
        Classification::Indeterminate => "indeterminate",
        Classification::BothConditionsFail => "both_conditions_fail",
        Classification::Inconsistent => "inconsistent",
    }
}

fn cmd_sweep(a: SweepArgs) -> CmdResult {
    let text = fs::read_to_string(&a.grid)?;
    let grid: SweepConfig = serde_json::from_str(&text).map_err(|e| format!("config error in {}: {e}", a.grid.display()))?;

    let mut rows = String::from(
        "gamma1,gamma2,p,q,N,classification,delta1_lam1,delta2_lam1,delta1_lam2,delta2_lam2,min_delta\n",
    );
    let mut scatter = Vec::new();
    let mut count = 0usize;
    for g1 in grid.gamma1.values() {
        for g2 in grid.gamma2.values() {
            for p in grid.p.values() {
                for q in grid.q.values() {
                    for &n in &grid.dims {
                        let point = match ParamPoint::new(g1, g2, p, q, n) {
                            Ok(pt) => pt,
                            Err(_) => continue,
                        };
                        let report = classify(&point)?;
                        let tag = classification_tag(report.classification);
                        let (mut d11, mut d21, mut d12, mut d22) =
                            (f64::NAN, f64::NAN, f64::NAN, f64::NAN);
                        if report.blowup_exponents.len() == 2 {
                            d11 = report.blowup_exponents[0].delta1;
                            d21 = report.blowup_exponents[0].delta2;
                            d12 = report.blowup_exponents[1].delta1;
                            d22 = report.blowup_exponents[1].delta2;
                        }
                        let min_d = [d11, d21, d12, d22]
                            .into_iter()
                            .filter(|v| v.is_finite())
                            .fold(f64::INFINITY, f64::min);
                        rows.push_str(&format!(
                            "{g1},{g2},{p},{q},{n},{tag},{d11},{d21},{d12},{d22},{}\n",
                            if min_d.is_finite() { min_d.to_string() } else { "nan".into() }
                        ));
                        let color = match report.classification {
                            Classification::GlobalSmallData => "steelblue",
                            Classification::BlowUp => "crimson",
                            Classification::Indeterminate => "goldenrod",
                            _ => "gray",
                        };
                        scatter.push((p * q, n as f64, color));
                        count += 1;
                    }
                }
            }
        }
    }
    if let Some(parent) = a.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(&a.out, rows)?;
    if let Some(dir) = &grid.out_dir {
        let dir = PathBuf::from(dir);
        write_manifest(&dir, "sweep", serde_json::to_value(&grid)?)?;
        fs::write(
            dir.join("phase.svg"),
            svg::phase_scatter("parameter sweep", "pq", "N", &scatter),
        )?;
    }
    println!("classified {count} points -> {}", a.out.display());
    Ok(0)
}

fn selector_by_name(name: &str) -> Result<NormSelector, String> {
    Ok(match name {
        "u_s1" => NormSelector::US1,
        "v_s2" => NormSelector::VS2,
        "u_inf" => NormSelector::UInf,
        "v_inf" => NormSelector::VInf,
        "u_1" => NormSelector::U1,
        "v_1" => NormSelector::V1,
        other => return Err(format!("unknown norm column {other}")),
    })
}

pub fn history_csv(history: &SolutionHistory) -> String {
    let mut out =
        String::from("t,norm_u_s1,norm_v_s2,norm_u_inf,norm_v_inf,norm_u_1,norm_v_1\n");
    for r in &history.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.t, r.norm_u_s1, r.norm_v_s2, r.norm_u_inf, r.norm_v_inf, r.norm_u_1, r.norm_v_1
        ));
    }
    out
}

/// Resolve the s-norm columns: explicit values win; otherwise use the
/// derived exponents when the point is in the global regime, else 2.
fn resolve_norms(cfg: &SimulateConfig) -> (f64, f64, Option<String>) {
    if let (Some(s1), Some(s2)) = (cfg.norms.s1, cfg.norms.s2) {
        return (s1, s2, None);
    }
    let point = ParamPoint::new(
        cfg.orders.gamma1,
        cfg.orders.gamma2,
        cfg.exponents.p,
        cfg.exponents.q,
        cfg.geometry.dim as u32,
    );
    if let Ok(pt) = point {
        if let Ok(report) = classify(&pt) {
            if let Some(d) = report.derived {
                return (
                    cfg.norms.s1.unwrap_or(d.s1),
                    cfg.norms.s2.unwrap_or(d.s2),
                    Some(format!(
                        "norms derived from the global-regime exponents at delta={}",
                        d.delta
                    )),
                );
            }
        }
    }
    (cfg.norms.s1.unwrap_or(2.0), cfg.norms.s2.unwrap_or(2.0), None)
}

pub fn run_simulation(
    cfg: &SimulateConfig,
    out_dir: Option<&Path>,
) -> Result<(SolutionHistory, serde_json::Value), Box<dyn std::error::Error>> {
    let system = cfg.system()?;
    let mesh = cfg.mesh()?;
    let (s1, s2, norm_note) = resolve_norms(cfg);
    let opts = SolverOptions {
        s1,
        s2,
        blowup_cap: cfg.caps.blowup_cap,
        snapshot_nodes: cfg.snapshots.clone(),
        picard_sweeps: cfg.picard_sweeps,
        ..Default::default()
    };
    // Parallel loops write disjoint slots, so output never depends on the
    // thread count; sequential mode still pins a single-thread pool so a
    // run can be replayed in a strictly serial schedule.
    let history = if cfg.sequential_mode {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build()?;
        pool.install(|| solve(&system, &mesh, &opts))?
    } else {
        solve(&system, &mesh, &opts)?
    };

    let mut fitted = serde_json::Map::new();
    if history.termination == Termination::Completed {
        let t_hi = mesh.horizon;
        let t_lo = 0.1 * t_hi;
        for (name, sel) in
            [("u_s1", NormSelector::US1), ("v_s2", NormSelector::VS2), ("u_inf", NormSelector::UInf)]
        {
            if let Ok((slope, r2)) = fit_decay_rate(&history, (t_lo, t_hi), sel) {
                fitted.insert(
                    name.into(),
                    serde_json::json!({"slope": slope, "r2": r2, "window": [t_lo, t_hi]}),
                );
            }
        }
    }

    let summary = serde_json::json!({
        "termination": history.termination,
        "s1": history.s1,
        "s2": history.s2,
        "alias_warning": history.alias_warning,
        "fitted_slopes": fitted,
        "norm_note": norm_note,
        "final_record": history.records.last(),
    });

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        write_manifest(dir, "simulate", serde_json::to_value(cfg)?)?;
        fs::write(dir.join("history.csv"), history_csv(&history))?;
        fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
        // norm-decay plot
        let series: Vec<svg::Series> = [
            ("|u|_s1", "steelblue", NormSelector::US1),
            ("|v|_s2", "seagreen", NormSelector::VS2),
            ("|u|_inf", "crimson", NormSelector::UInf),
            ("|v|_inf", "darkorange", NormSelector::VInf),
        ]
        .into_iter()
        .map(|(label, color, sel)| svg::Series {
            label,
            color,
            points: history.norm_series(sel).map(|(t, v)| (1.0 + t, v)).collect(),
        })
        .collect();
        fs::write(
            dir.join("norms.svg"),
            svg::loglog_plot("norm history", "1 + t", "norm", &series),
        )?;
        for (i, (t, u, v)) in history.snapshots.iter().enumerate() {
            let mut fu = fs::File::create(dir.join(format!("snapshot_{i}_u.field")))?;
            u.write_binary(&mut fu)?;
            let mut fv = fs::File::create(dir.join(format!("snapshot_{i}_v.field")))?;
            v.write_binary(&mut fv)?;
            let _ = t;
        }
        let mut report = String::new();
        report.push_str(&format!("termination: {:?}\n", history.termination));
        if let Some(w) = history.alias_warning {
            report.push_str(&format!(
                "warning: horizon exceeds the box validity window t <= {w:.3}\n"
            ));
        }
        if let Some(r) = history.records.last() {
            report.push_str(&format!(
                "final t={}: |u|_inf={:.6e} |v|_inf={:.6e}\n",
                r.t, r.norm_u_inf, r.norm_v_inf
            ));
        }
        fs::write(dir.join("report.txt"), report)?;
    }

    Ok((history, summary))
}

fn cmd_simulate(a: SimulateArgs) -> CmdResult {
    let text = fs::read_to_string(&a.config)?;
    let cfg: SimulateConfig = serde_json::from_str(&text)
        .map_err(|e| format!("config error in {}: {e}", a.config.display()))?;
    let out_dir = a
        .out_dir
        .clone()
        .or_else(|| cfg.out_dir.as_ref().map(PathBuf::from));
    let (history, summary) = run_simulation(&cfg, out_dir.as_deref())?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    match history.termination {
        Termination::Aborted { .. } => Ok(1),
        _ => Ok(0),
    }
}

fn cmd_fit_decay(a: FitDecayArgs) -> CmdResult {
    let text = fs::read_to_string(&a.history)?;
    let sel = selector_by_name(&a.column)?;
    let col = match sel {
        NormSelector::US1 => 1,
        NormSelector::VS2 => 2,
        NormSelector::UInf => 3,
        NormSelector::VInf => 4,
        NormSelector::U1 => 5,
        NormSelector::V1 => 6,
    };
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 7 {
            continue;
        }
        let t: f64 = fields[0].parse()?;
        let v: f64 = fields[col].parse()?;
        if t >= a.t_lo && t <= a.t_hi && v > 0.0 {
            pts.push(((1.0 + t).ln(), v.ln()));
        }
    }
    if pts.len() < 8 {
        return Err(format!("window holds {} points, need >= 8", pts.len()).into());
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    println!(
        "{}",
        serde_json::json!({"column": a.column, "slope": slope, "points": pts.len()})
    );
    Ok(0)
}

fn cmd_threshold(a: ThresholdArgs) -> CmdResult {
    let text = fs::read_to_string(&a.config)?;
    let cfg: ThresholdConfig = serde_json::from_str(&text)
        .map_err(|e| format!("config error in {}: {e}", a.config.display()))?;
    let out_dir = a.out_dir.clone().or_else(|| cfg.out_dir.as_ref().map(PathBuf::from));

    let [lo0, hi0] = cfg.bracket;
    if !(lo0 > 0.0 && hi0 > lo0) {
        return Err(format!("invalid bracket [{lo0}, {hi0}]").into());
    }
    let run_at = |eps: f64| -> Result<Termination, Box<dyn std::error::Error>> {
        let mut c = cfg.template.clone();
        c.data_scale = eps;
        let (h, _) = run_simulation(&c, None)?;
        Ok(h.termination)
    };

    let lo_term = run_at(lo0)?;
    let hi_term = run_at(hi0)?;
    let lo_ok = lo_term == Termination::Completed;
    let hi_blew = matches!(hi_term, Termination::BlewUp { .. });
    if !lo_ok || !hi_blew {
        let note = if !lo_ok && matches!(lo_term, Termination::BlewUp { .. }) {
            "both endpoints blow up: no global endpoint exists in this bracket \
             (expected when the parameter point satisfies the blow-up condition \
             for all positive-average data)"
        } else if !hi_blew && lo_ok {
            "both endpoints complete: raise the upper bracket"
        } else {
            "endpoints behave identically"
        };
        let payload = serde_json::json!({
            "error": "BracketInvalid",
            "bracket": cfg.bracket,
            "lo_termination": lo_term,
            "hi_termination": hi_term,
            "note": note,
        });
        println!("{}", serde_json::to_string_pretty(&payload)?);
        if let Some(dir) = &out_dir {
            write_manifest(dir, "find-threshold", serde_json::to_value(&cfg)?)?;
            fs::write(dir.join("threshold.json"), serde_json::to_string_pretty(&payload)? + "\n")?;
        }
        return Ok(2);
    }

    let (mut lo, mut hi) = (lo0, hi0);
    for _ in 0..cfg.max_bisections {
        if (hi - lo) <= cfg.rel_tol * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match run_at(mid)? {
            Termination::Completed => lo = mid,
            _ => hi = mid,
        }
    }
    let payload = serde_json::json!({
        "epsilon_star": 0.5 * (lo + hi),
        "bracket_final": [lo, hi],
        "bracket_initial": cfg.bracket,
        "note": "empirical completion/blow-up boundary at this resolution and horizon; \
                 not the theorem's smallness threshold",
    });
    println!("{}", serde_json::to_string_pretty(&payload)?);
    if let Some(dir) = &out_dir {
        write_manifest(dir, "find-threshold", serde_json::to_value(&cfg)?)?;
        fs::write(dir.join("threshold.json"), serde_json::to_string_pretty(&payload)? + "\n")?;
    }
    Ok(0)
}

fn cmd_validate(a: ValidateArgs) -> CmdResult {
    let alpha = a.alpha;
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(format!("alpha {alpha} outside (1,2)").into());
    }

    // default desk-scale grids per dimension
    let geom = match a.dim {
        1 => BoxGeometry::new(1, 4096, 160.0)?,
        2 => BoxGeometry::new(2, 256, 60.0)?,
        3 => BoxGeometry::new(3, 48, 40.0)?,
        d => return Err(format!("dimension {d} unsupported").into()),
    };

    let mut findings: Vec<String> = Vec::new();
    let mut fits = Vec::new();

    // Rate combos admissible at this dimension: put λ = N/p1 - N/p2 in the
    // middle of each family's window; a family whose window cannot be
    // reached with p1 > 1 at this dimension is skipped (E2 needs λ > 2/α,
    // which a one-dimensional box cannot provide).
    let n_dim = a.dim as f64;
    let pair_for = |lo: f64, hi: f64| -> Option<(f64, f64)> {
        let p2 = 60.0;
        let reach = n_dim / 1.05 - n_dim / p2;
        if reach <= lo {
            return None;
        }
        let lambda = 0.5 * (lo + hi.min(reach));
        let p1 = n_dim / (lambda + n_dim / p2);
        Some((p1, p2))
    };
    let mut combos: Vec<(MultiplierFamily, f64, f64)> = vec![
        (MultiplierFamily::E1, 2.0, f64::INFINITY),
        (MultiplierFamily::E1, 1.5, 6.0),
    ];
    if let Some((p1, p2)) = pair_for(2.0 - 2.0 / alpha, 2.0) {
        combos.push((MultiplierFamily::Ealpha, p1, p2));
    }
    if let Some((p1, p2)) = pair_for(2.0 / alpha, 2.0) {
        combos.push((MultiplierFamily::E2, p1, p2));
    }

    let windows: &[(f64, f64)] = &[(0.3, 12.0)];
    for (family, p1, p2) in combos {
        for &(t_lo, t_hi) in windows {
            match validate_smoothing(alpha, p1, p2, family, geom, (t_lo, t_hi), 10, ProbeSpec::Gaussian)
            {
                Ok(fit) => {
                    let rel = fit.relative_slope_error();
                    if rel > a.tolerance {
                        findings.push(format!(
                            "{family:?} p1={p1} p2={p2}: slope {:.4} vs {:.4} ({:.1}% off)",
                            fit.fitted_slope,
                            fit.predicted_slope,
                            rel * 100.0
                        ));
                    }
                    fits.push(fit);
                }
                Err(e) => findings.push(format!("{family:?} p1={p1} p2={p2}: {e}")),
            }
        }
    }

    let t_set: Vec<f64> = (0..5).map(|i| 0.5 * 2.0f64.powi(i)).collect();
    let kernel_report = validate_pointwise_kernel(alpha, geom, &t_set)?;
    let peak_rel = (kernel_report.peak_slope - kernel_report.peak_slope_predicted).abs()
        / kernel_report.peak_slope_predicted.abs();
    if peak_rel > a.tolerance {
        findings.push(format!(
            "kernel peak slope {:.4} vs {:.4}",
            kernel_report.peak_slope, kernel_report.peak_slope_predicted
        ));
    }
    findings.extend(kernel_report.violations.iter().cloned());

    let bound_geom = if a.dim == 1 { BoxGeometry::new(1, 32768, 256.0)? } else { geom };
    let mut boundedness = Vec::new();
    for family in [MultiplierFamily::E1, MultiplierFamily::E2, MultiplierFamily::Ealpha] {
        let rep = validate_boundedness(alpha, family, bound_geom, (0.01, 100.0), 9)?;
        let spread = BoundednessReport::spread(&rep.l1_mass);
        if spread > 2.0 {
            findings.push(format!("{family:?}: L1 mass spread {spread:.3} exceeds 2"));
        }
        boundedness.push(rep);
    }

    let payload = serde_json::json!({
        "alpha": alpha,
        "dim": a.dim,
        "smoothing_fits": fits,
        "kernel": kernel_report,
        "boundedness": boundedness,
        "findings": findings,
        "pass": findings.is_empty(),
    });
    println!("{}", serde_json::to_string_pretty(&payload)?);
    if let Some(out) = &a.out {
        if let Some(parent) = out.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        fs::write(out, serde_json::to_string_pretty(&payload)? + "\n")?;
    }
    Ok(if findings.is_empty() { 0 } else { 2 })
}
