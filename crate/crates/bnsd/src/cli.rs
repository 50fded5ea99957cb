//! Command-line front end: flag parsing, command dispatch, and CSV/JSON
//! serialization.
//!
//! Exit codes: 0 success, 2 configuration/validation error, 3 numerical
//! failure (an internal-consistency audit tripped, signaling a bug rather
//! than bad input). Angles are radians everywhere. Result numbers are
//! serialized with 12 significant digits; state amplitudes keep full
//! precision so a dumped state reparses exactly.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::analysis::{
    critical_time, optimize_analytic, optimize_bloch, optimize_in_plane, sweep, sweep_numeric,
    OptimalSettings, OptimizeMode, SweepRow, TimeGrid,
};
use crate::channel::DephasingChannel;
use crate::error::{Error, Result};
use crate::numeric::{expectation, hermitian_eigenvalues, trace, ComplexMatrix};
use crate::operators::{build_operator, InPlaneSettings, OperatorKind, ALL_OPERATORS};
use crate::state::{wrap_angle, PresetState, StateSpec};
use crate::tol;
use crate::wwzb::{enumerate_family, family_values, locality_verdict};

/// Three-qubit Bell-nonlocality sudden death under multilocal dephasing.
#[derive(Debug, Parser)]
#[command(name = "bnsd", version, disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate operator expectations at explicit settings.
    Eval(EvalArgs),
    /// Sweep optimized violations over a time grid.
    Sweep(SweepArgs),
    /// Solve for the times at which optimized violations die.
    Critical(CriticalArgs),
    /// Evaluate all 256 four-party-free WWZB inequalities at fixed settings.
    Wwzb(WwzbArgs),
    /// Optimize measurement settings for maximal |expectation|.
    Optimize(OptimizeArgs),
    /// Dump the full 256-member inequality family.
    DumpFamily(DumpFamilyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// State preset (ghz | w | zero) or path to a state JSON file.
    #[arg(long)]
    state: String,
    /// Dephasing rate Γ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Evaluation time (a single value; grids belong to sweep).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    /// Operator name or "all".
    #[arg(long, default_value = "all")]
    op: String,
    /// Party-B in-plane angle θ_B (radians).
    #[arg(long, allow_negative_numbers = true)]
    theta_b: Option<f64>,
    /// Party-C in-plane angle θ_C (radians).
    #[arg(long, allow_negative_numbers = true)]
    theta_c: Option<f64>,
    /// Combined angle: θ_BC for chsh-bipartition; for tripartite operators
    /// sets θ_B to this value with θ_C = 0.
    #[arg(long, allow_negative_numbers = true)]
    theta_bc: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// State preset (ghz | w | zero) or path to a state JSON file.
    #[arg(long)]
    state: String,
    /// Dephasing rate Γ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Time grid as min:max:steps.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Operator name or "all".
    #[arg(long, default_value = "all")]
    op: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    /// State preset (ghz | zero) or path to a state JSON file; the state
    /// must lie in the five-amplitude family.
    #[arg(long)]
    state: String,
    /// Dephasing rate Γ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Operator name or "all".
    #[arg(long, default_value = "all")]
    op: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WwzbArgs {
    /// State preset (ghz | w | zero) or path to a state JSON file.
    #[arg(long)]
    state: String,
    /// Dephasing rate Γ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Evaluation time.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    /// Party-B in-plane angle θ_B (radians).
    #[arg(long, allow_negative_numbers = true)]
    theta_b: Option<f64>,
    /// Party-C in-plane angle θ_C (radians).
    #[arg(long, allow_negative_numbers = true)]
    theta_c: Option<f64>,
    /// Shorthand setting θ_B to this value with θ_C = 0.
    #[arg(long, allow_negative_numbers = true)]
    theta_bc: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// State preset (ghz | w | zero) or path to a state JSON file.
    #[arg(long)]
    state: String,
    /// Dephasing rate Γ.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Evaluation time.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    /// Operator name or "all".
    #[arg(long, default_value = "all")]
    op: String,
    /// Optimizer mode: in-plane or bloch.
    #[arg(long, default_value = "in-plane")]
    mode: String,
    /// Seed for the multi-start Bloch optimizer.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DumpFamilyArgs {
    #[command(flatten)]
    output: OutputArgs,
}

/// Entry point used by the binary.
pub fn run() -> u8 {
    run_from(std::env::args_os())
}

/// Parse and execute; returns the process exit code.
pub fn run_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::NumericalFailure(_) => 3,
                _ => 2,
            }
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Critical(args) => cmd_critical(args),
        Command::Wwzb(args) => cmd_wwzb(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::DumpFamily(args) => cmd_dump_family(args),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Csv,
}

fn parse_format(name: &str) -> Result<OutputFormat> {
    match name {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(Error::BadConfig(format!(
            "unknown format '{other}' (expected json or csv)"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum TimeSpec {
    Single(f64),
    Grid(TimeGrid),
}

fn parse_time_spec(text: &str) -> Result<TimeSpec> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::BadConfig(format!(
                "time grid must be min:max:steps, got '{text}'"
            )));
        }
        let t_min: f64 = parse_number("t_min", parts[0])?;
        let t_max: f64 = parse_number("t_max", parts[1])?;
        let steps: usize = parts[2].parse().map_err(|_| {
            Error::BadConfig(format!("steps must be a positive integer, got '{}'", parts[2]))
        })?;
        Ok(TimeSpec::Grid(TimeGrid::new(t_min, t_max, steps)?))
    } else {
        let t = parse_number("t", text)?;
        if t < 0.0 {
            return Err(Error::BadConfig(format!("time must be nonnegative, got {t}")));
        }
        Ok(TimeSpec::Single(t))
    }
}

fn parse_number(name: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .parse()
        .map_err(|_| Error::BadConfig(format!("{name} must be a number, got '{text}'")))?;
    if !v.is_finite() {
        return Err(Error::BadConfig(format!("{name} must be finite, got {v}")));
    }
    Ok(v)
}

fn single_time(text: &str) -> Result<f64> {
    match parse_time_spec(text)? {
        TimeSpec::Single(t) => Ok(t),
        TimeSpec::Grid(_) => Err(Error::BadConfig(
            "this command takes a single --t; grids belong to sweep".into(),
        )),
    }
}

fn grid_time(text: &str) -> Result<TimeGrid> {
    match parse_time_spec(text)? {
        TimeSpec::Grid(g) => Ok(g),
        TimeSpec::Single(_) => Err(Error::BadConfig(
            "sweep takes a time grid --t min:max:steps".into(),
        )),
    }
}

fn check_gamma(gamma: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::BadConfig(format!(
            "--gamma must be positive and finite, got {gamma}"
        )));
    }
    Ok(gamma)
}

fn load_state(source: &str) -> Result<StateSpec> {
    match source {
        "ghz" | "w" | "zero" => Ok(StateSpec::Preset(PresetState::parse(source)?)),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::BadConfig(format!("cannot read state file '{path}': {e}"))
            })?;
            StateSpec::from_json_str(&text)
        }
    }
}

fn parse_ops(text: &str) -> Result<Vec<OperatorKind>> {
    let mut kinds = if text == "all" {
        ALL_OPERATORS.to_vec()
    } else {
        vec![OperatorKind::parse(text)?]
    };
    // Output rows are ordered by operator name everywhere.
    kinds.sort_by_key(|k| k.name());
    Ok(kinds)
}

struct ResolvedAngles {
    settings: InPlaneSettings,
    theta_bc: f64,
}

fn resolve_angles(
    theta_b: Option<f64>,
    theta_c: Option<f64>,
    theta_bc: Option<f64>,
) -> Result<ResolvedAngles> {
    if theta_bc.is_some() && (theta_b.is_some() || theta_c.is_some()) {
        return Err(Error::BadConfig(
            "--theta-bc cannot be combined with --theta-b/--theta-c".into(),
        ));
    }
    for (name, v) in [
        ("--theta-b", theta_b),
        ("--theta-c", theta_c),
        ("--theta-bc", theta_bc),
    ] {
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(Error::BadConfig(format!("{name} must be finite, got {v}")));
            }
        }
    }
    Ok(match theta_bc {
        Some(bc) => ResolvedAngles {
            settings: InPlaneSettings {
                theta_b: bc,
                theta_c: 0.0,
            },
            theta_bc: bc,
        },
        None => {
            let b = theta_b.unwrap_or(0.0);
            let c = theta_c.unwrap_or(0.0);
            ResolvedAngles {
                settings: InPlaneSettings {
                    theta_b: b,
                    theta_c: c,
                },
                // The bipartition closed form depends on θ_BC the way the
                // tripartite ones depend on θ_B + θ_C, so the sum is the
                // consistent default when only per-party angles are given.
                theta_bc: b + c,
            }
        }
    })
}

/// Evolve the state and audit the result; audit failures are internal bugs
/// and exit with status 3.
fn evolved_density(spec: &StateSpec, gamma: f64, t: f64) -> Result<ComplexMatrix> {
    let channel = DephasingChannel::new(gamma, t)?;
    let rho = match spec.generic() {
        Some(g) => channel.apply_mask(&g),
        None => channel.mask_matrix(&spec.density_matrix())?,
    };
    audit_density(&rho)?;
    Ok(rho)
}

fn audit_density(rho: &ComplexMatrix) -> Result<()> {
    let tr = trace(rho);
    if (tr.re - 1.0).abs() > tol::CHANNEL_TRACE || tr.im.abs() > tol::CHANNEL_TRACE {
        return Err(Error::NumericalFailure(format!(
            "evolved state trace drifted to {tr}"
        )));
    }
    let eigs = hermitian_eigenvalues(rho).map_err(|e| {
        Error::NumericalFailure(format!("evolved state failed the Hermiticity audit: {e}"))
    })?;
    if let Some(&min) = eigs.first() {
        if min < -tol::POSITIVITY {
            return Err(Error::NumericalFailure(format!(
                "evolved state has negative eigenvalue {min}"
            )));
        }
    }
    Ok(())
}

/// Format with 12 significant digits, in the spirit of C's %.12g: fixed
/// notation for exponents in [-4, 12), scientific otherwise, trailing
/// zeros trimmed.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("{:e} always emits an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-4..12).contains(&exp) {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp:+03}")
    } else {
        let prec = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.prec$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').into()
        } else {
            fixed
        }
    }
}

/// A result number as a JSON value, canonicalized to 12 significant digits.
fn num(x: f64) -> Value {
    serde_json::from_str(&fmt_g12(x)).unwrap_or(Value::Null)
}

fn opt_num(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialization is infallible here");
    s.push('\n');
    s
}

struct CsvRow {
    t: f64,
    operator: String,
    value: f64,
    bound: f64,
    violated: bool,
    theta_bc_alpha: Option<f64>,
}

fn csv_table(rows: &[CsvRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::BadConfig(format!("csv serialization failed: {e}"));
    w.write_record(["t", "operator", "value", "bound", "violated", "theta_bc_alpha"])
        .map_err(io_err)?;
    for r in rows {
        w.write_record([
            fmt_g12(r.t),
            r.operator.clone(),
            fmt_g12(r.value),
            fmt_g12(r.bound),
            r.violated.to_string(),
            r.theta_bc_alpha.map(fmt_g12).unwrap_or_default(),
        ])
        .map_err(io_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::BadConfig(format!("csv serialization failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::BadConfig(format!("csv output not UTF-8: {e}")))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| {
            Error::BadConfig(format!("cannot write '{}': {e}", path.display()))
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
            {
                // A closed pipe (e.g. | head) is not an error worth a panic
                // or a nonzero status.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| {
                    Error::BadConfig(format!("cannot write to stdout: {e}"))
                }),
            }
        }
    }
}

/// α when the state has a defined relative phase (nonzero corner
/// coherence), else None; combined-angle output fields go null/empty
/// without it.
fn defined_phase(spec: &StateSpec) -> Option<f64> {
    spec.generic().and_then(|g| g.relative_phase().ok())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let format = parse_format(&args.output.format)?;
    let spec = load_state(&args.state)?;
    let gamma = check_gamma(args.gamma)?;
    let t = single_time(&args.t)?;
    let kinds = parse_ops(&args.op)?;
    let angles = resolve_angles(args.theta_b, args.theta_c, args.theta_bc)?;
    let rho = evolved_density(&spec, gamma, t)?;
    let alpha = defined_phase(&spec);

    let mut results = Vec::new();
    let mut rows = Vec::new();
    for &kind in &kinds {
        let op = build_operator(kind, &angles.settings, angles.theta_bc);
        let signed = expectation(&op.matrix, &rho)?;
        let value = signed.abs();
        let violated = value > op.classical_bound;
        let beta = alpha.map(|a| {
            wrap_angle(if kind.is_bipartition() {
                angles.theta_bc + a
            } else {
                angles.settings.theta_b + angles.settings.theta_c + a
            })
        });
        results.push(json!({
            "operator": kind.name(),
            "value": num(value),
            "expectation": num(signed),
            "bound": num(op.classical_bound),
            "quantum_bound": opt_num(op.quantum_bound),
            "violated": violated,
            "theta_bc_alpha": opt_num(beta),
        }));
        rows.push(CsvRow {
            t,
            operator: kind.name().into(),
            value,
            bound: op.classical_bound,
            violated,
            theta_bc_alpha: beta,
        });
    }

    let content = match format {
        OutputFormat::Json => pretty(&json!({
            "command": "eval",
            "state": spec.to_json(),
            "gamma": num(gamma),
            "t": num(t),
            "settings": {
                "theta_b": num(angles.settings.theta_b),
                "theta_c": num(angles.settings.theta_c),
                "theta_bc": num(angles.theta_bc),
            },
            "results": results,
        })),
        OutputFormat::Csv => csv_table(&rows)?,
    };
    emit(&args.output.out, &content)
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let format = parse_format(&args.output.format)?;
    let spec = load_state(&args.state)?;
    let gamma = check_gamma(args.gamma)?;
    let grid = grid_time(&args.t)?;
    let kinds = parse_ops(&args.op)?;

    let mut rows: Vec<SweepRow> = match spec.generic() {
        Some(g) => sweep(&g, gamma, &grid, &kinds)?,
        None => sweep_numeric(&spec.density_matrix(), gamma, &grid, &kinds)?,
    };
    if defined_phase(&spec).is_none() {
        for row in &mut rows {
            row.theta_bc_alpha = None;
        }
    }

    let content = match format {
        OutputFormat::Json => {
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "t": num(r.t),
                        "operator": r.operator.name(),
                        "value": num(r.value),
                        "bound": num(r.bound),
                        "violated": r.violated,
                        "theta_bc_alpha": opt_num(r.theta_bc_alpha),
                    })
                })
                .collect();
            pretty(&json!({
                "command": "sweep",
                "state": spec.to_json(),
                "gamma": num(gamma),
                "grid": {
                    "t_min": num(grid.t_min),
                    "t_max": num(grid.t_max),
                    "steps": grid.steps,
                },
                "rows": json_rows,
            }))
        }
        OutputFormat::Csv => {
            let csv_rows: Vec<CsvRow> = rows
                .iter()
                .map(|r| CsvRow {
                    t: r.t,
                    operator: r.operator.name().into(),
                    value: r.value,
                    bound: r.bound,
                    violated: r.violated,
                    theta_bc_alpha: r.theta_bc_alpha,
                })
                .collect();
            csv_table(&csv_rows)?
        }
    };
    emit(&args.output.out, &content)
}

fn critical_json(t: Option<f64>) -> Value {
    match t {
        Some(x) => num(x),
        None => Value::String("never-violated".into()),
    }
}

fn cmd_critical(args: CriticalArgs) -> Result<()> {
    let format = parse_format(&args.output.format)?;
    if format == OutputFormat::Csv {
        return Err(Error::BadConfig(
            "critical reports do not fit the row table; use --format json".into(),
        ));
    }
    let spec = load_state(&args.state)?;
    let gamma = check_gamma(args.gamma)?;
    let state = spec.generic().ok_or_else(|| {
        Error::BadConfig(format!(
            "critical times need a five-amplitude state; {} is outside the family",
            spec.describe()
        ))
    })?;
    let kinds = parse_ops(&args.op)?;

    let mut reports = Vec::new();
    for &kind in &kinds {
        let report = critical_time(kind, &state, gamma)?;
        reports.push(json!({
            "operator": kind.name(),
            "analytic_t": critical_json(report.analytic_t),
            "numeric_t": critical_json(report.numeric_t),
            "never_violated": report.never_violated,
            "settings_policy": report.settings_policy.name(),
        }));
    }
    let content = pretty(&json!({
        "command": "critical",
        "state": spec.to_json(),
        "gamma": num(gamma),
        "reports": reports,
    }));
    emit(&args.output.out, &content)
}

fn cmd_wwzb(args: WwzbArgs) -> Result<()> {
    let format = parse_format(&args.output.format)?;
    let spec = load_state(&args.state)?;
    let gamma = check_gamma(args.gamma)?;
    let t = single_time(&args.t)?;
    let angles = resolve_angles(args.theta_b, args.theta_c, args.theta_bc)?;
    let rho = evolved_density(&spec, gamma, t)?;
    let beta = defined_phase(&spec)
        .map(|a| wrap_angle(angles.settings.theta_b + angles.settings.theta_c + a));

    let verdict = locality_verdict(&rho, &angles.settings)?;
    let values = family_values(&rho, &angles.settings)?;
    let family = enumerate_family();

    let content = match format {
        OutputFormat::Json => {
            let inequalities: Vec<Value> = family
                .iter()
                .zip(&values)
                .enumerate()
                .map(|(mask, (ineq, &v))| {
                    json!({
                        "mask": mask,
                        "class": ineq.class_id,
                        "value": num(v.abs()),
                        "expectation": num(v),
                        "bound": num(ineq.bound),
                        "violated": v.abs() > ineq.bound,
                    })
                })
                .collect();
            pretty(&json!({
                "command": "wwzb",
                "state": spec.to_json(),
                "gamma": num(gamma),
                "t": num(t),
                "settings": {
                    "theta_b": num(angles.settings.theta_b),
                    "theta_c": num(angles.settings.theta_c),
                },
                "verdict": {
                    "max_violation": num(verdict.max_violation),
                    "violating_count": verdict.violating_count,
                    "fully_local_at_settings": verdict.is_fully_local_at_settings,
                },
                "inequalities": inequalities,
            }))
        }
        OutputFormat::Csv => {
            let rows: Vec<CsvRow> = family
                .iter()
                .zip(&values)
                .enumerate()
                .map(|(mask, (ineq, &v))| CsvRow {
                    t,
                    operator: format!("wwzb-{mask}"),
                    value: v.abs(),
                    bound: ineq.bound,
                    violated: v.abs() > ineq.bound,
                    theta_bc_alpha: beta,
                })
                .collect();
            csv_table(&rows)?
        }
    };
    emit(&args.output.out, &content)
}

fn settings_json(settings: &OptimalSettings) -> Value {
    let vec3 = |v: [f64; 3]| json!([num(v[0]), num(v[1]), num(v[2])]);
    match settings {
        OptimalSettings::InPlane(s) => json!({
            "theta_b": num(s.theta_b),
            "theta_c": num(s.theta_c),
        }),
        OptimalSettings::Bipartition { theta_bc } => json!({ "theta_bc": num(*theta_bc) }),
        OptimalSettings::Bloch(b) => json!({
            "a": vec3(b.a),
            "a_prime": vec3(b.a_prime),
            "b": vec3(b.b),
            "b_prime": vec3(b.b_prime),
            "c": vec3(b.c),
            "c_prime": vec3(b.c_prime),
        }),
    }
}

fn cmd_optimize(args: OptimizeArgs) -> Result<()> {
    let format = parse_format(&args.output.format)?;
    let spec = load_state(&args.state)?;
    let gamma = check_gamma(args.gamma)?;
    let t = single_time(&args.t)?;
    let mode = OptimizeMode::parse(&args.mode)?;
    let mut kinds = parse_ops(&args.op)?;
    if mode == OptimizeMode::Bloch && args.op == "all" {
        // chsh-bipartition has no Bloch parameterization; "all" means all
        // that apply. Asking for it by name still errors.
        kinds.retain(|k| !k.is_bipartition());
    }

    let alpha_defined = defined_phase(&spec).is_some();
    let mut outcomes = Vec::new();
    match mode {
        OptimizeMode::InPlane => {
            if let Some(state) = spec.generic() {
                let channel = DephasingChannel::new(gamma, t)?;
                for &kind in &kinds {
                    outcomes.push(optimize_analytic(kind, &state, &channel)?);
                }
            } else {
                let rho = evolved_density(&spec, gamma, t)?;
                for &kind in &kinds {
                    outcomes.push(optimize_in_plane(kind, &rho)?);
                }
            }
        }
        OptimizeMode::Bloch => {
            let rho = evolved_density(&spec, gamma, t)?;
            for &kind in &kinds {
                outcomes.push(optimize_bloch(kind, &rho, args.seed)?);
            }
        }
    }

    let mut results = Vec::new();
    let mut rows = Vec::new();
    for out in &outcomes {
        let bound = out.operator.classical_bound();
        let violated = out.max_abs > bound;
        let beta = if alpha_defined { out.theta_bc_alpha } else { None };
        results.push(json!({
            "operator": out.operator.name(),
            "value": num(out.value),
            "max_abs": num(out.max_abs),
            "bound": num(bound),
            "violated": violated,
            "settings": settings_json(&out.settings),
            "theta_bc_alpha": opt_num(beta),
            "gradient_norm": opt_num(out.gradient_norm),
        }));
        rows.push(CsvRow {
            t,
            operator: out.operator.name().into(),
            value: out.max_abs,
            bound,
            violated,
            theta_bc_alpha: beta,
        });
    }

    let content = match format {
        OutputFormat::Json => pretty(&json!({
            "command": "optimize",
            "state": spec.to_json(),
            "gamma": num(gamma),
            "t": num(t),
            "mode": mode.name(),
            "seed": args.seed,
            "results": results,
        })),
        OutputFormat::Csv => csv_table(&rows)?,
    };
    emit(&args.output.out, &content)
}

fn cmd_dump_family(args: DumpFamilyArgs) -> Result<()> {
    let format = parse_format(&args.output.format)?;
    if format == OutputFormat::Csv {
        return Err(Error::BadConfig(
            "the family dump does not fit the row table; use --format json".into(),
        ));
    }
    let family = enumerate_family();
    let entries: Vec<Value> = family
        .iter()
        .map(|ineq| {
            let f: Vec<i64> = ineq.sign_function.signs().iter().map(|&s| s as i64).collect();
            let mut coeffs = Map::new();
            for (s, &c) in ineq.coefficients.iter().enumerate() {
                coeffs.insert(format!("{s:03b}"), num(c));
            }
            json!({
                "f": f,
                "coeffs": coeffs,
                "class": ineq.class_id,
            })
        })
        .collect();
    emit(&args.output.out, &pretty(&Value::Array(entries)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting_matches_printf_g() {
        assert_eq!(fmt_g12(0.0), "0");
        assert_eq!(fmt_g12(-0.0), "0");
        assert_eq!(fmt_g12(2.0), "2");
        assert_eq!(fmt_g12(-0.25), "-0.25");
        assert_eq!(fmt_g12(0.5), "0.5");
        assert_eq!(fmt_g12(5.656854249492381), "5.65685424949");
        assert_eq!(fmt_g12(0.23104906018664842), "0.231049060187");
        assert_eq!(fmt_g12(1.0e16), "1e+16");
        assert_eq!(fmt_g12(1.23456789e-7), "1.23456789e-07");
        assert_eq!(fmt_g12(-123456789012345.0), "-1.23456789012e+14");
        assert_eq!(fmt_g12(0.99999999999999), "1");
        assert_eq!(fmt_g12(0.0001), "0.0001");
        assert_eq!(fmt_g12(0.00001), "1e-05");
    }

    #[test]
    fn time_specs_parse_and_validate() {
        assert_eq!(parse_time_spec("0.5").unwrap(), TimeSpec::Single(0.5));
        match parse_time_spec("0:1:11").unwrap() {
            TimeSpec::Grid(g) => {
                assert_eq!(g.steps, 11);
                assert_eq!(g.t_min, 0.0);
                assert_eq!(g.t_max, 1.0);
            }
            other => panic!("expected a grid, got {other:?}"),
        }
        assert!(parse_time_spec("-0.5").is_err());
        assert!(parse_time_spec("0:1").is_err());
        assert!(parse_time_spec("1:0:5").is_err());
        assert!(parse_time_spec("0:1:1").is_err());
        assert!(parse_time_spec("abc").is_err());
        assert!(parse_time_spec("nan").is_err());
        assert!(single_time("0:1:5").is_err());
        assert!(grid_time("0.5").is_err());
    }

    #[test]
    fn angle_resolution_rules() {
        let r = resolve_angles(None, None, Some(0.7)).unwrap();
        assert_eq!(r.settings.theta_b, 0.7);
        assert_eq!(r.settings.theta_c, 0.0);
        assert_eq!(r.theta_bc, 0.7);

        let r = resolve_angles(Some(0.2), Some(0.3), None).unwrap();
        assert!((r.theta_bc - 0.5).abs() < 1e-15);

        assert!(resolve_angles(Some(0.1), None, Some(0.2)).is_err());
        assert!(resolve_angles(Some(f64::NAN), None, None).is_err());
    }

    #[test]
    fn csv_table_has_the_normative_header() {
        let rows = vec![CsvRow {
            t: 0.0,
            operator: "svetlichny".into(),
            value: 5.656854249492381,
            bound: 4.0,
            violated: true,
            theta_bc_alpha: None,
        }];
        let table = csv_table(&rows).unwrap();
        let mut lines = table.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,operator,value,bound,violated,theta_bc_alpha"
        );
        assert_eq!(lines.next().unwrap(), "0,svetlichny,5.65685424949,4,true,");
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn operator_lists_are_name_sorted() {
        let kinds = parse_ops("all").unwrap();
        assert_eq!(kinds.len(), 10);
        for pair in kinds.windows(2) {
            assert!(pair[0].name() < pair[1].name());
        }
        assert_eq!(parse_ops("p5").unwrap(), vec![OperatorKind::P5]);
        assert!(parse_ops("sv").is_err());
    }

    #[test]
    fn bad_flags_exit_with_configuration_status() {
        // Unknown subcommand and unknown flag both come back as 2.
        assert_eq!(run_from(["bnsd", "explode"]), 2);
        assert_eq!(run_from(["bnsd", "eval", "--state", "ghz", "--nope", "1"]), 2);
        // Validation failures funnel through the same status.
        assert_eq!(
            run_from(["bnsd", "eval", "--state", "ghz", "--gamma", "-1"]),
            2
        );
        assert_eq!(
            run_from(["bnsd", "critical", "--state", "w", "--op", "p5"]),
            2
        );
        assert_eq!(
            run_from(["bnsd", "critical", "--state", "ghz", "--format", "csv"]),
            2
        );
        assert_eq!(run_from(["bnsd", "dump-family", "--format", "csv"]), 2);
        assert_eq!(
            run_from(["bnsd", "sweep", "--state", "ghz", "--t", "0.5"]),
            2
        );
        assert_eq!(
            run_from([
                "bnsd", "optimize", "--state", "ghz", "--op", "chsh-bipartition", "--mode",
                "bloch"
            ]),
            2
        );
    }

    #[test]
    fn outputs_land_in_files_and_repeat_byte_identically() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        let arg = path.to_str().unwrap();
        let argv = [
            "bnsd", "eval", "--state", "ghz", "--t", "0", "--op", "svetlichny", "--theta-bc",
            "-0.7853981634", "--format", "csv", "--out", arg,
        ];
        assert_eq!(run_from(argv), 0);
        let first = std::fs::read(&path).unwrap();
        assert_eq!(run_from(argv), 0);
        let second = std::fs::read(&path).unwrap();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with("t,operator,value,bound,violated,theta_bc_alpha\n"));
        assert!(text.contains("svetlichny,5.65685424949,4,true"));
    }
}
