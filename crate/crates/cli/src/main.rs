//! Command-line driver: generators, sewing, rough-path lifting, invariant
//! verification and reproducible demo experiments.
//!
//! Exit codes: 0 on success, 1 when an invariant check fails, 2 on usage,
//! I/O or parse errors.  All outputs are byte-identical across runs for the
//! same flags (and seed).

mod reports;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reports::{Check, DemoSummary, VerifyReport};
use roughsew::dyadic_grid::{norm_c2, DyadicGrid, Grid1Fn, Grid2Fn, TripleScan};
use roughsew::paths::{generate_path, germ_view, GermSpec, PathSpec};
use roughsew::rough_path::{extend, extend_above_n, HolderFamily, RoughPathGrid};
use roughsew::sewing::{
    constant_c, log_weighted_norm, measure, sew_at_level, sew_high_refined, sew_low_view,
    sew_with_report,
};
use roughsew::shuffle::{ShuffleAlgebra, Word};

/// Environment variable overriding the default defect tolerance.
const TOLERANCE_ENV: &str = "ROUGHSEW_TOL";
const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Frozen regression values of the continuity constants on the unit horizon.
const CONSTANT_TABLE: [(f64, f64); 6] = [
    (0.3, 419.5643204938433),
    (0.5, 197.82337649086287),
    (0.8, 354.096576777844),
    (1.0, 138.4987239253405),
    (1.3, 2.163149836781451),
    (2.0, 0.5),
];

#[derive(Parser)]
#[command(
    name = "roughsew",
    version,
    about = "Dyadic sewing maps and rough-path lifts on [0, T]",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic Hölder path as CSV (`t,value`).
    GenPath(GenPathArgs),
    /// Generate a two-parameter germ as CSV (`s,t,value`).
    GenGerm(GenGermArgs),
    /// Sew a germ: write the integral, and a report with the continuity bound.
    Sew(SewArgs),
    /// Lift Hölder components to a rough path (`s,t,word,value`).
    Extend(ExtendArgs),
    /// Re-check invariants of a rough-path table or of the constants.
    Verify(VerifyArgs),
    /// Run a named reproducible experiment and write its tables.
    Demo(DemoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathKind {
    Power,
    Weierstrass,
    Midpoint,
    Poly,
}

#[derive(Args)]
struct GenPathArgs {
    #[arg(long, value_enum)]
    kind: PathKind,
    /// Hölder exponent (power, midpoint).
    #[arg(long)]
    alpha: Option<f64>,
    /// Weierstrass amplitude base, in (0, 1).
    #[arg(long)]
    a: Option<f64>,
    /// Weierstrass frequency base, above 1.
    #[arg(long)]
    b: Option<f64>,
    /// Comma-separated polynomial coefficients, lowest degree first.
    #[arg(long)]
    coeffs: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    level: u32,
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GermKind {
    Log,
    Power,
    Coboundary,
    Young,
}

#[derive(Args)]
struct GenGermArgs {
    #[arg(long, value_enum)]
    kind: GermKind,
    /// Exponent of the power germ.
    #[arg(long)]
    gamma: Option<f64>,
    /// Path CSV: the coboundary path, or the Young integrator x.
    #[arg(long)]
    path: Option<PathBuf>,
    /// Second path CSV: the Young integrand y (defaults to x).
    #[arg(long)]
    path_y: Option<PathBuf>,
    #[arg(long)]
    level: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SewArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    gamma: f64,
    /// Output grid level; defaults to the input level.  A finer input
    /// refines the Riemann sums when gamma exceeds 1.
    #[arg(long)]
    level: Option<u32>,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also write the remainder table.
    #[arg(long)]
    remainder: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct ExtendArgs {
    /// One path CSV per letter, in letter order.
    #[arg(long = "path", required = true)]
    paths: Vec<PathBuf>,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    level: u32,
    /// Alphabet size; defaults to the number of --path flags.
    #[arg(long)]
    d: Option<u8>,
    /// Extra Lyndon components, as WORD=FILE (word in dot notation).
    #[arg(long = "perturb")]
    perturbations: Vec<String>,
    /// Extend uniquely above floor(1/alpha) up to this word degree.
    #[arg(long)]
    target_level: Option<usize>,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Chen,
    Shuffle,
    Holder,
    SewingConstants,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Rough-path CSV (required by the chen/shuffle/holder suites).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    d: Option<u8>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemoName {
    LogOptimality,
    Young,
    LyonsVictoir,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, value_enum)]
    name: DemoName,
    #[arg(long)]
    outdir: PathBuf,
    #[arg(long)]
    tolerance: Option<f64>,
}

/// Failure modes mapped to exit codes: invariant violations exit 1, input
/// and usage problems exit 2.
enum Failure {
    Invariant(String),
    Input(String),
}

type CliResult<T> = Result<T, Failure>;

impl From<roughsew::Error> for Failure {
    fn from(e: roughsew::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::GenPath(args) => run_gen_path(args),
        Command::GenGerm(args) => run_gen_germ(args),
        Command::Sew(args) => run_sew(args),
        Command::Extend(args) => run_extend(args),
        Command::Verify(args) => run_verify(args),
        Command::Demo(args) => run_demo(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn effective_tolerance(flag: Option<f64>) -> CliResult<f64> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(TOLERANCE_ENV) {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Failure::Input(format!("cannot parse {TOLERANCE_ENV}={raw:?}"))),
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn open_reader(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn create_writer(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> CliResult<()> {
    let mut out = create_writer(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn run_gen_path(args: GenPathArgs) -> CliResult<()> {
    let grid = DyadicGrid::new(args.horizon, args.level)?;
    let spec = match args.kind {
        PathKind::Power => PathSpec::Power {
            alpha: args
                .alpha
                .ok_or_else(|| Failure::Input("--alpha is required for power paths".into()))?,
        },
        PathKind::Midpoint => PathSpec::MidpointDisplacement {
            alpha: args
                .alpha
                .ok_or_else(|| Failure::Input("--alpha is required for midpoint paths".into()))?,
            seed: args.seed,
        },
        PathKind::Weierstrass => PathSpec::Weierstrass {
            a: args
                .a
                .ok_or_else(|| Failure::Input("--a is required for Weierstrass paths".into()))?,
            b: args
                .b
                .ok_or_else(|| Failure::Input("--b is required for Weierstrass paths".into()))?,
        },
        PathKind::Poly => {
            let raw = args
                .coeffs
                .ok_or_else(|| Failure::Input("--coeffs is required for polynomials".into()))?;
            let coeffs = raw
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<f64>()
                        .map_err(|_| Failure::Input(format!("bad coefficient {c:?}")))
                })
                .collect::<CliResult<Vec<f64>>>()?;
            PathSpec::SmoothPoly { coeffs }
        }
    };
    let path = generate_path(&spec, &grid)?;
    path.write_csv(create_writer(&args.out)?)?;
    println!("wrote {} ({} points)", args.out.display(), grid.len());
    Ok(())
}

fn run_gen_germ(args: GenGermArgs) -> CliResult<()> {
    let read_path = |p: &Option<PathBuf>, what: &str| -> CliResult<Grid1Fn> {
        let p = p
            .as_ref()
            .ok_or_else(|| Failure::Input(format!("--path is required for {what} germs")))?;
        Ok(Grid1Fn::read_csv(open_reader(p)?)?)
    };
    let (spec, grid) = match args.kind {
        GermKind::Log => {
            let level = args
                .level
                .ok_or_else(|| Failure::Input("--level is required for log germs".into()))?;
            (GermSpec::LogGerm, DyadicGrid::new(args.horizon, level)?)
        }
        GermKind::Power => {
            let level = args
                .level
                .ok_or_else(|| Failure::Input("--level is required for power germs".into()))?;
            let exponent = args
                .gamma
                .ok_or_else(|| Failure::Input("--gamma is required for power germs".into()))?;
            (
                GermSpec::PowerGerm { exponent },
                DyadicGrid::new(args.horizon, level)?,
            )
        }
        GermKind::Coboundary => {
            let g = read_path(&args.path, "coboundary")?;
            let grid = g.grid().clone();
            (GermSpec::Coboundary(g), grid)
        }
        GermKind::Young => {
            let x = read_path(&args.path, "young")?;
            let y = match &args.path_y {
                Some(p) => Grid1Fn::read_csv(open_reader(p)?)?,
                None => x.clone(),
            };
            let grid = x.grid().clone();
            (GermSpec::YoungProduct { x, y }, grid)
        }
    };
    if let Some(level) = args.level {
        if level != grid.level() {
            return Err(Failure::Input(format!(
                "--level {level} does not match the path grid level {}",
                grid.level()
            )));
        }
    }
    let germ = roughsew::paths::generate_germ(&spec, &grid)?;
    germ.write_csv(create_writer(&args.out)?)?;
    println!("wrote {} (level {})", args.out.display(), grid.level());
    Ok(())
}

fn run_sew(args: SewArgs) -> CliResult<()> {
    let tolerance = effective_tolerance(args.tolerance)?;
    let a = Grid2Fn::read_csv(open_reader(&args.input)?)?;
    let out_level = args.level.unwrap_or_else(|| a.grid().level());
    let outcome = sew_at_level(&a, args.gamma, out_level)?;
    let restricted;
    let base: &Grid2Fn = if out_level == a.grid().level() {
        &a
    } else {
        restricted = a.restrict(out_level)?;
        &restricted
    };
    let report = measure(base, &outcome, args.gamma, TripleScan::Auto, tolerance)?;
    outcome.integral.write_csv(create_writer(&args.output)?)?;
    if let Some(path) = &args.remainder {
        outcome.remainder.write_csv(create_writer(path)?)?;
    }
    if let Some(path) = &args.report {
        write_json(path, &report)?;
    }
    println!(
        "sewed level {} at gamma {}: output norm {:.6e}, bound {:.6e}",
        out_level,
        args.gamma,
        report.output_c2_norm,
        report.bound_constant * report.input_c3_norm + report.tolerance,
    );
    if !report.bound_satisfied {
        return Err(Failure::Invariant(format!(
            "remainder norm {:.6e} exceeds ({:.6e} + 1) * {:.6e} + {:.1e}",
            report.output_c2_norm,
            report.bound_constant - 1.0,
            report.input_c3_norm,
            report.tolerance
        )));
    }
    Ok(())
}

fn parse_perturbation(raw: &str) -> CliResult<(Word, PathBuf)> {
    let (word, file) = raw
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("--perturb wants WORD=FILE, got {raw:?}")))?;
    let word = Word::from_str(word)?;
    Ok((word, PathBuf::from(file)))
}

fn run_extend(args: ExtendArgs) -> CliResult<()> {
    let tolerance = effective_tolerance(args.tolerance)?;
    let d = match args.d {
        Some(d) => {
            if d as usize != args.paths.len() {
                return Err(Failure::Input(format!(
                    "--d {d} does not match {} path files",
                    args.paths.len()
                )));
            }
            d
        }
        None => args.paths.len() as u8,
    };
    if d == 0 {
        return Err(Failure::Input("at least one --path is required".into()));
    }
    let alpha = args.alpha;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Failure::Input(format!("--alpha must lie in (0, 1), got {alpha}")));
    }
    let n_cap = (1.0 / alpha).floor() as usize;
    let truncation = args.target_level.unwrap_or(n_cap).max(n_cap);
    let algebra = Arc::new(ShuffleAlgebra::new(d, truncation)?);

    let mut grid: Option<DyadicGrid> = None;
    let mut read_component = |path: &Path| -> CliResult<Grid1Fn> {
        let mut f = Grid1Fn::read_csv(open_reader(path)?)?;
        if f.grid().level() > args.level {
            f = f.restrict(args.level)?;
        }
        if f.grid().level() != args.level {
            return Err(Failure::Input(format!(
                "{}: grid level {} is coarser than --level {}",
                path.display(),
                f.grid().level(),
                args.level
            )));
        }
        if let Some(g) = &grid {
            roughsew::dyadic_grid::require_same_grid(g, f.grid())?;
        } else {
            grid = Some(f.grid().clone());
        }
        Ok(f)
    };

    let mut components: Vec<(Word, Grid1Fn)> = Vec::new();
    for (letter, path) in args.paths.iter().enumerate() {
        let f = read_component(path)?;
        components.push((Word::letter(letter as u8 + 1), f));
    }
    for raw in &args.perturbations {
        let (word, file) = parse_perturbation(raw)?;
        let f = read_component(&file)?;
        components.push((word, f));
    }
    let grid = grid.expect("at least one component");
    let mut family = HolderFamily::zero(algebra, grid, alpha)?;
    for (word, f) in components {
        family = family.with_component(word, f)?;
    }

    let mut x = extend(&family)?;
    if let Some(target) = args.target_level {
        if target > x.stored_level() {
            x = extend_above_n(&x, target)?;
        }
    }
    x.write_csv(create_writer(&args.output)?)?;
    let report = x.holder_report(TripleScan::Auto)?;
    if let Some(path) = &args.report {
        write_json(path, &report)?;
    }
    println!(
        "lifted {} letters to level {} on grid level {}: scale {:.6e}",
        d,
        x.stored_level(),
        args.level,
        report.scale
    );
    let gate = tolerance * report.scale;
    if report.chen.max_abs > gate {
        return Err(Failure::Invariant(format!(
            "Chen defect {:.3e} at word {} around ({}, {}, {}) exceeds {:.3e}",
            report.chen.max_abs,
            report.chen.word,
            report.chen.s,
            report.chen.u,
            report.chen.t,
            gate
        )));
    }
    if report.shuffle.max_abs > gate {
        return Err(Failure::Invariant(format!(
            "multiplicativity defect {:.3e} at {} x {} exceeds {:.3e}",
            report.shuffle.max_abs, report.shuffle.left, report.shuffle.right, gate
        )));
    }
    Ok(())
}

fn load_rough_path(args: &VerifyArgs) -> CliResult<RoughPathGrid> {
    let input = args
        .input
        .as_ref()
        .ok_or_else(|| Failure::Input("this suite needs --input".into()))?;
    let alpha = args
        .alpha
        .ok_or_else(|| Failure::Input("this suite needs --alpha".into()))?;
    Ok(RoughPathGrid::read_csv(
        open_reader(input)?,
        alpha,
        args.d,
    )?)
}

fn chen_checks(x: &RoughPathGrid, tolerance: f64) -> CliResult<Vec<Check>> {
    let defect = x.max_chen_defect(TripleScan::Auto)?;
    let bound = tolerance * x.scale();
    Ok(vec![Check {
        id: "chen.max_defect".into(),
        measured: defect.max_abs,
        bound: Some(bound),
        passed: defect.max_abs <= bound,
        detail: Some(format!(
            "worst at word {} with (s, u, t) = ({}, {}, {})",
            defect.word, defect.s, defect.u, defect.t
        )),
    }])
}

fn shuffle_checks(x: &RoughPathGrid, tolerance: f64) -> CliResult<Vec<Check>> {
    let defect = x.max_shuffle_defect()?;
    let bound = tolerance * x.scale();
    Ok(vec![Check {
        id: "shuffle.max_defect".into(),
        measured: defect.max_abs,
        bound: Some(bound),
        passed: defect.max_abs <= bound,
        detail: Some(format!(
            "worst at {} x {} with (s, t) = ({}, {})",
            defect.left, defect.right, defect.s, defect.t
        )),
    }])
}

fn holder_checks(x: &RoughPathGrid) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for (w, table) in x.words() {
        let exponent = x.alpha() * w.degree() as f64;
        let norm = norm_c2(table, exponent);
        checks.push(Check {
            id: format!("holder.word_{w}"),
            measured: norm,
            bound: None,
            passed: norm.is_finite(),
            detail: Some(format!("exponent {exponent}")),
        });
    }
    Ok(checks)
}

fn constant_checks(tolerance: f64) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for (gamma, frozen) in CONSTANT_TABLE {
        let measured = constant_c(gamma, 1.0)?;
        checks.push(Check {
            id: format!("constants.gamma_{gamma}"),
            measured,
            bound: Some(frozen),
            passed: (measured - frozen).abs() <= 1e-12 * frozen,
            detail: None,
        });
    }
    for (gamma, _) in CONSTANT_TABLE {
        let grid = DyadicGrid::new(1.0, 6)?;
        let spec = GermSpec::PowerGerm { exponent: gamma };
        let view = germ_view(&spec, &grid)?;
        let (_, report) = sew_with_report(&view, gamma, TripleScan::Full, tolerance)?;
        checks.push(Check {
            id: format!("sewing_bound.gamma_{gamma}"),
            measured: report.output_c2_norm,
            bound: Some(report.bound_constant * report.input_c3_norm + tolerance),
            passed: report.bound_satisfied,
            detail: Some(format!("power germ at level {}", report.grid_level)),
        });
    }
    Ok(checks)
}

fn run_verify(args: VerifyArgs) -> CliResult<()> {
    let tolerance = effective_tolerance(args.tolerance)?;
    let suite_name = match args.suite {
        Suite::All => "all",
        Suite::Chen => "chen",
        Suite::Shuffle => "shuffle",
        Suite::Holder => "holder",
        Suite::SewingConstants => "sewing-constants",
    };
    let mut checks = Vec::new();
    match args.suite {
        Suite::Chen => checks.extend(chen_checks(&load_rough_path(&args)?, tolerance)?),
        Suite::Shuffle => checks.extend(shuffle_checks(&load_rough_path(&args)?, tolerance)?),
        Suite::Holder => checks.extend(holder_checks(&load_rough_path(&args)?)?),
        Suite::SewingConstants => checks.extend(constant_checks(tolerance)?),
        Suite::All => {
            let x = load_rough_path(&args)?;
            checks.extend(chen_checks(&x, tolerance)?);
            checks.extend(shuffle_checks(&x, tolerance)?);
            checks.extend(holder_checks(&x)?);
            checks.extend(constant_checks(tolerance)?);
        }
    }
    let report = VerifyReport::new(suite_name, tolerance, checks);
    for check in &report.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        match (check.bound, &check.detail) {
            (Some(bound), Some(detail)) => println!(
                "{tag} {}: {:.6e} (bound {:.6e}; {detail})",
                check.id, check.measured, bound
            ),
            (Some(bound), None) => println!(
                "{tag} {}: {:.6e} (bound {:.6e})",
                check.id, check.measured, bound
            ),
            (None, Some(detail)) => {
                println!("{tag} {}: {:.6e} ({detail})", check.id, check.measured)
            }
            (None, None) => println!("{tag} {}: {:.6e}", check.id, check.measured),
        }
    }
    if let Some(path) = &args.report {
        write_json(path, &report)?;
    }
    if report.passed {
        Ok(())
    } else {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id.as_str())
            .collect();
        Err(Failure::Invariant(format!(
            "{} of {} checks failed: {}",
            failing.len(),
            report.checks.len(),
            failing.join(", ")
        )))
    }
}

fn run_demo(args: DemoArgs) -> CliResult<()> {
    std::fs::create_dir_all(&args.outdir)?;
    let tolerance = effective_tolerance(args.tolerance)?;
    let summary = match args.name {
        DemoName::LogOptimality => demo_log_optimality(&args.outdir, tolerance)?,
        DemoName::Young => demo_young(&args.outdir, tolerance)?,
        DemoName::LyonsVictoir => demo_lyons_victoir(&args.outdir, tolerance)?,
    };
    let path = args.outdir.join(format!("{}_summary.json", summary.name));
    write_json(&path, &summary)?;
    for metric in &summary.metrics {
        let tag = if metric.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {:.6e}", metric.id, metric.measured);
    }
    println!("summary: {}", path.display());
    if summary.passed {
        Ok(())
    } else {
        Err(Failure::Invariant(format!(
            "demo {} has failing metrics",
            summary.name
        )))
    }
}

/// Plain vs log-weighted remainder norms of the log germ across levels: the
/// plain norm keeps growing (two log-2 units per level) while the weighted
/// norm stays below its continuity bound.
fn demo_log_optimality(outdir: &Path, tolerance: f64) -> CliResult<DemoSummary> {
    let c1 = constant_c(1.0, 1.0)?;
    let bound = c1 * std::f64::consts::LN_2;
    let table_path = outdir.join("log_optimality.csv");
    let mut out = create_writer(&table_path)?;
    writeln!(out, "level,plain_norm,log_weighted_norm,weighted_bound")?;
    let mut plain = Vec::new();
    let mut weighted_max: f64 = 0.0;
    for level in 4..=12u32 {
        let grid = DyadicGrid::new(1.0, level)?;
        let spec = GermSpec::LogGerm;
        let germ = germ_view(&spec, &grid)?;
        let view = sew_low_view(&germ);
        let p = norm_c2(&view, 1.0);
        let w = log_weighted_norm(&view);
        writeln!(out, "{level},{p},{w},{bound}")?;
        plain.push(p);
        weighted_max = weighted_max.max(w);
    }
    out.flush()?;
    let monotone = plain.windows(2).all(|w| w[1] > w[0]);
    let increment = plain[plain.len() - 1] - plain[plain.len() - 2];
    let expected = 2.0 * std::f64::consts::LN_2;
    let metrics = vec![
        Check {
            id: "log_weighted_max".into(),
            measured: weighted_max,
            bound: Some(bound),
            passed: weighted_max <= bound,
            detail: None,
        },
        Check {
            id: "plain_norm_monotone".into(),
            measured: if monotone { 1.0 } else { 0.0 },
            bound: None,
            passed: monotone,
            detail: Some("plain norm strictly increases with the level".into()),
        },
        Check {
            id: "plain_norm_increment".into(),
            measured: increment,
            bound: Some(expected),
            passed: (increment - expected).abs() <= 0.2 * expected,
            detail: Some("per-level growth vs 2 log 2".into()),
        },
    ];
    Ok(DemoSummary {
        name: "log_optimality".into(),
        tolerance,
        passed: metrics.iter().all(|m| m.passed),
        metrics,
        artifacts: vec![table_path.display().to_string()],
    })
}

/// Sewn Young integral of two 0.6-Hölder power paths against a four-level
/// finer Riemann oracle.
fn demo_young(outdir: &Path, tolerance: f64) -> CliResult<DemoSummary> {
    let level = 8u32;
    let fine_level = level + 4;
    let fine_grid = DyadicGrid::new(1.0, fine_level)?;
    let x_fine = generate_path(&PathSpec::Power { alpha: 0.6 }, &fine_grid)?;
    let spec_fine = GermSpec::YoungProduct {
        x: x_fine.clone(),
        y: x_fine,
    };
    let view_fine = germ_view(&spec_fine, &fine_grid)?;
    let (oracle, _) = sew_high_refined(&view_fine, 1.2, level)?;

    let grid = DyadicGrid::new(1.0, level)?;
    let x = generate_path(&PathSpec::Power { alpha: 0.6 }, &grid)?;
    let spec = GermSpec::YoungProduct { x: x.clone(), y: x };
    let view = germ_view(&spec, &grid)?;
    let sewn = roughsew::sewing::sew(&view, 1.2)?;

    let table_path = outdir.join("young.csv");
    let mut out = create_writer(&table_path)?;
    writeln!(out, "t,sewn,oracle,abs_error")?;
    let mut max_error: f64 = 0.0;
    for k in 0..grid.len() {
        let s = sewn.integral.value(k);
        let o = oracle.integral.value(k);
        let err = (s - o).abs();
        max_error = max_error.max(err);
        writeln!(out, "{},{s},{o},{err}", grid.point(k))?;
    }
    out.flush()?;
    let bound = 5.0 * f64::exp2(-0.2 * level as f64);
    let metrics = vec![Check {
        id: "young_max_error".into(),
        measured: max_error,
        bound: Some(bound),
        passed: max_error <= bound,
        detail: Some(format!("level {level} vs oracle at level {fine_level}")),
    }];
    Ok(DemoSummary {
        name: "young".into(),
        tolerance,
        passed: metrics.iter().all(|m| m.passed),
        metrics,
        artifacts: vec![table_path.display().to_string()],
    })
}

/// Seed-7 two-letter lift at level 8 with its full analytic report.
fn demo_lyons_victoir(outdir: &Path, tolerance: f64) -> CliResult<DemoSummary> {
    let grid = DyadicGrid::new(1.0, 8)?;
    let algebra = Arc::new(ShuffleAlgebra::new(2, 2)?);
    let f1 = generate_path(
        &PathSpec::MidpointDisplacement {
            alpha: 0.45,
            seed: 7,
        },
        &grid,
    )?;
    let f2 = generate_path(
        &PathSpec::MidpointDisplacement {
            alpha: 0.45,
            seed: 8,
        },
        &grid,
    )?;
    let family = HolderFamily::zero(algebra, grid, 0.45)?
        .with_component(Word::letter(1), f1)?
        .with_component(Word::letter(2), f2)?;
    let x = extend(&family)?;
    let report = x.holder_report(TripleScan::Auto)?;

    let rp_path = outdir.join("lyons_victoir_rp.csv");
    x.write_csv(create_writer(&rp_path)?)?;
    let report_path = outdir.join("lyons_victoir_report.json");
    write_json(&report_path, &report)?;

    let gate = tolerance * report.scale;
    let metrics = vec![
        Check {
            id: "chen_defect_max".into(),
            measured: report.chen.max_abs,
            bound: Some(gate),
            passed: report.chen.max_abs <= gate,
            detail: None,
        },
        Check {
            id: "shuffle_defect_max".into(),
            measured: report.shuffle.max_abs,
            bound: Some(gate),
            passed: report.shuffle.max_abs <= gate,
            detail: None,
        },
    ];
    Ok(DemoSummary {
        name: "lyons_victoir".into(),
        tolerance,
        passed: metrics.iter().all(|m| m.passed),
        metrics,
        artifacts: vec![
            rp_path.display().to_string(),
            report_path.display().to_string(),
        ],
    })
}
