//! `phasealign` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 bound violation.

mod config;
mod plot;

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use phasealign::bounds::{
    verify_alpha, verify_edge_probability, verify_lemma1, verify_lemma2, verify_lemma3, verify_lemma4,
    BoundCheckResult, LEMMA3_R_GRID,
};
use phasealign::experiments::{
    aggregates_to_csv, bound_checks_to_csv, rows_to_csv, run_sweep, ColoringOrder, Envelope, ExperimentConfig,
    ExperimentResult, Scheme, DEFAULT_K_LIST, DEFAULT_SSA_RESTARTS, DEFAULT_THRESHOLD, DEFAULT_TRIALS,
    PAPER_K_LIST, PAPER_TRIALS,
};
use phasealign::ssa::{optimize_ssa, AscentOptions, SearchMode};
use phasealign::{sample_channel, RateMetric};

use config::{pick, FileConfig, Preset};

/// A failed command: message plus process exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

const EXIT_VIOLATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "phasealign", version, about = "Phase-alignment interference channel simulator")]
struct Cli {
    /// TOML file with flag values; command-line flags override it
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Bundle of defaults: `default` (K = 2^6..2^13, 100 trials, c = 0.4) or `paper` (K = 2^14, 2^15, 10 trials, c = π)
    #[arg(long, global = true, value_enum)]
    preset: Option<Preset>,

    /// Worker threads [default: all cores]
    #[arg(long, global = true, env = "PHASEALIGN_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every scheme over trials at a single K and write per-trial rows
    Simulate(SimulateArgs),
    /// Run a sweep over a K grid and write rows plus per-(scheme, K) aggregates
    Scaling(ScalingArgs),
    /// Check an analytic bound by Monte Carlo
    Verify(VerifyArgs),
    /// Optimize single-symbol phase alignment on one channel and write JSON
    Ssa(SsaArgs),
    /// Draw an aggregate CSV as an SVG line chart
    Plot(PlotArgs),
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: phasealign::Error| e.to_string())
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Trials per K [default: 100; --preset paper: 10]
    #[arg(long)]
    trials: Option<usize>,

    /// Master seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,

    /// Interference threshold constant c in c/sqrt(ln K) [default: 0.4; --preset paper: π]
    #[arg(long)]
    threshold_c: Option<f64>,

    /// Rate metric for phase alignment [default: sinr]
    #[arg(long, value_enum)]
    metric: Option<MetricArg>,

    /// Restarts per SSA ascent run [default: 32]
    #[arg(long)]
    ssa_restarts: Option<usize>,

    /// Greedy coloring node order [default: index]
    #[arg(long, value_enum)]
    coloring_order: Option<OrderArg>,

    /// Fill the runtime_ms column (makes output nondeterministic) [default: off]
    #[arg(long)]
    record_timing: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Number of users (required)
    #[arg(long)]
    k: Option<usize>,

    /// Scheme to run; repeat for several [default: phase-align, tdma-peak, tdma-bursty, tin]
    #[arg(long, value_parser = parse_scheme)]
    scheme: Vec<Scheme>,

    #[command(flatten)]
    sweep: SweepArgs,

    /// Output CSV [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScalingArgs {
    /// Strictly increasing comma-separated user counts [default: 64,128,...,8192; --preset paper: 16384,32768]
    #[arg(long, value_delimiter = ',')]
    k_list: Vec<usize>,

    /// Comma-separated schemes [default: phase-align,tdma-peak,tdma-bursty,tin]
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme)]
    schemes: Vec<Scheme>,

    #[command(flatten)]
    sweep: SweepArgs,

    /// Output CSV of per-trial rows [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output CSV of aggregates [default: not written]
    #[arg(long)]
    aggregate_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Sinr,
    Bpsk,
}

impl From<MetricArg> for RateMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Sinr => RateMetric::Sinr,
            MetricArg::Bpsk => RateMetric::Bpsk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Index,
    Random,
}

impl From<OrderArg> for ColoringOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Index => ColoringOrder::Index,
            OrderArg::Random => ColoringOrder::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaArg {
    /// Greedy color count
    #[value(name = "1")]
    One,
    /// Binary powers lose at most a factor 2
    #[value(name = "2")]
    Two,
    /// Sum-rate tail
    #[value(name = "3")]
    Three,
    /// Sum-rate continuity in the directions
    #[value(name = "4")]
    Four,
    /// Edge probability of the interference graph
    EdgeProb,
    /// Independence number of G(K, p)
    Alpha,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Which bound to check (required)
    #[arg(long, value_enum)]
    lemma: Option<LemmaArg>,

    /// Users [defaults: edge-prob 4096, 1: 16384, alpha: 50, 2: largest K 10]
    #[arg(long)]
    k: Option<usize>,

    /// Subset size for lemmas 3 and 4 [default: 8]
    #[arg(long)]
    s: Option<usize>,

    /// Comma-separated tail thresholds in nats for lemma 3 [default: 8,16,32,64]
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,

    /// Edge probability for the alpha check [default: 0.5]
    #[arg(long)]
    p: Option<f64>,

    /// Threshold constant [defaults: edge-prob 0.5, 1: π]
    #[arg(long)]
    threshold_c: Option<f64>,

    /// Trials [defaults: edge-prob 100, 1: 10, alpha: 100, 2: 500, 3: 100000, 4: 10000]
    #[arg(long)]
    trials: Option<usize>,

    /// Base points for the lemma 4 gradient checks [default: 1000]
    #[arg(long)]
    gradient_points: Option<usize>,

    /// Master seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,

    /// Output CSV of check results [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Exhaustive over subsets and gridded directions (K <= 3)
    Grid,
    /// Multi-start coordinate ascent (K <= 64)
    Ascent,
}

#[derive(Args, Debug)]
struct SsaArgs {
    /// Number of users (required)
    #[arg(long)]
    k: Option<usize>,

    /// Channel seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,

    /// Optimizer [default: ascent]
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,

    /// Ascent restarts [default: 32]
    #[arg(long)]
    restarts: Option<usize>,

    /// Output JSON [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvelopeArg {
    #[value(name = "lnK")]
    LnK,
    #[value(name = "lnK-over-lnlnK")]
    LnKOverLnLnK,
    Const,
    None,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Aggregate CSV to draw (required)
    #[arg(long = "in")]
    input: Option<PathBuf>,

    /// Output SVG [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,

    /// Reference curve [default: none]
    #[arg(long, value_enum)]
    envelope: Option<EnvelopeArg>,
}

fn parse_enum<T: ValueEnum>(flag: &str, value: &str) -> Result<T, Failure> {
    T::from_str(value, false).map_err(|_| Failure::usage(format!("{flag}: invalid value `{value}`")))
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::write(p, contents).map_err(|e| Failure::io(format!("cannot write {}: {e}", p.display())))
        }
        _ => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| Failure::io(format!("cannot write to stdout: {e}"))),
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("missing required flag {flag}")))
}

fn positive(value: usize, flag: &str) -> Result<usize, Failure> {
    if value == 0 {
        Err(Failure::usage(format!("{flag} must be at least 1")))
    } else {
        Ok(value)
    }
}

fn core_usage(e: phasealign::Error) -> Failure {
    Failure::usage(e.to_string())
}

fn parse_schemes(flag: &str, names: &[String]) -> Result<Vec<Scheme>, Failure> {
    names
        .iter()
        .map(|s| s.parse().map_err(|e: phasealign::Error| Failure::usage(format!("{flag}: {e}"))))
        .collect()
}

/// Fields shared by `simulate` and `scaling`, merged from flags, file and preset.
fn sweep_config(
    args: &SweepArgs,
    file: &FileConfig,
    preset: Option<Preset>,
    k_list: Vec<usize>,
    schemes: Vec<Scheme>,
) -> Result<ExperimentConfig, Failure> {
    let paper = preset == Some(Preset::Paper);
    let trials = pick(args.trials, file.trials, paper.then_some(PAPER_TRIALS)).unwrap_or(DEFAULT_TRIALS);
    let threshold = pick(args.threshold_c, file.threshold_c, paper.then_some(PI)).unwrap_or(DEFAULT_THRESHOLD);
    let metric = match (args.metric, &file.metric) {
        (Some(m), _) => m.into(),
        (None, Some(m)) => parse_enum::<MetricArg>("--metric", m)?.into(),
        (None, None) => RateMetric::Sinr,
    };
    let coloring_order = match (args.coloring_order, &file.coloring_order) {
        (Some(o), _) => o.into(),
        (None, Some(o)) => parse_enum::<OrderArg>("--coloring-order", o)?.into(),
        (None, None) => ColoringOrder::Index,
    };
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Failure::usage(format!("--threshold-c must be positive, got {threshold}")));
    }
    let config = ExperimentConfig {
        k_list,
        trials: positive(trials, "--trials")?,
        master_seed: pick(args.seed, file.seed, None).unwrap_or(0),
        threshold_constant: threshold,
        schemes,
        metric,
        ssa_restarts: positive(
            pick(args.ssa_restarts, file.ssa_restarts, None).unwrap_or(DEFAULT_SSA_RESTARTS),
            "--ssa-restarts",
        )?,
        coloring_order,
        record_timing: args.record_timing || file.record_timing.unwrap_or(false),
        ..ExperimentConfig::default()
    };
    config.validate().map_err(core_usage)?;
    Ok(config)
}

fn default_schemes(preset: Option<Preset>) -> Vec<Scheme> {
    if preset == Some(Preset::Paper) {
        ExperimentConfig::paper_preset().schemes
    } else {
        ExperimentConfig::default().schemes
    }
}

fn report_flagged(result: &ExperimentResult) {
    for f in &result.flagged {
        eprintln!("warning: skipped {} at K={} trial {}: {}", f.scheme, f.k, f.trial, f.reason);
    }
}

fn cmd_simulate(args: &SimulateArgs, file: &FileConfig, preset: Option<Preset>) -> Result<u8, Failure> {
    let k = positive(require(pick(args.k, file.k, None), "--k")?, "--k")?;
    let schemes = if !args.scheme.is_empty() {
        args.scheme.clone()
    } else if let Some(names) = &file.scheme {
        parse_schemes("--scheme", names)?
    } else {
        default_schemes(preset)
    };
    let config = sweep_config(&args.sweep, file, preset, vec![k], schemes)?;
    let result = run_sweep(&config).map_err(core_usage)?;
    report_flagged(&result);
    write_output(args.out.as_deref().or(file.out.as_deref()), &rows_to_csv(&result.rows))?;
    Ok(0)
}

fn cmd_scaling(args: &ScalingArgs, file: &FileConfig, preset: Option<Preset>) -> Result<u8, Failure> {
    let k_list = if !args.k_list.is_empty() {
        args.k_list.clone()
    } else if let Some(list) = &file.k_list {
        list.clone()
    } else if preset == Some(Preset::Paper) {
        PAPER_K_LIST.to_vec()
    } else {
        DEFAULT_K_LIST.to_vec()
    };
    if k_list.contains(&0) {
        return Err(Failure::usage("--k-list entries must be at least 1"));
    }
    if k_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Failure::usage("--k-list must be strictly increasing"));
    }
    let schemes = if !args.schemes.is_empty() {
        args.schemes.clone()
    } else if let Some(names) = &file.schemes {
        parse_schemes("--schemes", names)?
    } else {
        default_schemes(preset)
    };
    let config = sweep_config(&args.sweep, file, preset, k_list, schemes)?;
    let result = run_sweep(&config).map_err(core_usage)?;
    report_flagged(&result);
    write_output(args.out.as_deref().or(file.out.as_deref()), &rows_to_csv(&result.rows))?;
    if let Some(path) = args.aggregate_out.as_deref().or(file.aggregate_out.as_deref()) {
        write_output(Some(path), &aggregates_to_csv(&result.aggregates))?;
    }
    Ok(0)
}

fn describe(r: &BoundCheckResult) -> String {
    let r_part = r.r.map(|r| format!(" r={r}")).unwrap_or_default();
    format!(
        "{} k={} s={}{} trials={} empirical={} analytic={} std_error={} {}",
        r.bound_name, r.k, r.s, r_part, r.trials, r.empirical, r.analytic, r.std_error, r.note
    )
}

fn cmd_verify(args: &VerifyArgs, file: &FileConfig) -> Result<u8, Failure> {
    let lemma = match (args.lemma, &file.lemma) {
        (Some(l), _) => l,
        (None, Some(l)) => parse_enum::<LemmaArg>("--lemma", l)?,
        (None, None) => return Err(Failure::usage("missing required flag --lemma")),
    };
    let seed = pick(args.seed, file.seed, None).unwrap_or(0);
    let k = pick(args.k, file.k, None);
    let s = pick(args.s, file.s, None).unwrap_or(8);
    let trials = pick(args.trials, file.trials, None);
    let c = pick(args.threshold_c, file.threshold_c, None);
    let trials_or = |d: usize| positive(trials.unwrap_or(d), "--trials");

    let results: Vec<BoundCheckResult> = match lemma {
        LemmaArg::EdgeProb => vec![verify_edge_probability(
            positive(k.unwrap_or(4096), "--k")?,
            c.unwrap_or(0.5),
            trials_or(100)?,
            seed,
        )
        .map_err(core_usage)?],
        LemmaArg::One => vec![verify_lemma1(positive(k.unwrap_or(1 << 14), "--k")?, c.unwrap_or(PI), trials_or(10)?, seed)
            .map_err(core_usage)?],
        LemmaArg::Alpha => vec![verify_alpha(
            positive(k.unwrap_or(50), "--k")?,
            pick(args.p, file.p, None).unwrap_or(0.5),
            trials_or(100)?,
            seed,
        )
        .map_err(core_usage)?],
        LemmaArg::Two => vec![verify_lemma2(trials_or(500)?, k.unwrap_or(10), seed).map_err(core_usage)?],
        LemmaArg::Three => {
            let r_grid = if !args.r.is_empty() {
                args.r.clone()
            } else {
                file.r.clone().unwrap_or_else(|| LEMMA3_R_GRID.to_vec())
            };
            if r_grid.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
                return Err(Failure::usage("--r values must be finite and nonnegative"));
            }
            verify_lemma3(positive(s, "--s")?, &r_grid, trials_or(100_000)?, seed).map_err(core_usage)?
        }
        LemmaArg::Four => verify_lemma4(
            positive(s, "--s")?,
            trials_or(10_000)?,
            pick(args.gradient_points, file.gradient_points, None).unwrap_or(1000),
            seed,
        )
        .map_err(core_usage)?,
    };

    write_output(args.out.as_deref().or(file.out.as_deref()), &bound_checks_to_csv(&results))?;
    let mut code = 0;
    for r in &results {
        if !r.applicable {
            eprintln!("warning: {}", describe(r));
        } else if r.passed {
            eprintln!("passed: {}", describe(r));
        } else {
            eprintln!("VIOLATION: {}", describe(r));
            code = EXIT_VIOLATION;
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct SsaOutput {
    k: usize,
    seed: u64,
    mode: SearchMode,
    /// One-based user indices of the scheduled subset.
    subset: Vec<usize>,
    powers: Vec<f64>,
    alpha: Vec<f64>,
    gamma: Vec<f64>,
    value: f64,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    restart: Option<usize>,
}

fn cmd_ssa(args: &SsaArgs, file: &FileConfig) -> Result<u8, Failure> {
    let k = positive(require(pick(args.k, file.k, None), "--k")?, "--k")?;
    let seed = pick(args.seed, file.seed, None).unwrap_or(0);
    let mode = match (args.mode, &file.mode) {
        (Some(m), _) => m,
        (None, Some(m)) => parse_enum::<ModeArg>("--mode", m)?,
        (None, None) => ModeArg::Ascent,
    };
    let restarts = positive(
        pick(args.restarts, file.restarts, None).unwrap_or(DEFAULT_SSA_RESTARTS),
        "--restarts",
    )?;
    let search = match mode {
        ModeArg::Grid => SearchMode::GridExhaustive,
        ModeArg::Ascent => SearchMode::CoordinateAscent,
    };
    let ch = sample_channel(k, seed).map_err(core_usage)?;
    let opt = optimize_ssa(&ch, search, &AscentOptions::new(restarts, seed))
        .map_err(|e| Failure::usage(format!("--k {k} with --mode {}: {e}", mode_name(mode))))?;
    let out = SsaOutput {
        k,
        seed,
        mode: opt.mode,
        subset: opt.solution.subset.iter().map(|u| u + 1).collect(),
        powers: opt.solution.point.powers.clone(),
        alpha: opt.solution.point.tx_dirs.clone(),
        gamma: opt.solution.point.rx_dirs.clone(),
        value: opt.solution.value,
        iterations: opt.iterations,
        restart: opt.restart,
    };
    let mut json = serde_json::to_string_pretty(&out).expect("plain data serializes");
    json.push('\n');
    write_output(args.out.as_deref().or(file.out.as_deref()), &json)?;
    Ok(0)
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Grid => "grid",
        ModeArg::Ascent => "ascent",
    }
}

fn cmd_plot(args: &PlotArgs, file: &FileConfig) -> Result<u8, Failure> {
    let input = require(args.input.clone().or_else(|| file.input.clone()), "--in")?;
    let envelope = match (args.envelope, &file.envelope) {
        (Some(e), _) => e,
        (None, Some(e)) => parse_enum::<EnvelopeArg>("--envelope", e)?,
        (None, None) => EnvelopeArg::None,
    };
    let text = std::fs::read_to_string(&input).map_err(|e| Failure::io(format!("cannot read {}: {e}", input.display())))?;
    let points = plot::parse_aggregates(&text)
        .map_err(|e| Failure::usage(format!("malformed aggregate CSV {}: {e}", input.display())))?;
    let envelope = match envelope {
        EnvelopeArg::LnK => Some(Envelope::LnK),
        EnvelopeArg::LnKOverLnLnK => Some(Envelope::LnKOverLnLnK),
        EnvelopeArg::Const => Some(Envelope::Const),
        EnvelopeArg::None => None,
    };
    write_output(args.out.as_deref().or(file.out.as_deref()), &plot::render_svg(&points, envelope))?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let preset = match (cli.preset, &file.preset) {
        (Some(p), _) => Some(p),
        (None, Some(p)) => Some(p.parse()?),
        (None, None) => None,
    };
    if let Some(n) = pick(cli.threads, file.threads, None) {
        positive(n, "--threads")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("--threads: {e}")))?;
    }
    match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, &file, preset),
        Command::Scaling(a) => cmd_scaling(a, &file, preset),
        Command::Verify(a) => cmd_verify(a, &file),
        Command::Ssa(a) => cmd_ssa(a, &file),
        Command::Plot(a) => cmd_plot(a, &file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; real errors exit 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
