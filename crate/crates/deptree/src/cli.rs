//! Command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or unparseable input / output error,
//! 2 no sentence accepted, 3 invariant violation, 64 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use deptree_core::baseline::{monte_carlo_shard, MonteCarloSums};
use deptree_core::oracles::{arrange_linear, arrange_star, LinearMode, StarMode};
use deptree_core::verify::{check_tree, BoundSuite, SweepConfig, SweepReport};
use deptree_core::{
    analytic_baseline, bounds_report, crossing_count, degree_stats, length_stats, ExhaustiveOracle,
    MonteCarloReport, Tree,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::conllu::{parse_conllu, SkipEntry, SkipReason};
use crate::edgelist::{parse_edgelist, write_edgelist, EdgeList};
use crate::format::{decimal, exact, write_summary, Format, ReportWriter};
use crate::report::{analyze_sentence, analyze_tree, LengthAggregator, SentenceReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Largest tree size the exhaustive oracles accept.
pub const ORACLE_MAX_N: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "deptree",
    version,
    about = "Hubiness, dependency length and crossings of dependency trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

/// Options shared by every subcommand. Seeds and caps are echoed in output
/// headers.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Random seed.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Monte Carlo trials.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub trials: u64,
    /// Largest tree size for `verify`.
    #[arg(long = "max-n", global = true, default_value_t = 6)]
    pub max_n: usize,
    /// Smallest sentence length for `analyze`.
    #[arg(long = "min-n", global = true, default_value_t = 2)]
    pub min_n: usize,
    /// Worker threads (0 = all cores). Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Re-check every bound relation on every row and fail on violation.
    #[arg(long, global = true)]
    pub validate: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-sentence statistics and bounds for a treebank or edge list.
    Analyze {
        input: PathBuf,
        /// Input format; guessed from the extension by default.
        #[arg(long, value_enum)]
        input_format: Option<InputFormat>,
        /// Per-length summary destination (default: OUTPUT.by_n, or stderr).
        #[arg(long)]
        aggregate: Option<PathBuf>,
        /// Skip log destination as JSON lines (default: stderr).
        #[arg(long)]
        skip_log: Option<PathBuf>,
    },
    /// Every bound for one edge-list tree, as JSON.
    Bounds { input: PathBuf },
    /// Monte Carlo estimate of the random-arrangement baseline.
    Simulate { input: PathBuf },
    /// Exhaustive certification of the bounds on small trees.
    Verify {
        /// Sizes up to this one use every labeled tree; larger ones are sampled.
        #[arg(long, default_value_t = 6)]
        exhaustive_max_n: usize,
        /// Random trees per sampled size.
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// Emit a star or path together with an extremal arrangement.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Conllu,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Star,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[value(name = "hub_end", alias = "hub-end")]
    HubEnd,
    #[value(name = "hub_center", alias = "hub-center")]
    HubCenter,
    Identity,
    Zigzag,
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    run_cli(&cli, &BoundSuite::default(), stdout, stderr)
}

/// Runs a parsed command line with the given bound formulas.
pub fn run_cli(
    cli: &Cli,
    suite: &BoundSuite,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let config = &cli.config;
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker pool: {e}");
            return EXIT_IO;
        }
    };
    let result = match &cli.command {
        Command::Analyze {
            input,
            input_format,
            aggregate,
            skip_log,
        } => cmd_analyze(
            config,
            &pool,
            input,
            *input_format,
            aggregate.as_deref(),
            skip_log.as_deref(),
            stdout,
            stderr,
        ),
        Command::Bounds { input } => cmd_bounds(config, input, stdout, stderr),
        Command::Simulate { input } => cmd_simulate(config, &pool, input, stdout),
        Command::Verify {
            exhaustive_max_n,
            samples,
        } => cmd_verify(config, &pool, *exhaustive_max_n, *samples, suite, stdout),
        Command::Construct { family, n, mode } => cmd_construct(config, *family, *n, *mode, stdout),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn io(context: impl std::fmt::Display, e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("{context}: {e}"),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::io("write failed", e)
    }
}

type CmdResult = Result<i32, Failure>;

/// Primary output: the `--output` file or stdout.
fn with_output(
    config: &RunConfig,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> CmdResult,
) -> CmdResult {
    match &config.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::io(path.display(), e))?;
            let mut file = io::BufWriter::new(file);
            let code = body(&mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => body(stdout),
    }
}

fn read_edgelist(path: &Path) -> Result<EdgeList, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path.display(), e))?;
    parse_edgelist(&text).map_err(|e| Failure::io(path.display(), e))
}

fn detect_format(path: &Path) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("conllu" | "conll") => InputFormat::Conllu,
        _ => InputFormat::Edgelist,
    }
}

enum Source {
    Edges(EdgeList),
    Conllu(File),
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    input: &Path,
    input_format: Option<InputFormat>,
    aggregate: Option<&Path>,
    skip_log: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    if config.min_n < 2 {
        return Err(Failure::usage("--min-n must be at least 2"));
    }
    let mut source = Some(match input_format.unwrap_or_else(|| detect_format(input)) {
        InputFormat::Edgelist => Source::Edges(read_edgelist(input)?),
        InputFormat::Conllu => {
            Source::Conllu(File::open(input).map_err(|e| Failure::io(input.display(), e))?)
        }
    });
    let meta = format!("min_n={} validate={}", config.min_n, config.validate);
    let mut aggregator = LengthAggregator::new();
    let mut skips: Vec<SkipEntry> = Vec::new();
    let mut accepted = 0u64;
    let mut violations = Vec::new();

    let code = with_output(config, stdout, |out| {
        let mut writer = ReportWriter::new(out, config.format, &meta)?;
        let mut emit = |report: SentenceReport| -> io::Result<()> {
            if config.validate {
                for v in report.violations() {
                    violations.push(format!("{}: {} ({})", report.sent_id, v.relation, v.detail));
                }
            }
            aggregator.add(&report);
            accepted += 1;
            writer.write(&report)
        };
        match source.take().expect("read once") {
            Source::Edges(parsed) => {
                if parsed.tree.n() >= config.min_n {
                    let id = input.file_stem().and_then(|s| s.to_str()).unwrap_or("tree");
                    let report = analyze_tree(id, &parsed.tree, &parsed.arrangement_or_identity())
                        .map_err(|e| Failure::io(input.display(), e))?;
                    emit(report)?;
                }
            }
            Source::Conllu(file) => {
                let mut records = parse_conllu(BufReader::new(file));
                // bounded chunks keep memory flat while workers share the load
                loop {
                    let mut chunk = Vec::with_capacity(1024);
                    for item in records.by_ref().take(1024) {
                        match item.map_err(|e| Failure::io(input.display(), e))? {
                            Ok(record) => chunk.push(record),
                            Err(skip) => skips.push(skip),
                        }
                    }
                    if chunk.is_empty() {
                        break;
                    }
                    let reports: Vec<SentenceReport> = pool.install(|| {
                        chunk
                            .par_iter()
                            .filter(|r| r.n() >= config.min_n)
                            .map(|r| analyze_sentence(r).expect("n >= 2"))
                            .collect()
                    });
                    for report in reports {
                        emit(report)?;
                    }
                }
            }
        }
        writer.finish()?;
        Ok(EXIT_OK)
    })?;

    write_skips(skip_log, &skips, stderr)?;
    let rows = aggregator.rows();
    let aggregate_path = aggregate.map(Path::to_path_buf).or_else(|| {
        config.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".by_n");
            PathBuf::from(s)
        })
    });
    match aggregate_path {
        Some(path) => {
            let file = File::create(&path).map_err(|e| Failure::io(path.display(), e))?;
            write_summary(io::BufWriter::new(file), config.format, &rows)?;
        }
        None => write_summary(&mut *stderr, config.format, &rows)?,
    }

    if !violations.is_empty() {
        for v in &violations {
            writeln!(stderr, "violation: {v}")?;
        }
        return Ok(EXIT_INVARIANT);
    }
    if accepted == 0 {
        writeln!(stderr, "error: no sentence accepted")?;
        return Ok(EXIT_EMPTY);
    }
    Ok(code)
}

fn write_skips(
    path: Option<&Path>,
    skips: &[SkipEntry],
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let mut buf = Vec::new();
    for skip in skips {
        serde_json::to_writer(&mut buf, skip).map_err(|e| Failure::io("skip log", e))?;
        buf.push(b'\n');
    }
    match path {
        Some(path) => std::fs::write(path, &buf).map_err(|e| Failure::io(path.display(), e)),
        None => {
            if !skips.is_empty() {
                let summary: Vec<String> = SkipReason::ALL
                    .iter()
                    .map(|r| format!("{}={}", r, skips.iter().filter(|s| s.reason == *r).count()))
                    .collect();
                writeln!(stderr, "# skipped {} ({})", skips.len(), summary.join(" "))?;
            }
            stderr.write_all(&buf)?;
            Ok(())
        }
    }
}

/// JSON form of a bounds report. Rationals are exact `p/q` strings.
#[derive(Debug, Serialize)]
pub struct BoundsJson {
    pub n: usize,
    pub mean_k2: String,
    pub var_k: String,
    pub mean_d: String,
    pub mean_d2: String,
    #[serde(rename = "C")]
    pub crossings: u64,
    #[serde(rename = "M")]
    pub uncrossable: usize,
    pub dmin_eq10: String,
    pub dmin_eq11: String,
    pub dmax_eq7: String,
    pub cmax_c1: String,
    pub cmax_eq12: String,
    pub cmax_eq13: String,
    pub cpairs_eq14: String,
    pub crossings_impossible: bool,
    #[serde(rename = "E_d_baseline")]
    pub expected_d: String,
    #[serde(rename = "V_d_baseline")]
    pub variance_d: String,
}

fn cmd_bounds(
    config: &RunConfig,
    input: &Path,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CmdResult {
    let parsed = read_edgelist(input)?;
    let arr = parsed.arrangement_or_identity();
    let tree = &parsed.tree;
    let report = bounds_report(tree, &arr).map_err(|e| Failure::io(input.display(), e))?;
    let degrees = degree_stats(tree);
    let lengths = length_stats(tree, &arr).expect("checked by bounds_report");
    let crossings = crossing_count(tree, &arr).expect("checked by bounds_report");
    let json = BoundsJson {
        n: tree.n(),
        mean_k2: exact(degrees.mean_k2),
        var_k: exact(degrees.var_k),
        mean_d: exact(lengths.mean_d.expect("n >= 2")),
        mean_d2: exact(lengths.mean_d2.expect("n >= 2")),
        crossings: crossings.crossings,
        uncrossable: crossings.uncrossable,
        dmin_eq10: exact(report.dmin_star_ensemble),
        dmin_eq11: exact(report.dmin_hubiness),
        dmax_eq7: exact(report.dmax_noncrossing),
        cmax_c1: report.cmax_simple.to_string(),
        cmax_eq12: report.cmax_uncrossable.to_string(),
        cmax_eq13: exact(report.cmax_length),
        cpairs_eq14: exact(report.cpairs_degree),
        crossings_impossible: report.crossings_impossible,
        expected_d: exact(report.expected_d),
        variance_d: exact(report.variance_d),
    };
    let violations = report.violations(&lengths, &crossings);
    with_output(config, stdout, |out| {
        serde_json::to_writer(&mut *out, &json).map_err(|e| Failure::io("bounds", e))?;
        out.write_all(b"\n")?;
        Ok(EXIT_OK)
    })?;
    if config.validate && !violations.is_empty() {
        for v in &violations {
            writeln!(stderr, "violation: {} ({})", v.relation, v.detail)?;
        }
        return Ok(EXIT_INVARIANT);
    }
    Ok(EXIT_OK)
}

/// Splits `0..trials` into contiguous shards, runs them in parallel and
/// merges the exact sums; the result does not depend on the worker count.
pub fn parallel_monte_carlo(tree: &Tree, trials: u64, seed: u64) -> MonteCarloReport {
    const SHARD: u64 = 4096;
    let shards: Vec<u64> = (0..trials.div_ceil(SHARD)).collect();
    let sums = shards
        .par_iter()
        .map(|&s| monte_carlo_shard(tree, seed, s * SHARD..((s + 1) * SHARD).min(trials)))
        .reduce(MonteCarloSums::default, |mut a, b| {
            a.merge(&b);
            a
        });
    MonteCarloReport::from_sums(tree.n(), seed, sums)
}

#[derive(Debug, Serialize)]
struct SimulationJson {
    n: usize,
    seed: u64,
    trials: u64,
    empirical_mean_d: f64,
    mean_d_std_error: f64,
    analytic_mean_d: String,
    z_score: f64,
    empirical_mean_c: f64,
    mean_c_std_error: f64,
    max_c: u64,
}

fn cmd_simulate(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    input: &Path,
    stdout: &mut dyn Write,
) -> CmdResult {
    if config.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let parsed = read_edgelist(input)?;
    let tree = &parsed.tree;
    if tree.n() < 2 {
        return Err(Failure::usage(
            "simulation needs a tree with at least two vertices",
        ));
    }
    let report = pool.install(|| parallel_monte_carlo(tree, config.trials, config.seed));
    let analytic = analytic_baseline(tree.n()).expected_d;
    let analytic_f = *analytic.numer() as f64 / *analytic.denom() as f64;
    let se = report.mean_d_std_error();
    let z = if se > 0.0 {
        (report.mean_d() - analytic_f) / se
    } else {
        0.0
    };
    with_output(config, stdout, |out| {
        match config.format {
            Format::Json => {
                let json = SimulationJson {
                    n: tree.n(),
                    seed: config.seed,
                    trials: config.trials,
                    empirical_mean_d: report.mean_d(),
                    mean_d_std_error: se,
                    analytic_mean_d: exact(analytic),
                    z_score: z,
                    empirical_mean_c: report.mean_crossings(),
                    mean_c_std_error: report.crossings_std_error(),
                    max_c: report.sums.max_crossings,
                };
                serde_json::to_writer(&mut *out, &json).map_err(|e| Failure::io("simulate", e))?;
                out.write_all(b"\n")?;
            }
            Format::Csv => {
                writeln!(
                    out,
                    "# simulate n={} seed={} trials={} rng=chacha8-stream-per-trial",
                    tree.n(),
                    config.seed,
                    config.trials
                )?;
                writeln!(out, "quantity,empirical,std_error,analytic")?;
                writeln!(
                    out,
                    "mean_d,{:.12},{:.12},{}",
                    report.mean_d(),
                    se,
                    decimal(analytic)
                )?;
                writeln!(
                    out,
                    "C,{:.12},{:.12},",
                    report.mean_crossings(),
                    report.crossings_std_error()
                )?;
                writeln!(
                    out,
                    "# z(mean_d) = {z:.4}; max C = {}",
                    report.sums.max_crossings
                )?;
            }
        }
        Ok(EXIT_OK)
    })
}

fn cmd_verify(
    config: &RunConfig,
    pool: &rayon::ThreadPool,
    exhaustive_max_n: usize,
    samples: usize,
    suite: &BoundSuite,
    stdout: &mut dyn Write,
) -> CmdResult {
    if config.max_n < 2 || config.max_n > ORACLE_MAX_N {
        return Err(Failure::usage(format!(
            "--max-n must be in 2..={ORACLE_MAX_N}"
        )));
    }
    if exhaustive_max_n > 8 {
        return Err(Failure::usage("--exhaustive-max-n must be at most 8"));
    }
    let sweep = SweepConfig {
        max_n: config.max_n,
        exhaustive_max_n,
        samples,
        seed: config.seed,
        oracle: ExhaustiveOracle::new(ORACLE_MAX_N),
    };
    let report = pool.install(|| parallel_sweep(&sweep, suite));
    with_output(config, stdout, |out| {
        writeln!(
            out,
            "# verify max_n={} exhaustive_max_n={} samples={} seed={}",
            sweep.max_n, sweep.exhaustive_max_n, sweep.samples, sweep.seed
        )?;
        for size in &report.sizes {
            let path = match (size.path_max_crossings, size.path_cpairs) {
                (Some(c), Some(bound)) => format!(" path_max_C={c} path_cpairs={bound}"),
                _ => String::new(),
            };
            writeln!(
                out,
                "# n={} trees={} arrangements={} noncrossing_max_attained={}/{}{}",
                size.n,
                size.trees,
                size.arrangements,
                size.noncrossing_max_attained,
                size.trees,
                path
            )?;
        }
        for (invariant, tally) in &report.tallies {
            let status = if tally.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} {:<24} checks={} failures={}  {}",
                invariant.name(),
                tally.checks,
                tally.failures,
                invariant.description()
            )?;
            if let Some(w) = &tally.witness {
                let arr = w
                    .arrangement
                    .as_ref()
                    .map(|a| a.to_string())
                    .unwrap_or_else(|| "-".into());
                writeln!(
                    out,
                    "     witness tree={} arrangement=[{arr}] {}",
                    w.tree, w.detail
                )?;
            }
        }
        Ok(if report.passed() {
            EXIT_OK
        } else {
            EXIT_INVARIANT
        })
    })
}

/// The sweep with trees checked in parallel and merged in tree order.
pub fn parallel_sweep(config: &SweepConfig, suite: &BoundSuite) -> SweepReport {
    let mut report = SweepReport::default();
    for n in 2..=config.max_n {
        let trees = config.trees(n);
        let parts: Vec<SweepReport> = trees
            .par_iter()
            .map(|tree| check_tree(tree, suite, &config.oracle))
            .collect();
        for part in &parts {
            report.merge(part);
        }
    }
    report
}

fn cmd_construct(
    config: &RunConfig,
    family: Family,
    n: usize,
    mode: Mode,
    stdout: &mut dyn Write,
) -> CmdResult {
    if n < 2 {
        return Err(Failure::usage("--n must be at least 2"));
    }
    let (tree, arr, mode_name) = match (family, mode) {
        (Family::Star, Mode::HubEnd) => {
            (Tree::star(n), arrange_star(n, StarMode::HubEnd), "hub_end")
        }
        (Family::Star, Mode::HubCenter) => (
            Tree::star(n),
            arrange_star(n, StarMode::HubCenter),
            "hub_center",
        ),
        (Family::Linear, Mode::Identity) => (
            Tree::linear(n),
            arrange_linear(n, LinearMode::Identity),
            "identity",
        ),
        (Family::Linear, Mode::Zigzag) => (
            Tree::linear(n),
            arrange_linear(n, LinearMode::Zigzag),
            "zigzag",
        ),
        (Family::Star, _) => {
            return Err(Failure::usage(
                "star trees take --mode hub_end or hub_center",
            ))
        }
        (Family::Linear, _) => {
            return Err(Failure::usage(
                "linear trees take --mode identity or zigzag",
            ))
        }
    };
    let lengths = length_stats(&tree, &arr).expect("matching sizes");
    let crossings = crossing_count(&tree, &arr).expect("matching sizes");
    let family_name = match family {
        Family::Star => "star",
        Family::Linear => "linear",
    };
    with_output(config, stdout, |out| {
        writeln!(out, "# family={family_name} n={n} mode={mode_name}")?;
        writeln!(out, "# <d> = {}", lengths.mean_d.expect("n >= 2"))?;
        writeln!(out, "# D = {}", lengths.total)?;
        writeln!(out, "# C = {}", crossings.crossings)?;
        out.write_all(write_edgelist(&tree, Some(&arr)).as_bytes())?;
        Ok(EXIT_OK)
    })
}
