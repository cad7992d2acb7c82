//! The `sepvol` command line: `run`, `table` and `check`.
//!
//! Exit codes: 0 success, 2 usage error, 3 failed check, 4 I/O error.
//! Records and tables go to stdout (or `--out`); progress goes to stderr.

mod record;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::integrate::{self, Estimate, IntegrateError, RunConfig, SeedPolicy, SimplexSampling};
use crate::metrics::{bloch_radial_profile, MetricKind};
use crate::numbertheory;
use crate::qmc::SequenceKind;

pub use record::{append_csv, sig17, to_json_compact, ResultRecord, ARTIFACT_VERSION, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sepvol", version, about = "Monotone-metric volumes and separability probabilities of two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate one metric and write a JSON record.
    Run(RunArgs),
    /// Estimate several metrics on one shared point set and print a table.
    Table(TableArgs),
    /// Run a self-check; exits 3 on failure.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct SharedArgs {
    /// halton, scrambled-halton, scrambled-faure or pseudo
    #[arg(long, default_value = "scrambled-faure")]
    sequence: SequenceKind,
    #[arg(long, default_value_t = 1_000_000)]
    points: u64,
    #[arg(long, default_value_t = 8)]
    blocks: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// distinct-per-block or shared
    #[arg(long, default_value = "distinct-per-block")]
    seed_policy: SeedPolicy,
    /// Spectrum sampling: dirichlet-half or uniform
    #[arg(long, value_enum, default_value = "dirichlet-half")]
    sampling: Sampling,
    /// Append one CSV row per metric to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Suppress per-block progress on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// bures, km, max, average, wy, gks or ni
    #[arg(long, default_value = "bures")]
    metric: MetricKind,
    /// Write the JSON record here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Comma-separated metric names.
    #[arg(long, value_delimiter = ',', default_value = "bures,km")]
    metrics: Vec<MetricKind>,
    /// Also write one JSON record per metric (one per line) here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sampling {
    DirichletHalf,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Hall,
    Kmratio,
    Bloch,
    Numtheory,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Matrix size for hall/kmratio; all of 2, 3, 4 when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
    n: Option<u8>,
    /// Points for hall/kmratio (default 1e5 for N = 2, else 1e6).
    #[arg(long)]
    points: Option<u64>,
    #[arg(long, default_value_t = numbertheory::DEFAULT_BOUND)]
    bound: u64,
    #[arg(long, default_value = "scrambled-faure")]
    sequence: SequenceKind,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<IntegrateError> for Failure {
    fn from(e: IntegrateError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_failure(what: &str) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{what}: {e}"))
}

/// Runs the command line on `args` (including the program name) and
/// returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a, out, err),
        Command::Table(a) => cmd_table(a, out, err),
        Command::Check(a) => cmd_check(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "I/O error: {msg}");
            EXIT_IO
        }
    }
}

fn config(metric: MetricKind, s: &SharedArgs) -> RunConfig {
    RunConfig {
        seed_policy: s.seed_policy,
        sampling: match s.sampling {
            Sampling::DirichletHalf => SimplexSampling::DirichletHalf,
            Sampling::Uniform => SimplexSampling::Uniform,
        },
        ..RunConfig::full(metric, s.sequence, s.points, s.blocks, s.seed)
    }
}

fn estimate(cfg: &RunConfig, metrics: &[MetricKind], quiet: bool, err: &mut dyn Write) -> Result<Vec<Estimate>, Failure> {
    cfg.validate()?;
    let err = std::sync::Mutex::new(err);
    let est = integrate::run_many(cfg, metrics, |p| {
        if !quiet {
            let mut e = err.lock().expect("stderr lock");
            let _ = writeln!(
                e,
                "block {}/{}: {} points, {:.1}s elapsed",
                p.block + 1,
                p.blocks,
                p.points,
                p.elapsed
            );
        }
    })?;
    Ok(est)
}

fn cmd_run(a: RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = config(a.metric, &a.shared);
    let est = estimate(&cfg, &[a.metric], a.shared.quiet, err)?;
    if let Some(path) = &a.shared.csv {
        append_csv(path, &cfg, &est).map_err(io_failure(&path.display().to_string()))?;
    }
    let text = ResultRecord::new(cfg, est.into_iter().next().expect("one metric")).render() + "\n";
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(io_failure(&path.display().to_string()))?,
        None => out.write_all(text.as_bytes()).map_err(io_failure("stdout"))?,
    }
    Ok(EXIT_OK)
}

fn cmd_table(a: TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = config(a.metrics[0], &a.shared);
    let est = estimate(&cfg, &a.metrics, a.shared.quiet, err)?;
    if let Some(path) = &a.shared.csv {
        append_csv(path, &cfg, &est).map_err(io_failure(&path.display().to_string()))?;
    }
    if let Some(path) = &a.out {
        let lines: String = est
            .iter()
            .map(|e| to_json_compact(&ResultRecord::new(RunConfig { metric: e.metric, ..cfg }, e.clone())) + "\n")
            .collect();
        std::fs::write(path, lines).map_err(io_failure(&path.display().to_string()))?;
    }
    out.write_all(render_table(&est).as_bytes()).map_err(io_failure("stdout"))?;
    Ok(EXIT_OK)
}

/// Six significant digits, switching to exponent form outside `[1e-4, 1e6)`.
pub fn short(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

/// Aligned table with columns metric, `V^{s+n}`, `V^s`, `P^s` and `±` error
/// bars where available. Heavy-tailed estimates are marked with `*`.
pub fn render_table(est: &[Estimate]) -> String {
    let pm = |v: f64, se: Option<f64>| match se {
        Some(s) => format!("{} ± {:.2e}", short(v), s),
        None => short(v),
    };
    let rows: Vec<[String; 4]> = est
        .iter()
        .map(|e| {
            let mark = if e.heavy_tail_flag { "*" } else { "" };
            [
                format!("{}{mark}", e.metric.name()),
                pm(e.v_total_tilde, e.se_v_total),
                pm(e.v_sep_tilde, e.se_v_sep),
                pm(e.p_sep, e.se_p),
            ]
        })
        .collect();
    let header = ["metric", "V^{s+n}", "V^{s}", "P^{s}"].map(String::from);
    let width = |c: usize| {
        std::iter::once(&header)
            .chain(&rows)
            .map(|r| r[c].chars().count())
            .max()
            .unwrap_or(0)
    };
    let widths = [width(0), width(1), width(2), width(3)];
    let line = |r: &[String; 4]| {
        let mut s = format!("{:<w$}", r[0], w = widths[0]);
        for c in 1..4 {
            let pad = widths[c] - r[c].chars().count();
            s.push_str("  ");
            s.push_str(&" ".repeat(pad));
            s.push_str(&r[c]);
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for r in &rows {
        out.push_str(&line(r));
    }
    if est.iter().any(|e| e.heavy_tail_flag) {
        out.push_str("* one point carries more than 1% of the metric weight\n");
    }
    out
}

fn verdict(out: &mut dyn Write, ok: bool, label: &str) -> Result<bool, Failure> {
    writeln!(out, "{} {label}", if ok { "PASS" } else { "FAIL" }).map_err(io_failure("stdout"))?;
    Ok(ok)
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write, _err: &mut dyn Write) -> Result<i32, Failure> {
    let ns: Vec<usize> = match a.n {
        Some(n) => vec![n as usize],
        None => vec![2, 3, 4],
    };
    let points = |n: usize| a.points.unwrap_or(if n == 2 { 100_000 } else { 1_000_000 });
    let mut all = true;
    match a.suite {
        Suite::Hall => {
            for n in ns {
                let v = integrate::hall_check(n, points(n), a.sequence, a.seed)?;
                let tol = [0.005, 0.01, 0.02][n - 2];
                all &= verdict(out, (v - 1.0).abs() <= tol, &format!("hall N={n}: {v:.6} (1 ± {tol})"))?;
            }
        }
        Suite::Kmratio => {
            for n in ns {
                let v = integrate::km_ratio_check(n, points(n), a.sequence, a.seed)?;
                let target = 2f64.powi((n * (n - 1) / 2) as i32);
                let tol = if n == 2 { 0.005 } else { 0.01 * target };
                all &= verdict(out, (v - target).abs() <= tol, &format!("kmratio N={n}: ratio {v:.6} (target {target} ± {tol})"))?;
            }
        }
        Suite::Bloch => {
            let closed: [(MetricKind, fn(f64) -> f64); 2] = [
                (MetricKind::Bures, |r| 2.0 * r * r / (1.0 - r * r).sqrt()),
                (MetricKind::Max, |r| 2.0 * r * r / (1.0 - r * r).powf(1.5)),
            ];
            for (metric, form) in closed {
                let ratios: Vec<f64> = (1..=9)
                    .map(|i| {
                        let r = i as f64 / 10.0;
                        bloch_radial_profile(metric, r) / form(r)
                    })
                    .collect();
                let spread = ratios.iter().map(|q| (q / ratios[0] - 1.0).abs()).fold(0.0, f64::max);
                all &= verdict(
                    out,
                    spread <= 1e-10,
                    &format!("bloch {}: profile/closed form = {:.12}, spread {spread:.1e}", metric.name(), ratios[0]),
                )?;
            }
        }
        Suite::Numtheory => {
            let list = numbertheory::scan_largest(a.bound).map_err(|e| Failure::Usage(e.to_string()))?;
            let tail = &list[list.len().saturating_sub(2)..];
            let shown: Vec<String> = tail.iter().map(u64::to_string).collect();
            writeln!(out, "{} integers up to {} have σ₄(k) > φ(k)⁵", list.len(), a.bound).map_err(io_failure("stdout"))?;
            all &= verdict(out, tail == [1680, 2310], &format!("largest two: {}", shown.join(", ")))?;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = main_with(std::iter::once("sepvol").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["run", "--metric", "euclid"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["check", "--suite", "nope"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["run", "--points", "10", "--blocks", "3", "--quiet"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("multiple of blocks"));
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("table"));
    }

    #[test]
    fn short_numbers() {
        assert_eq!(short(5.647938), "5.64794");
        assert_eq!(short(0.0736881), "0.0736881");
        assert_eq!(short(361.468), "361.468");
        assert_eq!(short(1.00888e35), "1.00888e35");
    }

    #[test]
    fn bloch_suite_passes() {
        let (code, out, _) = call(&["check", "--suite", "bloch"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert_eq!(out.matches("PASS").count(), 2);
    }
}
