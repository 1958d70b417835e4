//! Command-line front end: tabulate the closed-form constants and regime
//! map, verify sharpness numerically, run the inequality check suite, and
//! scan the unresolved window, as text tables, CSV, or SVG plots.
//!
//! Exit codes: 0 success, 1 verification or check failure, 2 usage error.

mod svg;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use poincare_kn::constants::{
    c_dirac, c_symmetric, c_two_level, delta1, delta2, in_a_n, regime, unresolved_interval,
};
use poincare_kn::optimizer::{scan_gap, verify_sharpness_with_starts};
use poincare_kn::proofcheck::{run_checks, CheckConfig, CHECK_NAMES};
use poincare_kn::RegimeKind;

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "poincare-kn",
    version,
    about = "Sharp deviation-vs-variation constants on complete graphs",
    after_help = "Ranges: --n takes N or LO..HI (inclusive); --p takes a single value, \
                  a comma list (2.5,3,4), or LO..HI:STEPS for STEPS evenly spaced values \
                  including both endpoints.\n\
                  POINCARE_KN_THREADS sets the worker-pool size; --threads overrides it."
)]
struct Cli {
    /// Worker threads (default: all cores, or POINCARE_KN_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Master seed for the randomized searches; commands without
    /// randomness accept and ignore it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate candidate constants, thresholds, and regime verdicts.
    Constants(ConstantsArgs),
    /// Verify the closed-form constants against the numerical optimizer.
    Verify(VerifyArgs),
    /// Run the sampled inequality and monotonicity checks.
    Proofcheck(ProofcheckArgs),
    /// Scan the unresolved p-window with the numerical optimizer.
    ScanGap(ScanGapArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Svg,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Vertex count or range, e.g. 3 or 3..8.
    #[arg(long, default_value = "3..8", value_parser = parse_n_range)]
    n: NRange,
    /// Exponent(s), e.g. 3, or 1.2,2.5,4, or 1..6:101.
    #[arg(long, default_value = "1..6:101", value_parser = parse_p_spec)]
    p: PSpec,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "3..8", value_parser = parse_n_range)]
    n: NRange,
    #[arg(long, default_value = "1.5,2.5,3,5", value_parser = parse_p_spec)]
    p: PSpec,
    /// Allowed |numeric - closed form| gap.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Random multistart count (the three family candidates are always
    /// seeded on top).
    #[arg(long, default_value_t = 64)]
    starts: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProofcheckArgs {
    /// Comma-separated subset of checks to run (default: all).
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    #[arg(long, default_value = "3..20", value_parser = parse_n_range)]
    n: NRange,
    /// Explicit exponent(s); default samples each check's valid interval.
    #[arg(long, value_parser = parse_p_spec)]
    p: Option<PSpec>,
    /// Exponent samples per valid interval.
    #[arg(long, default_value_t = 20)]
    p_samples: usize,
    /// Grid density of the one-dimensional scans.
    #[arg(long, default_value_t = 10_000)]
    x_samples: usize,
    /// Series truncation order.
    #[arg(long, default_value_t = 50)]
    terms: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanGapArgs {
    /// Vertex count.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Grid points across the unresolved window (endpoints included).
    #[arg(long, default_value_t = 50)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
struct NRange(Vec<usize>);

#[derive(Clone)]
struct PSpec(Vec<f64>);

fn parse_n_range(s: &str) -> Result<NRange, String> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad vertex count `{t}`"))
    };
    let values = if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        (lo..=hi).collect()
    } else {
        vec![parse_one(s)?]
    };
    if values.iter().any(|&n| n < 3) {
        return Err("vertex counts must be at least 3".into());
    }
    Ok(NRange(values))
}

fn parse_p_spec(s: &str) -> Result<PSpec, String> {
    let parse_one = |t: &str| {
        let v = t
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("bad exponent `{t}`"))?;
        if !v.is_finite() || v < 1.0 {
            return Err(format!("exponents must be finite and >= 1, got `{t}`"));
        }
        Ok(v)
    };
    if let Some((range, steps)) = s.rsplit_once(':') {
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| format!("expected LO..HI:STEPS, got `{s}`"))?;
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|_| format!("bad step count in `{s}`"))?;
        if steps < 2 || hi <= lo {
            return Err(format!("need LO < HI and STEPS >= 2 in `{s}`"));
        }
        Ok(PSpec(
            (0..steps)
                .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
                .collect(),
        ))
    } else {
        let values: Result<Vec<f64>, String> = s.split(',').map(parse_one).collect();
        let values = values?;
        if values.is_empty() {
            return Err("empty exponent list".into());
        }
        Ok(PSpec(values))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("POINCARE_KN_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(k) = threads {
        // a later duplicate initialization is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
    let result = match cli.command {
        Cmd::Constants(args) => cmd_constants(args),
        Cmd::Verify(args) => cmd_verify(args, cli.seed),
        Cmd::Proofcheck(args) => cmd_proofcheck(args),
        Cmd::ScanGap(args) => cmd_scan_gap(args, cli.seed),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

// ------------------------------------------------------------- constants

fn cmd_constants(args: ConstantsArgs) -> anyhow::Result<ExitCode> {
    let mut content = String::new();
    match args.format {
        Format::Csv => {
            content.push_str("n,p,c_two_level,c_symmetric,c_dirac,regime,sharp_constant\n");
            for &n in &args.n.0 {
                for &p in &args.p.0 {
                    let reg = regime(n, p);
                    let _ = writeln!(
                        content,
                        "{n},{p},{},{},{},{},{}",
                        c_two_level(n, p),
                        c_symmetric(n, p),
                        c_dirac(n, p),
                        reg.kind,
                        fmt_opt(reg.constant.map(|c| c.value)),
                    );
                }
            }
        }
        Format::Text => {
            for &n in &args.n.0 {
                let _ = writeln!(
                    content,
                    "n = {n}: delta1 = {:.6e}, delta2 = {:.6e}, unresolved p in {}",
                    delta1(n),
                    delta2(n),
                    match unresolved_interval(n) {
                        Some((lo, hi)) => format!("({lo:.6}, {hi:.6})"),
                        None => "(empty)".to_string(),
                    }
                );
                let _ = writeln!(
                    content,
                    "{:>8} {:>14} {:>14} {:>14} {:>6} {:>11} {:>14}",
                    "p", "c_two_level", "c_symmetric", "c_dirac", "in_A_n", "regime", "sharp"
                );
                for &p in &args.p.0 {
                    let reg = regime(n, p);
                    let _ = writeln!(
                        content,
                        "{:>8.4} {:>14.8e} {:>14.8e} {:>14.8e} {:>6} {:>11} {:>14}",
                        p,
                        c_two_level(n, p),
                        c_symmetric(n, p),
                        c_dirac(n, p),
                        if in_a_n(n, p) { "yes" } else { "no" },
                        reg.kind.to_string(),
                        reg.constant
                            .map(|c| format!("{:.8e}", c.value))
                            .unwrap_or_default(),
                    );
                }
                content.push('\n');
            }
        }
        Format::Svg => {
            let n = *args.n.0.first().expect("validated non-empty");
            anyhow::ensure!(
                args.p.0.len() >= 2,
                "an SVG plot needs a p-range, e.g. --p 1..6:101"
            );
            let series = vec![
                svg::Series {
                    name: "two-level".into(),
                    points: args.p.0.iter().map(|&p| (p, c_two_level(n, p))).collect(),
                },
                svg::Series {
                    name: "symmetric".into(),
                    points: args.p.0.iter().map(|&p| (p, c_symmetric(n, p))).collect(),
                },
                svg::Series {
                    name: "dirac".into(),
                    points: args.p.0.iter().map(|&p| (p, c_dirac(n, p))).collect(),
                },
            ];
            content = svg::render(
                &format!("candidate constants, n = {n}"),
                "p",
                "constant",
                &series,
            );
        }
    }
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- verify

struct VerifyRow {
    n: usize,
    p: f64,
    kind: RegimeKind,
    closed_form: Option<f64>,
    best_value: Option<f64>,
    abs_gap: Option<f64>,
    family: String,
    status: &'static str,
}

fn cmd_verify(args: VerifyArgs, seed: u64) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(args.tol > 0.0, "--tol must be positive");
    anyhow::ensure!(args.starts >= 1, "--starts must be at least 1");
    if args.format == Format::Svg {
        anyhow::bail!("verify supports text and csv output");
    }
    let mut cells = Vec::new();
    for &n in &args.n.0 {
        for &p in &args.p.0 {
            cells.push((n, p));
        }
    }
    let rows: Vec<VerifyRow> = cells
        .par_iter()
        .map(|&(n, p)| {
            let reg = regime(n, p);
            if !reg.is_resolved() {
                return VerifyRow {
                    n,
                    p,
                    kind: reg.kind,
                    closed_form: None,
                    best_value: None,
                    abs_gap: None,
                    family: String::new(),
                    status: "skip",
                };
            }
            match verify_sharpness_with_starts(n, p, args.tol, seed, args.starts) {
                Ok(report) => VerifyRow {
                    n,
                    p,
                    kind: reg.kind,
                    closed_form: report.closed_form,
                    best_value: Some(report.best_value),
                    abs_gap: report.abs_gap,
                    family: report.family.to_string(),
                    status: "pass",
                },
                Err(e) => {
                    eprintln!("verification failed at n = {n}, p = {p}: {e}");
                    VerifyRow {
                        n,
                        p,
                        kind: reg.kind,
                        closed_form: reg.constant.map(|c| c.value),
                        best_value: None,
                        abs_gap: None,
                        family: String::new(),
                        status: "FAIL",
                    }
                }
            }
        })
        .collect();

    let mut content = String::new();
    match args.format {
        Format::Csv => {
            content.push_str("n,p,regime,closed_form,best_value,abs_gap,family,status\n");
            for r in &rows {
                let _ = writeln!(
                    content,
                    "{},{},{},{},{},{},{},{}",
                    r.n,
                    r.p,
                    r.kind,
                    fmt_opt(r.closed_form),
                    fmt_opt(r.best_value),
                    fmt_opt(r.abs_gap),
                    r.family,
                    r.status
                );
            }
        }
        _ => {
            let _ = writeln!(
                content,
                "{:>4} {:>8} {:>11} {:>16} {:>16} {:>10} {:>22} {:>6}",
                "n", "p", "regime", "closed_form", "best_value", "abs_gap", "family", "status"
            );
            for r in &rows {
                let _ = writeln!(
                    content,
                    "{:>4} {:>8.4} {:>11} {:>16} {:>16} {:>10} {:>22} {:>6}",
                    r.n,
                    r.p,
                    r.kind.to_string(),
                    r.closed_form.map(|v| format!("{v:.10e}")).unwrap_or_default(),
                    r.best_value.map(|v| format!("{v:.10e}")).unwrap_or_default(),
                    r.abs_gap.map(|v| format!("{v:.2e}")).unwrap_or_default(),
                    r.family,
                    r.status
                );
            }
        }
    }
    write_output(&args.out, &content)?;
    if rows.iter().any(|r| r.status == "FAIL") {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

// ------------------------------------------------------------ proofcheck

fn cmd_proofcheck(args: ProofcheckArgs) -> anyhow::Result<ExitCode> {
    if args.format == Format::Svg {
        anyhow::bail!("proofcheck supports text and csv output");
    }
    if let Some(only) = &args.only {
        for name in only {
            anyhow::ensure!(
                CHECK_NAMES.contains(&name.as_str()),
                "unknown check `{name}`; known: {}",
                CHECK_NAMES.join(", ")
            );
        }
    }
    let cfg = CheckConfig {
        ns: args.n.0.clone(),
        ps: args.p.as_ref().map(|p| p.0.clone()),
        only: args.only.clone(),
        p_samples: args.p_samples,
        x_samples: args.x_samples,
        series_terms: args.terms,
    };
    let reports = run_checks(&cfg);
    anyhow::ensure!(
        !reports.is_empty(),
        "no check matched the requested grid (the p values may be outside every \
         check's valid interval)"
    );

    let mut content = String::new();
    match args.format {
        Format::Csv => {
            content.push_str("check,samples,worst_margin,worst_location,passed\n");
            for r in &reports {
                let loc = r
                    .worst_location
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(
                    content,
                    "{},{},{},{},{}",
                    r.name, r.samples, r.worst_margin, loc, r.passed
                );
            }
        }
        _ => {
            let _ = writeln!(
                content,
                "{:>20} {:>10} {:>14} {:>28} {:>6}",
                "check", "samples", "worst_margin", "worst_location", "status"
            );
            for r in &reports {
                let loc = r
                    .worst_location
                    .iter()
                    .map(|v| format!("{v:.4}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let _ = writeln!(
                    content,
                    "{:>20} {:>10} {:>14.3e} {:>28} {:>6}",
                    r.name,
                    r.samples,
                    r.worst_margin,
                    loc,
                    if r.passed { "pass" } else { "FAIL" }
                );
            }
        }
    }
    write_output(&args.out, &content)?;
    if reports.iter().all(|r| r.passed) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

// -------------------------------------------------------------- scan-gap

fn cmd_scan_gap(args: ScanGapArgs, seed: u64) -> anyhow::Result<ExitCode> {
    anyhow::ensure!(args.n >= 3, "--n must be at least 3");
    anyhow::ensure!(args.steps >= 2, "--steps must be at least 2");
    let rows = scan_gap(args.n, args.steps, seed).expect("arguments validated");
    let mut content = String::new();
    match args.format {
        Format::Csv => {
            content.push_str("p,numeric_sup,best_candidate,family\n");
            for r in &rows {
                let _ = writeln!(
                    content,
                    "{},{},{},{}",
                    r.p, r.best_value, r.candidate.value, r.family
                );
            }
        }
        Format::Text => {
            match unresolved_interval(args.n) {
                Some((lo, hi)) => {
                    let _ = writeln!(
                        content,
                        "n = {}: unresolved p in ({lo:.6}, {hi:.6}), {} grid points",
                        args.n,
                        rows.len()
                    );
                }
                None => {
                    let _ = writeln!(content, "n = {}: no unresolved window", args.n);
                }
            }
            let _ = writeln!(
                content,
                "{:>10} {:>16} {:>16} {:>12} {:>22}",
                "p", "numeric_sup", "best_candidate", "cand_formula", "family"
            );
            for r in &rows {
                let _ = writeln!(
                    content,
                    "{:>10.6} {:>16.10e} {:>16.10e} {:>12} {:>22}",
                    r.p,
                    r.best_value,
                    r.candidate.value,
                    r.candidate.formula.to_string(),
                    r.family.to_string()
                );
            }
        }
        Format::Svg => {
            anyhow::ensure!(
                !rows.is_empty(),
                "the unresolved window of n = {} is empty, nothing to plot",
                args.n
            );
            let series = vec![
                svg::Series {
                    name: "numeric sup".into(),
                    points: rows.iter().map(|r| (r.p, r.best_value)).collect(),
                },
                svg::Series {
                    name: "two-level".into(),
                    points: rows.iter().map(|r| (r.p, c_two_level(args.n, r.p))).collect(),
                },
                svg::Series {
                    name: "symmetric".into(),
                    points: rows.iter().map(|r| (r.p, c_symmetric(args.n, r.p))).collect(),
                },
                svg::Series {
                    name: "dirac".into(),
                    points: rows.iter().map(|r| (r.p, c_dirac(args.n, r.p))).collect(),
                },
            ];
            content = svg::render(
                &format!("unresolved window, n = {}", args.n),
                "p",
                "quotient",
                &series,
            );
        }
    }
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}
