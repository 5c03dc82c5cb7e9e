//! Batch front door: one binary, one pipeline per subcommand.
//!
//! Exit codes: 0 all asserted invariants pass, 1 a probe recorded
//! violations, 2 usage or precondition error, 3 internal numeric failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::bernstein::{bernstein_constant, BernsteinConfig};
use crate::certify::sup_norm_certified;
use crate::embedding::{
    apply_embedding, default_grid, verify_sandwich_with, DEFAULT_ANCHOR_COUNT, DEFAULT_SAFETY,
};
use crate::error::{Error, Result};
use crate::geometry::{
    half_ball_check, lasq_empirical_defect_with, oh_defect_probe, small_ball_radius_with,
    DefectReport,
};
use crate::poly::MuntzPolynomial;
use crate::sequence::{check_muntz_condition, FamilyKind, MuntzSequence};

const USAGE_EXIT: u8 = 2;
const INTERNAL_EXIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "muntz-lab",
    about = "Numerical laboratory for Muntz polynomial systems on [0,1]",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Comma-separated explicit exponents, e.g. "0,1,2.5"
    #[arg(long, global = true, value_name = "LIST")]
    seq: Option<String>,

    /// Generated family as kind:parameter, e.g. "geometric:2" or "power:2"
    #[arg(long, global = true, value_name = "KIND:PARAM")]
    family: Option<String>,

    /// Number of leading exponents the run works over
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Embedding accuracy parameter in (0,1)
    #[arg(long, global = true)]
    eps: Option<f64>,

    /// Sub-interval end in (0,1): estimator interval [0,x] and radius input
    #[arg(long, global = true)]
    x: Option<f64>,

    /// Number of dyadic anchors 1 - 2^-i
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Trial count for randomized runs
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Seed for randomized runs (required there, unused elsewhere)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Tolerance override (norm certification, estimator relative gap)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Safety factor applied to heuristic derivative-growth estimates
    #[arg(long, global = true)]
    safety: Option<f64>,

    /// Comma-separated coefficients aligned with the leading exponents
    #[arg(long, global = true, value_name = "LIST")]
    coeffs: Option<String>,

    /// Emit the run artifact as JSON on stdout (suppresses the human line)
    #[arg(long, global = true)]
    json: bool,

    /// Write the run's CSV rows to this path
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Flat key=value defaults file; command-line flags override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Cmd {
    /// Estimate the derivative-growth constant on [0, x]
    Bernstein,
    /// Build the banded sampling grid and export an embedded polynomial
    Grid,
    /// Sample the two-sided embedding sandwich
    VerifyEmbedding,
    /// Run the almost-square defect falsification probe
    Lasq,
    /// Check the small-ball half-norm bound by sampling
    HalfBall,
    /// Explore isolation of sampled directions from a landmark (never asserts)
    OhProbe,
    /// Certify the sup-norm of one polynomial
    Norm,
    /// Classify sum of reciprocal exponents for the declared family
    MuntzCheck,
}

/// Flag values after merging the config file underneath them.
#[derive(Debug)]
struct RunConfig {
    seq: Option<String>,
    family: Option<String>,
    n: Option<usize>,
    eps: Option<f64>,
    x: Option<f64>,
    m: usize,
    trials: usize,
    seed: Option<u64>,
    tol: Option<f64>,
    safety: f64,
    coeffs: Option<String>,
    json: bool,
    csv: Option<PathBuf>,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn parse_key<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| usage(format!("config key {key} has unparseable value {raw}"))),
    }
}

fn read_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>> {
    const KEYS: [&str; 12] = [
        "seq", "family", "n", "eps", "x", "m", "trials", "seed", "tol", "safety", "coeffs", "csv",
    ];
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {} is not key=value", lineno + 1)))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(usage(format!("unknown config key {key}")));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        Ok(RunConfig {
            seq: cli.seq.clone().or_else(|| file.get("seq").cloned()),
            family: cli.family.clone().or_else(|| file.get("family").cloned()),
            n: match cli.n {
                Some(v) => Some(v),
                None => parse_key(&file, "n")?,
            },
            eps: match cli.eps {
                Some(v) => Some(v),
                None => parse_key(&file, "eps")?,
            },
            x: match cli.x {
                Some(v) => Some(v),
                None => parse_key(&file, "x")?,
            },
            m: match cli.m {
                Some(v) => Some(v),
                None => parse_key(&file, "m")?,
            }
            .unwrap_or(DEFAULT_ANCHOR_COUNT),
            trials: match cli.trials {
                Some(v) => Some(v),
                None => parse_key(&file, "trials")?,
            }
            .unwrap_or(1000),
            seed: match cli.seed {
                Some(v) => Some(v),
                None => parse_key(&file, "seed")?,
            },
            tol: match cli.tol {
                Some(v) => Some(v),
                None => parse_key(&file, "tol")?,
            },
            safety: match cli.safety {
                Some(v) => Some(v),
                None => parse_key(&file, "safety")?,
            }
            .unwrap_or(DEFAULT_SAFETY),
            coeffs: cli.coeffs.clone().or_else(|| file.get("coeffs").cloned()),
            json: cli.json,
            csv: cli.csv.clone().or_else(|| file.get("csv").map(PathBuf::from)),
        })
    }

    fn sequence(&self) -> Result<(MuntzSequence, usize)> {
        match (&self.seq, &self.family) {
            (Some(_), Some(_)) => Err(usage("--seq and --family are mutually exclusive")),
            (None, None) => Err(usage("one of --seq or --family is required")),
            (Some(list), None) => {
                let exponents = parse_list(list, "--seq")?;
                let seq = MuntzSequence::explicit(&exponents)?;
                let n = self.n.unwrap_or(seq.len());
                if n == 0 || n > seq.len() {
                    return Err(usage(format!("--n {n} out of range 1..={}", seq.len())));
                }
                Ok((seq, n))
            }
            (None, Some(descriptor)) => {
                let kind = parse_family(descriptor)?;
                let n = self
                    .n
                    .ok_or_else(|| usage("--family needs --n to size the prefix"))?;
                let seq = MuntzSequence::generate(kind, n)?;
                Ok((seq, n))
            }
        }
    }

    fn required_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| usage("randomized runs require --seed"))
    }

    fn required_x(&self) -> Result<f64> {
        self.x.ok_or_else(|| usage("this command requires --x"))
    }

    fn required_eps(&self) -> Result<f64> {
        self.eps.ok_or_else(|| usage("this command requires --eps"))
    }

    fn estimator_config(&self) -> BernsteinConfig {
        let mut config = BernsteinConfig::default();
        if let Some(tol) = self.tol {
            config.rel_gap = tol;
        }
        config
    }

    fn no_csv(&self, command: &str) -> Result<()> {
        if self.csv.is_some() {
            return Err(usage(format!("{command} does not export CSV")));
        }
        Ok(())
    }
}

fn parse_list(raw: &str, flag: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("{flag}: cannot parse {tok:?} as a number")))
        })
        .collect()
}

fn parse_family(descriptor: &str) -> Result<FamilyKind> {
    let (kind, param) = descriptor
        .split_once(':')
        .ok_or_else(|| usage("--family expects kind:parameter, e.g. geometric:2"))?;
    let value: f64 = param
        .trim()
        .parse()
        .map_err(|_| usage(format!("--family: cannot parse parameter {param:?}")))?;
    match kind.trim() {
        "geometric" => Ok(FamilyKind::Geometric(value)),
        "power" => Ok(FamilyKind::Power(value)),
        other => Err(usage(format!(
            "unknown family {other:?}; expected geometric or power (use --seq for explicit lists)"
        ))),
    }
}

// Writes through the Write trait and swallows io errors, so a consumer
// closing the pipe early (head, grep -m1) ends the run cleanly.
fn out(line: std::fmt::Arguments<'_>) {
    use std::io::Write as _;
    let _ = writeln!(std::io::stdout(), "{line}");
}

macro_rules! outln {
    ($($arg:tt)*) => { out(format_args!($($arg)*)) };
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Precondition(format!("serialization failed: {e}")))?;
    outln!("{text}");
    Ok(())
}

fn write_csv(path: &PathBuf, rows: &str) -> Result<()> {
    std::fs::write(path, rows)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn defect_csv(report: &DefectReport) -> String {
    let x = report.x.map(|v| v.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}\n",
        report.kind.name(),
        report.n,
        x,
        report.a,
        report.threshold_epsilon_star,
        report.extremal_value,
        report.violations,
        report.trials,
        report.seed
    )
}

fn violations_exit(violations: usize) -> u8 {
    u8::from(violations > 0)
}

fn cmd_bernstein(cfg: &RunConfig) -> Result<u8> {
    let (seq, n) = cfg.sequence()?;
    let a = cfg.required_x()?;
    let estimate = bernstein_constant(&seq, n, a, &cfg.estimator_config())?;
    if let Some(path) = &cfg.csv {
        let row = format!(
            "{},{},{},{},{}\n",
            estimate.n, estimate.a, estimate.lower, estimate.upper_heuristic, estimate.converged
        );
        write_csv(path, &row)?;
    }
    if cfg.json {
        print_json(&estimate)?;
    } else {
        outln!(
            "bernstein constant on [0, {a}]: lower {} upper_heuristic {} converged {}",
            estimate.lower, estimate.upper_heuristic, estimate.converged
        );
    }
    Ok(0)
}

fn cmd_grid(cfg: &RunConfig) -> Result<u8> {
    let (seq, n) = cfg.sequence()?;
    let eps = cfg.required_eps()?;
    let grid = default_grid(&seq, n, eps, cfg.m, cfg.safety, &cfg.estimator_config())?;
    grid.validate_spacing()?;
    if let Some(path) = &cfg.csv {
        let f = embedded_polynomial(cfg, &seq, n)?;
        let coords = apply_embedding(&f, &grid);
        let mut rows = String::new();
        for (i, (&s, value)) in grid
            .points
            .iter()
            .chain(std::iter::once(&1.0))
            .zip(&coords)
            .enumerate()
        {
            let _ = writeln!(rows, "{i},{s},{value}");
        }
        write_csv(path, &rows)?;
    }
    if cfg.json {
        print_json(&grid)?;
    } else {
        outln!(
            "grid: {} points over {} bands, epsilon {eps}",
            grid.points.len(),
            grid.constants.len()
        );
    }
    Ok(0)
}

// CSV export embeds the polynomial given by --coeffs, defaulting to the
// monomial on the first exponent.
fn embedded_polynomial(cfg: &RunConfig, seq: &MuntzSequence, n: usize) -> Result<MuntzPolynomial> {
    match &cfg.coeffs {
        Some(list) => {
            let coefficients = parse_list(list, "--coeffs")?;
            if coefficients.len() != n {
                return Err(usage(format!(
                    "--coeffs lists {} values but the run works over {n} exponents",
                    coefficients.len()
                )));
            }
            MuntzPolynomial::new(seq.clone(), coefficients)
        }
        None => MuntzPolynomial::monomial(seq.clone(), 0),
    }
}

fn cmd_verify_embedding(cfg: &RunConfig) -> Result<u8> {
    let (seq, n) = cfg.sequence()?;
    let eps = cfg.required_eps()?;
    let seed = cfg.required_seed()?;
    let report = verify_sandwich_with(
        &seq,
        n,
        eps,
        cfg.trials,
        seed,
        cfg.m,
        cfg.safety,
        &cfg.estimator_config(),
    )?;
    if let Some(path) = &cfg.csv {
        let row = format!(
            "{},{},{},{},{}\n",
            report.trials, report.min_ratio, report.max_ratio, report.epsilon, report.violations
        );
        write_csv(path, &row)?;
    }
    if cfg.json {
        print_json(&report)?;
    } else {
        outln!(
            "embedding sandwich: {} trials, ratio range [{}, {}], {} violations",
            report.trials, report.min_ratio, report.max_ratio, report.violations
        );
    }
    Ok(violations_exit(report.violations))
}

fn cmd_lasq(cfg: &RunConfig) -> Result<u8> {
    let (seq, n) = cfg.sequence()?;
    let x = cfg.x.unwrap_or(0.9);
    let seed = cfg.required_seed()?;
    let report = lasq_empirical_defect_with(
        &seq,
        n,
        x,
        cfg.trials,
        seed,
        cfg.safety,
        &cfg.estimator_config(),
    )?;
    if let Some(path) = &cfg.csv {
        write_csv(path, &defect_csv(&report))?;
    }
    if cfg.json {
        print_json(&report)?;
    } else {
        outln!(
            "lasq defect: threshold {} extremal {} over {} trials, {} violations",
            report.threshold_epsilon_star, report.extremal_value, report.trials, report.violations
        );
    }
    Ok(violations_exit(report.violations))
}

fn cmd_half_ball(cfg: &RunConfig) -> Result<u8> {
    let (seq, n) = cfg.sequence()?;
    let x = cfg.x.unwrap_or(0.9);
    let seed = cfg.required_seed()?;
    let (a, _) = small_ball_radius_with(&seq, n, x, cfg.safety, &cfg.estimator_config())?;
    let mut report = half_ball_check(&seq, n, a, cfg.trials, seed)?;
    report.x = Some(x);
    if let Some(path) = &cfg.csv {
        write_csv(path, &defect_csv(&report))?;
    }
    if cfg.json {
        print_json(&report)?;
    } else {
        outln!(
            "half ball: radius {a}, extremal restricted norm {} over {} trials, {} violations",
            report.extremal_value, report.trials, report.violations
        );
    }
    Ok(violations_exit(report.violations))
}

fn cmd_oh_probe(cfg: &RunConfig) -> Result<u8> {
    let (seq, n) = cfg.sequence()?;
    let seed = cfg.required_seed()?;
    // landmark: unit monomial on the first exponent >= 1 (first overall if none)
    let k = seq
        .exponents()
        .iter()
        .position(|&l| l >= 1.0)
        .unwrap_or(0)
        .min(n - 1);
    let landmark = MuntzPolynomial::monomial(seq.clone(), k)?;
    let report = oh_defect_probe(&[landmark], &seq, n, cfg.trials, seed)?;
    if let Some(path) = &cfg.csv {
        write_csv(path, &defect_csv(&report))?;
    }
    if cfg.json {
        print_json(&report)?;
    } else {
        outln!(
            "oh probe: observed isolation supremum {} over {} trials (reported, not asserted)",
            report.extremal_value, report.trials
        );
    }
    Ok(0)
}

fn cmd_norm(cfg: &RunConfig) -> Result<u8> {
    cfg.no_csv("norm")?;
    let (seq, n) = cfg.sequence()?;
    let list = cfg
        .coeffs
        .as_ref()
        .ok_or_else(|| usage("norm requires --coeffs"))?;
    let coefficients = parse_list(list, "--coeffs")?;
    if coefficients.len() != n {
        return Err(usage(format!(
            "--coeffs lists {} values but the run works over {n} exponents",
            coefficients.len()
        )));
    }
    let p = MuntzPolynomial::new(seq, coefficients)?;
    let cert = sup_norm_certified(&p, [0.0, 1.0], cfg.tol.unwrap_or(1e-6))?;
    if cfg.json {
        print_json(&cert)?;
    } else {
        outln!(
            "sup norm in [{}, {}], witness t = {}",
            cert.lower, cert.upper, cert.witness_t
        );
    }
    Ok(0)
}

fn cmd_muntz_check(cfg: &RunConfig) -> Result<u8> {
    cfg.no_csv("muntz-check")?;
    let (seq, _) = cfg.sequence()?;
    let report = check_muntz_condition(&seq);
    if cfg.json {
        print_json(&report)?;
    } else {
        outln!(
            "muntz condition: {:?} (partial sum {}): {}",
            report.verdict, report.partial_sum, report.rationale
        );
    }
    Ok(0)
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::CertificationBudget { .. }
        | Error::UnboundedLp
        | Error::LpIterationLimit(_)
        | Error::CutIterationLimit(_)
        | Error::DegenerateWitness => INTERNAL_EXIT,
        _ => USAGE_EXIT,
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let cfg = RunConfig::resolve(cli)?;
    match cli.command {
        Cmd::Bernstein => cmd_bernstein(&cfg),
        Cmd::Grid => cmd_grid(&cfg),
        Cmd::VerifyEmbedding => cmd_verify_embedding(&cfg),
        Cmd::Lasq => cmd_lasq(&cfg),
        Cmd::HalfBall => cmd_half_ball(&cfg),
        Cmd::OhProbe => cmd_oh_probe(&cfg),
        Cmd::Norm => cmd_norm(&cfg),
        Cmd::MuntzCheck => cmd_muntz_check(&cfg),
    }
}

fn init_thread_pool() {
    if let Ok(raw) = std::env::var("MUNTZ_LAB_THREADS") {
        if let Ok(threads) = raw.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

/// Entry point for the binary; parses arguments, runs one pipeline, maps
/// errors to exit codes.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => USAGE_EXIT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_thread_pool();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(line: &str) -> Cli {
        Cli::try_parse_from(line.split_whitespace()).unwrap()
    }

    #[test]
    fn parses_explicit_sequences() {
        let cli = parse("muntz-lab norm --seq 0,1,2 --coeffs 1,-8,8");
        let cfg = RunConfig::resolve(&cli).unwrap();
        let (seq, n) = cfg.sequence().unwrap();
        assert_eq!(seq.exponents(), &[0.0, 1.0, 2.0]);
        assert_eq!(n, 3);
    }

    #[test]
    fn parses_families_and_requires_n() {
        let cli = parse("muntz-lab muntz-check --family geometric:2 --n 4");
        let cfg = RunConfig::resolve(&cli).unwrap();
        let (seq, _) = cfg.sequence().unwrap();
        assert_eq!(seq.exponents(), &[1.0, 2.0, 4.0, 8.0]);

        let missing = parse("muntz-lab muntz-check --family geometric:2");
        assert!(RunConfig::resolve(&missing).unwrap().sequence().is_err());
    }

    #[test]
    fn rejects_conflicting_sequence_sources() {
        let cli = parse("muntz-lab muntz-check --seq 1,2 --family power:2 --n 2");
        assert!(RunConfig::resolve(&cli).unwrap().sequence().is_err());
        let neither = parse("muntz-lab muntz-check");
        assert!(RunConfig::resolve(&neither).unwrap().sequence().is_err());
    }

    #[test]
    fn family_descriptor_parsing() {
        assert_eq!(parse_family("geometric:2").unwrap(), FamilyKind::Geometric(2.0));
        assert_eq!(parse_family("power: 2 ").unwrap(), FamilyKind::Power(2.0));
        assert!(parse_family("geometric").is_err());
        assert!(parse_family("explicit:1").is_err());
        assert!(parse_family("power:abc").is_err());
    }

    #[test]
    fn config_file_fills_gaps_under_flags() {
        let dir = std::env::temp_dir().join("muntz-lab-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# defaults\nseq = 1,2,4\ntrials = 77\nseed = 5\n").unwrap();

        let line = format!("muntz-lab half-ball --config {} --trials 9", path.display());
        let cli = parse(&line);
        let cfg = RunConfig::resolve(&cli).unwrap();
        assert_eq!(cfg.trials, 9);
        assert_eq!(cfg.seed, Some(5));
        let (seq, _) = cfg.sequence().unwrap();
        assert_eq!(seq.exponents(), &[1.0, 2.0, 4.0]);
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        let dir = std::env::temp_dir().join("muntz-lab-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        std::fs::write(&path, "sedd = 5\n").unwrap();
        let line = format!("muntz-lab muntz-check --seq 1,2 --config {}", path.display());
        assert!(RunConfig::resolve(&parse(&line)).is_err());
    }

    #[test]
    fn randomized_commands_insist_on_seeds() {
        let cli = parse("muntz-lab lasq --seq 1,2,4");
        let cfg = RunConfig::resolve(&cli).unwrap();
        assert!(cfg.required_seed().is_err());
    }

    #[test]
    fn internal_errors_map_to_exit_three() {
        assert_eq!(exit_code_for(&Error::UnboundedLp), 3);
        assert_eq!(
            exit_code_for(&Error::CertificationBudget {
                gap: 1.0,
                tol: 0.5,
                evals: 10
            }),
            3
        );
        assert_eq!(exit_code_for(&Error::Precondition("x".into())), 2);
        assert_eq!(exit_code_for(&Error::OutOfDomain(2.0)), 2);
    }
}
