//! Command-line surface for batch divergence computation, exponent-curve
//! export, and seeded verification suites.

mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use renyi_sc::cqcoding::{channel_from_json, coding_exponent_curve, CqChannel};
use renyi_sc::divergences::{
    measured_renyi, petz_renyi, sandwiched_renyi, DivergenceKind,
    DivergenceResult, OptimizerConfig, RenyiOrder,
};
use renyi_sc::hypotest::{commuting_diagonals, default_alpha_grid, sc_exponent_curve, ExponentCurve};
use renyi_sc::opalg::{matrix_from_json, matrix_to_json, DensityOperator, MatrixJson};
use renyi_sc::Error;

const EXIT_INPUT: u8 = 1;
const EXIT_INFINITE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_PROPERTY: u8 = 4;

#[derive(Parser)]
#[command(name = "renyi-sc", about = "Quantum Rényi divergences and strong-converse bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a divergence between two states given as JSON matrix files.
    Divergence(DivergenceArgs),
    /// Export a strong-converse exponent curve as CSV.
    Exponent(ExponentArgs),
    /// Run seeded randomized property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DivergenceArgs {
    /// State file for ρ (JSON {"dim": n, "re": [[..]], "im": [[..]]}).
    rho: PathBuf,
    /// State file for σ.
    sigma: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Report values in bits instead of nats.
    #[arg(long)]
    bits: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional output file (written atomically); stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Classical,
    Petz,
    Sandwiched,
    Measured,
}

#[derive(Args)]
struct ExponentArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// State files (mode hypothesis) or a channel file (mode coding).
    inputs: Vec<PathBuf>,
    /// Rates: comma-separated values, or lo:hi:count for a linear grid.
    #[arg(long)]
    rates: String,
    /// Optional α grid (comma-separated, ≥ 1); defaults to the built-in grid.
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long)]
    bits: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Hypothesis,
    Coding,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 100)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional file for the machine-readable report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Holder,
    Variational,
    Converse,
    Coding,
    All,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Divergence(args) => cmd_divergence(&args),
        Command::Exponent(args) => cmd_exponent(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn configure_threads() {
    if let Ok(n) = std::env::var("RENYI_SC_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn read_state(path: &Path) -> Result<DensityOperator, Error> {
    let text = std::fs::read_to_string(path)?;
    let json: MatrixJson = serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    DensityOperator::new(matrix_from_json(&json)?)
}

fn read_channel(path: &Path) -> Result<CqChannel, Error> {
    let text = std::fs::read_to_string(path)?;
    let json = serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    channel_from_json(&json)
}

/// Writes through a temporary file in the target directory, then renames, so
/// a failed run never leaves a partial output file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Error> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    std::io::Write::write_all(&mut tmp, contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Error> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn scale_for(bits: bool) -> f64 {
    if bits {
        std::f64::consts::LN_2
    } else {
        1.0
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    if let Some((lo, rest)) = text.split_once(':') {
        if let Some((hi, count)) = rest.split_once(':') {
            let lo: f64 = lo.parse().map_err(|_| Error::Malformed(text.into()))?;
            let hi: f64 = hi.parse().map_err(|_| Error::Malformed(text.into()))?;
            let count: usize = count.parse().map_err(|_| Error::Malformed(text.into()))?;
            if count < 2 || hi <= lo {
                return Err(Error::Malformed(format!("bad grid spec {text}")));
            }
            let step = (hi - lo) / (count - 1) as f64;
            return Ok((0..count).map(|i| lo + step * i as f64).collect());
        }
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Malformed(format!("bad number {t}")))
        })
        .collect()
}

fn parse_alphas(text: Option<&str>) -> Result<Vec<RenyiOrder>, Error> {
    match text {
        None => Ok(default_alpha_grid()),
        Some(t) => t
            .split(',')
            .map(|s| {
                let s = s.trim();
                let v = if s.eq_ignore_ascii_case("inf") {
                    f64::INFINITY
                } else {
                    s.parse::<f64>()
                        .map_err(|_| Error::Malformed(format!("bad alpha {s}")))?
                };
                if v < 1.0 {
                    return Err(Error::InvalidOrder(v));
                }
                RenyiOrder::new(v)
            })
            .collect(),
    }
}

fn cmd_divergence(args: &DivergenceArgs) -> Result<ExitCode, Error> {
    let rho = read_state(&args.rho)?;
    let sigma = read_state(&args.sigma)?;
    let order = RenyiOrder::new(args.alpha)?;
    let scale = scale_for(args.bits);
    let (value, result) = match args.kind {
        KindArg::Classical => {
            let (p, q) = commuting_diagonals(&rho, &sigma).ok_or(Error::Malformed(
                "classical kind requires commuting states".into(),
            ))?;
            let v = renyi_sc::divergences::classical_renyi(&p, &q, order)?;
            (v, DivergenceResult::new(v / scale, order, DivergenceKind::Classical))
        }
        KindArg::Petz => {
            let v = petz_renyi(&rho, &sigma, order);
            (v, DivergenceResult::new(v / scale, order, DivergenceKind::Petz))
        }
        KindArg::Sandwiched => {
            let v = sandwiched_renyi(&rho, &sigma, order);
            (v, DivergenceResult::new(v / scale, order, DivergenceKind::Sandwiched))
        }
        KindArg::Measured => {
            let cfg = OptimizerConfig::default().with_seed(args.seed);
            let m = measured_renyi(&rho, &sigma, order, &cfg)?;
            let witness = m
                .witness
                .projectors()
                .iter()
                .map(matrix_to_json)
                .collect();
            (
                m.value,
                DivergenceResult::new(m.value / scale, order, DivergenceKind::Measured)
                    .with_witness(witness)
                    .lower_bound(),
            )
        }
    };
    let mut text = serde_json::to_string_pretty(&result)
        .map_err(|e| Error::Malformed(e.to_string()))?;
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    if value.is_infinite() {
        return Ok(ExitCode::from(EXIT_INFINITE));
    }
    Ok(ExitCode::SUCCESS)
}

fn curve_csv(curve: &ExponentCurve, scale: f64) -> String {
    let mut out = String::from("rate,exponent,alpha_star\n");
    for p in &curve.points {
        out.push_str(&format!(
            "{},{},{}\n",
            p.rate / scale,
            p.exponent / scale,
            p.alpha_star
        ));
    }
    out
}

fn cmd_exponent(args: &ExponentArgs) -> Result<ExitCode, Error> {
    let rates_nats = {
        let raw = parse_grid(&args.rates)?;
        let scale = scale_for(args.bits);
        raw.into_iter().map(|r| r * scale).collect::<Vec<_>>()
    };
    let alphas = parse_alphas(args.alphas.as_deref())?;
    let curve = match args.mode {
        ModeArg::Hypothesis => {
            if args.inputs.len() != 2 {
                return Err(Error::Malformed(
                    "mode hypothesis expects two state files".into(),
                ));
            }
            let rho = read_state(&args.inputs[0])?;
            let sigma = read_state(&args.inputs[1])?;
            sc_exponent_curve(&rho, &sigma, &rates_nats, &alphas)
        }
        ModeArg::Coding => {
            if args.inputs.len() != 1 {
                return Err(Error::Malformed("mode coding expects one channel file".into()));
            }
            let ch = read_channel(&args.inputs[0])?;
            let cfg = OptimizerConfig::default().with_seed(args.seed).with_restarts(4);
            coding_exponent_curve(&ch, &rates_nats, &alphas, &cfg)?
        }
    };
    let scale = scale_for(args.bits);
    let rendered = match args.format {
        FormatArg::Csv => curve_csv(&curve, scale),
        FormatArg::Json => {
            let mut text = serde_json::to_string_pretty(&curve)
                .map_err(|e| Error::Malformed(e.to_string()))?;
            text.push('\n');
            text
        }
    };
    match args.out.as_deref() {
        Some(path) => {
            write_atomic(path, &rendered)?;
            match curve.positivity_threshold() {
                Some(t) => println!("positivity_threshold: {}", t / scale),
                None => println!("positivity_threshold: none"),
            }
        }
        None => {
            print!("{rendered}");
            match curve.positivity_threshold() {
                Some(t) => eprintln!("positivity_threshold: {}", t / scale),
                None => eprintln!("positivity_threshold: none"),
            }
        }
    }
    if curve.support_violation {
        return Ok(ExitCode::from(EXIT_INFINITE));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, Error> {
    let report = suites::run(args.suite, args.seeds, args.seed)?;
    let mut text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Malformed(e.to_string()))?;
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    if args.out.is_some() {
        println!(
            "{}: {} checks, {} failures",
            report.suite,
            report.checks,
            report.failures.len()
        );
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_PROPERTY))
    }
}
