use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monogamy::campaign::{cmd_verify, AlphaChoice, CampaignConfig, DEFAULT_TOLERANCE};
use monogamy::figures::{cmd_example, AlphaGrid, Example, DEFAULT_ALPHA_MAX, DEFAULT_Q, DEFAULT_STEP};
use monogamy::state_report::{cmd_state, report_csv, report_outcome, report_text, SplitSpec, StateRequest};
use monogamy::{parse_measure, CliError, CliResult, Outcome};

/// Entanglement monogamy laboratory: worked examples, random-state
/// campaigns and single-state reports.
#[derive(Parser, Debug)]
#[command(name = "monogamy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep one of the four worked examples over α and print CSV.
    Example(ExampleArgs),
    /// Run a soundness campaign over Haar-random states.
    Verify(VerifyArgs),
    /// Evaluate measures and bounds on a JSON state file.
    State(StateArgs),
}

#[derive(Args, Debug)]
struct ExampleArgs {
    /// Example number, 1 to 4.
    #[arg(long = "example", short = 'k')]
    example: u8,
    /// Defaults to the measure's floor.
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_ALPHA_MAX)]
    alpha_max: f64,
    #[arg(long, default_value_t = DEFAULT_STEP)]
    alpha_step: f64,
    /// Tsallis index for example 4.
    #[arg(long, default_value_t = DEFAULT_Q)]
    q: f64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Number of qubits per state.
    #[arg(long, default_value_t = 3)]
    qubits: usize,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Base seed; the MONOGAMY_SEED environment variable takes precedence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated measures, or "all".
    #[arg(long, default_value = "all")]
    measure: String,
    #[arg(long, default_value_t = DEFAULT_Q)]
    q: f64,
    /// Comma-separated powers; "floor" means each measure's own floor.
    #[arg(long = "alpha", default_value = "floor,2,3")]
    alphas: String,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Also write the summary CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// JSON state file.
    path: PathBuf,
    #[arg(long, default_value_t = 0)]
    focus: usize,
    /// Comma-separated order of the non-focus qubits.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    #[arg(long, default_value = "concurrence")]
    measure: String,
    #[arg(long, default_value_t = DEFAULT_Q)]
    q: f64,
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Split index or "auto".
    #[arg(long, default_value = "auto")]
    m: SplitSpec,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Write the one-row CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

const SEED_ENV: &str = "MONOGAMY_SEED";

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(text: &str) -> CliResult<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn run_example(args: ExampleArgs) -> CliResult<Outcome> {
    let example = Example::new(args.example, args.q)?;
    let min = args.alpha_min.unwrap_or(example.measure.alpha_floor());
    let grid = AlphaGrid::new(min, args.alpha_max, args.alpha_step)?;
    let csv = cmd_example(args.example, args.q, &grid)?;
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => emit(&csv)?,
    }
    Ok(Outcome::Clean)
}

fn run_verify(args: VerifyArgs) -> CliResult<Outcome> {
    let measures = if args.measure.trim().eq_ignore_ascii_case("all") {
        ["concurrence", "eof", "cren", "tsallis"]
            .iter()
            .map(|m| parse_measure(m, args.q))
            .collect::<CliResult<Vec<_>>>()?
    } else {
        args.measure
            .split(',')
            .map(|m| parse_measure(m, args.q))
            .collect::<CliResult<Vec<_>>>()?
    };
    let alphas = args
        .alphas
        .split(',')
        .map(AlphaChoice::parse)
        .collect::<CliResult<Vec<_>>>()?;
    let seed = match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}={text:?} is not a 64-bit unsigned integer")))?,
        Err(_) => args.seed,
    };
    let cfg = CampaignConfig {
        n_qubits: args.qubits,
        samples: args.samples,
        seed,
        measures,
        alphas,
        tolerance: args.tolerance,
    };
    let summary = cmd_verify(&cfg)?;
    emit(&summary.to_text())?;
    if let Some(path) = &args.out {
        write_file(path, &summary.to_csv())?;
    }
    Ok(summary.outcome())
}

fn run_state(args: StateArgs) -> CliResult<Outcome> {
    let req = StateRequest {
        focus: args.focus,
        order: args.order,
        measure: parse_measure(&args.measure, args.q)?,
        alpha: args.alpha,
        m: args.m,
    };
    let report = cmd_state(&args.path, &req)?;
    emit(&report_text(&report))?;
    if let Some(path) = &args.out {
        write_file(path, &report_csv(&report))?;
    }
    Ok(report_outcome(&report, args.tolerance))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Example(a) => run_example(a),
        Command::Verify(a) => run_verify(a),
        Command::State(a) => run_state(a),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
