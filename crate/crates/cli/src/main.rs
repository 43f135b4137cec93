use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use shift_test::harness::{
    bound_table_csv, bound_verification_suite, reproduce_fig2, AssociationSpec, ExperimentSpec,
    RunOptions, Verdict,
};
use shift_test::series::{format_series, parse_series, AnySeries};
use shift_test::shift::{segment_length, shifts_for_segment};
use shift_test::sim::{simulate_pair, MarkovPairConfig};
use shift_test::{Alpha, Error, LogOdds, Pearson, SeriesKind, ShiftProfile, Spearman, TestOutcome};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "shift-test",
    version,
    about = "Shift test for independence of autocorrelated time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the shift test on two series files.
    Test(TestArgs),
    /// Simulate a pair of categorical Markov chains.
    Simulate(SimulateArgs),
    /// Reproduce the binary Markov chain experiment end to end.
    #[command(name = "reproduce-fig2")]
    ReproduceFig2(ReproduceArgs),
    /// Compare P(m <= M) under an independent null with both bounds.
    #[command(name = "verify-bounds")]
    VerifyBounds(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Assoc {
    LogOdds,
    Pearson,
    Spearman,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct TestArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    /// Shifts N on each side; the segment length is T - 2N.
    #[arg(
        long,
        required_unless_present = "segment_length",
        conflicts_with = "segment_length"
    )]
    n_shifts: Option<usize>,
    /// Segment length D instead of N; T - D must be even.
    #[arg(long)]
    segment_length: Option<usize>,
    #[arg(long, value_enum, default_value = "log-odds")]
    assoc: Assoc,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value = "0.05")]
    alpha: Alpha,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 300)]
    length: usize,
    #[arg(long, default_value_t = 2)]
    states: u32,
    #[arg(long, default_value_t = 0.1)]
    p_switch: f64,
    #[arg(long, default_value_t = 0.1)]
    p_common: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_x: PathBuf,
    #[arg(long)]
    out_y: PathBuf,
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, default_value_t = 1000)]
    replicates: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to all cores. Output does not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    replicates: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 300)]
    length: usize,
    #[arg(long, default_value_t = 2)]
    states: u32,
    #[arg(long, default_value_t = 0.1)]
    p_switch: f64,
    #[arg(long, default_value_t = 19)]
    n_shifts: usize,
    #[arg(long, value_enum, default_value = "log-odds")]
    assoc: Assoc,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value = "0.05")]
    alpha: Alpha,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug)]
enum CliError {
    /// Unreadable, unwritable or unparsable files.
    Data(String),
    /// Inputs that violate a precondition of the test.
    Precondition(String),
    /// A verification run found a hard failure.
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Verification(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

fn read_series(path: &Path, kind: SeriesKind) -> Result<AnySeries, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    parse_series(&text, kind).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        eprintln!("seed: {s}");
        s
    })
}

fn association_spec(assoc: Assoc, epsilon: f64) -> Result<AssociationSpec, CliError> {
    Ok(match assoc {
        Assoc::LogOdds => {
            LogOdds::new(epsilon)?;
            AssociationSpec::LogOdds { epsilon }
        }
        Assoc::Pearson => AssociationSpec::Pearson,
        Assoc::Spearman => AssociationSpec::Spearman,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ProfilePoint {
    shift: i64,
    score: f64,
}

#[derive(Serialize)]
struct TestReport {
    schema_version: u32,
    association: AssociationSpec,
    length: usize,
    n_shifts: usize,
    segment_length: usize,
    m: usize,
    p_conservative: f64,
    p_approximate: f64,
    alpha: Alpha,
    reject_conservative: bool,
    reject_approximate: bool,
    profile: Vec<ProfilePoint>,
}

impl TestReport {
    fn new(
        association: AssociationSpec,
        length: usize,
        profile: &ShiftProfile<f64>,
        outcome: &TestOutcome,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            association,
            length,
            n_shifts: outcome.n_shifts,
            segment_length: profile.segment_length(),
            m: outcome.m,
            p_conservative: outcome.p_conservative,
            p_approximate: outcome.p_approximate,
            alpha: outcome.alpha,
            reject_conservative: outcome.reject_conservative,
            reject_approximate: outcome.reject_approximate,
            profile: profile
                .iter()
                .map(|(shift, score)| ProfilePoint { shift, score })
                .collect(),
        }
    }
}

fn cmd_test(args: &TestArgs) -> Result<(), CliError> {
    let association = association_spec(args.assoc, args.epsilon)?;
    let kind = match args.assoc {
        Assoc::LogOdds => SeriesKind::Categorical,
        Assoc::Pearson | Assoc::Spearman => SeriesKind::Real,
    };
    let x = read_series(&args.x, kind)?;
    let y = read_series(&args.y, kind)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            x: x.len(),
            y: y.len(),
        }
        .into());
    }
    let n_shifts = match (args.n_shifts, args.segment_length) {
        (Some(n), _) => n,
        (None, Some(d)) => shifts_for_segment(x.len(), d)?,
        (None, None) => unreachable!("clap requires one of --n-shifts or --segment-length"),
    };
    segment_length(x.len(), n_shifts)?;

    let (profile, outcome) = match (&x, &y, args.assoc) {
        (AnySeries::Categorical(xs), AnySeries::Categorical(ys), Assoc::LogOdds) => {
            shift_test::run_test(xs, ys, n_shifts, &LogOdds::new(args.epsilon)?, args.alpha)?
        }
        (_, _, Assoc::Pearson) => {
            shift_test::run_test(&x.to_real(), &y.to_real(), n_shifts, &Pearson, args.alpha)?
        }
        (_, _, Assoc::Spearman) => {
            shift_test::run_test(&x.to_real(), &y.to_real(), n_shifts, &Spearman, args.alpha)?
        }
        _ => unreachable!("series kind follows the association"),
    };

    let contents = match args.format {
        Format::Json => to_json(&TestReport::new(association, x.len(), &profile, &outcome)),
        Format::Csv => {
            let mut s = String::from("shift,score\n");
            for (shift, score) in profile.iter() {
                s.push_str(&format!("{shift},{score}\n"));
            }
            s
        }
    };
    emit(args.out.as_deref(), &contents)
}

#[derive(Serialize)]
struct SimulateReport {
    schema_version: u32,
    code_version: &'static str,
    config: MarkovPairConfig,
    x: String,
    y: String,
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let config = MarkovPairConfig {
        length: args.length,
        n_states: args.states,
        p_switch: args.p_switch,
        p_common: args.p_common,
        seed: resolve_seed(args.seed),
    };
    config.validate()?;
    let (x, y) = simulate_pair(&config)?;
    write_file(&args.out_x, &format_series(&x))?;
    write_file(&args.out_y, &format_series(&y))?;
    let report = SimulateReport {
        schema_version: SCHEMA_VERSION,
        code_version: env!("CARGO_PKG_VERSION"),
        config,
        x: args.out_x.display().to_string(),
        y: args.out_y.display().to_string(),
    };
    let mut sidecar = args.out_x.clone().into_os_string();
    sidecar.push(".json");
    write_file(Path::new(&sidecar), &to_json(&report))
}

fn cmd_reproduce(args: &ReproduceArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed);
    let opts = RunOptions {
        workers: args.workers,
        ..RunOptions::default()
    };
    let output = reproduce_fig2(args.replicates, seed, &opts)?;
    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.out.display())))?;
    for (name, contents) in &output.files {
        write_file(&args.out.join(name), contents)?;
    }
    let show = |label: &str, verdict: Verdict, rejections: u64| {
        eprintln!(
            "{label}: {rejections}/{} rejections, {verdict:?}",
            args.replicates
        );
    };
    show(
        "independent",
        output.summary.independent.verdict,
        output.summary.independent.rejections,
    );
    show(
        "correlated",
        output.summary.correlated.verdict,
        output.summary.correlated.rejections,
    );
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema_version: u32,
    code_version: &'static str,
    spec: &'a ExperimentSpec,
    conservative_bound_held: bool,
    table: &'a shift_test::harness::BoundTable,
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed);
    let spec = ExperimentSpec {
        replicates: args.replicates,
        pair: MarkovPairConfig {
            length: args.length,
            n_states: args.states,
            p_switch: args.p_switch,
            p_common: 0.0,
            seed,
        },
        n_shifts: args.n_shifts,
        association: association_spec(args.assoc, args.epsilon)?,
        alpha: args.alpha,
        master_seed: seed,
    };
    let grid: Vec<usize> = (1..=2 * args.n_shifts + 1).collect();
    let opts = RunOptions {
        workers: args.workers,
        ..RunOptions::default()
    };
    let table = bound_verification_suite(&spec, &grid, &opts)?;
    let contents = match args.format {
        Format::Json => to_json(&VerifyReport {
            schema_version: SCHEMA_VERSION,
            code_version: env!("CARGO_PKG_VERSION"),
            spec: &spec,
            conservative_bound_held: table.conservative_held(),
            table: &table,
        }),
        Format::Csv => bound_table_csv(&table),
    };
    emit(args.out.as_deref(), &contents)?;
    if table.conservative_held() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "conservative bound violated at M = {:?}",
            table.conservative_violations()
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Test(args) => cmd_test(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::ReproduceFig2(args) => cmd_reproduce(args),
        Command::VerifyBounds(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Data(m) | CliError::Precondition(m) | CliError::Verification(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}
