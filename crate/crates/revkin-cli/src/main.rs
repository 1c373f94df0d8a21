//! Command-line front end: run the preset analyses, analyze mechanism
//! description files, verify the exact rotation-algebra core, emit
//! motion-curve samples for plotting, and run the Gröbner engine on
//! serialized ideals.

mod golden;
mod report;
mod sample;
mod specfile;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use revkin_core::groebner::{
    buchberger, ideal_from_text, ideal_to_text, parse_order, Budget, GroebnerError,
};
use revkin_core::mechanism::bennett::BennettParameters;
use revkin_core::mechanism::MechanismError;
use revkin_core::scalar::ExactScalar;

/// Stable exit codes: success, verification failure, budget exhaustion,
/// input error.
#[derive(Debug)]
pub enum CliError {
    Verification(String),
    Budget(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Input(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Budget(m) | CliError::Input(m) => m,
        }
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MechanismError> for CliError {
    fn from(e: MechanismError) -> Self {
        match e {
            MechanismError::Groebner(GroebnerError::BudgetExhausted { .. }) => {
                CliError::Budget(e.to_string())
            }
            MechanismError::Inadmissible(_) | MechanismError::Invalid(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "revkin",
    version,
    about = "Exact kinematic analysis of revolute-joint mechanisms via Groebner bases"
)]
struct Cli {
    /// Reduction-step budget for ideal computations; the environment
    /// variable REVKIN_BUDGET overrides the built-in default, and this
    /// flag overrides both.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact rotation-algebra and joint-decomposition suite
    VerifyCore {
        /// Number of randomized exact instances
        #[arg(long, default_value_t = 500)]
        count: u64,
        /// Seed of the deterministic instance generator
        #[arg(long, default_value_t = 20260826)]
        seed: u64,
    },
    /// Analyze the octahedral six-bar preset
    Bricard {
        /// Compare the reference bases against the stored golden files
        /// and report the diff instead of running the full analysis
        #[arg(long)]
        golden: bool,
        /// Write the machine-readable report (JSON) here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Analyze the spatial four-bar preset at exact rational parameters
    Bennett {
        /// The three parameters as exact rationals: p/q,p/q,p/q
        #[arg(long)]
        m: String,
        /// Write the machine-readable report (JSON) here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Analyze a mechanism description file
    Analyze {
        /// Mechanism description ([bodies]/[joints]/[initial]/[parameters])
        #[arg(long)]
        input: PathBuf,
        /// Write the machine-readable report (JSON) here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit motion-curve samples with residual columns
    Sample {
        /// Samples per branch
        #[arg(long, default_value_t = 360)]
        count: usize,
        /// Which preset to sample: bricard or bennett
        #[arg(long, default_value = "bricard")]
        mechanism: String,
        /// Bennett parameters p/q,p/q,p/q (bennett only)
        #[arg(long)]
        m: Option<String>,
        /// Maximum admissible residual per emitted row
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute a reduced Groebner basis of a serialized ideal
    Gb {
        /// Ideal in the text format (universe/order headers + generators)
        #[arg(long)]
        input: PathBuf,
        /// Override the file's order: lex | degrevlex | block kind(v,..) ..
        #[arg(long)]
        order: Option<String>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Default reduction budget, generous enough for both preset pipelines.
const DEFAULT_BUDGET: u64 = 200_000_000;

fn resolve_budget(flag: Option<u64>) -> Result<Budget, CliError> {
    if let Some(b) = flag {
        return Ok(Budget::new(b));
    }
    if let Ok(text) = std::env::var("REVKIN_BUDGET") {
        let b: u64 = text
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("REVKIN_BUDGET is not an integer: `{text}`")))?;
        return Ok(Budget::new(b));
    }
    Ok(Budget::new(DEFAULT_BUDGET))
}

pub fn parse_rational(text: &str) -> Result<ExactScalar, CliError> {
    if text.contains('.') {
        return Err(CliError::Input(format!(
            "`{text}`: decimal floats are rejected; use exact rationals p/q"
        )));
    }
    ExactScalar::parse(text.trim())
        .map_err(|e| CliError::Input(format!("`{text}`: {e}")))
}

fn parse_m(text: &str) -> Result<BennettParameters, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!(
            "expected three comma-separated rationals, got `{text}`"
        )));
    }
    let m0 = parse_rational(parts[0])?;
    let m1 = parse_rational(parts[1])?;
    let m2 = parse_rational(parts[2])?;
    BennettParameters::new(m0, m1, m2).map_err(CliError::from)
}

fn write_or_print(output: &Option<PathBuf>, content: &str) -> CliResult {
    match output {
        Some(path) => std::fs::write(path, content).map_err(CliError::from),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn run_gb(input: &PathBuf, order: &Option<String>, output: &Option<PathBuf>, budget: &Budget) -> CliResult {
    let text = std::fs::read_to_string(input)?;
    let (ideal, file_order) = ideal_from_text(&text).map_err(|e| {
        CliError::Input(format!("{}: {e}", input.display()))
    })?;
    let order = match order {
        Some(spec) => {
            // accept `block:kind(v,..);kind(v,..)` as flag-friendly syntax
            let normalized = spec.replace("block:", "block ").replace(';', " ");
            parse_order(&normalized, ideal.universe())?
        }
        None => file_order,
    };
    let gb = buchberger(&ideal, &order, budget)?;
    let rendered = ideal_to_text(&gb.as_ideal(), &order);
    write_or_print(output, &rendered)
}

fn dispatch(cli: Cli) -> CliResult {
    let budget = resolve_budget(cli.budget)?;
    match &cli.command {
        Command::VerifyCore { count, seed } => verify::run(*count, *seed, &budget),
        Command::Bricard { golden, output } => {
            if *golden {
                golden::run(&budget)
            } else {
                report::run_bricard(output, &budget)
            }
        }
        Command::Bennett { m, output } => {
            let m = parse_m(m)?;
            report::run_bennett(&m, output, &budget)
        }
        Command::Analyze { input, output } => {
            let text = std::fs::read_to_string(input)?;
            let (spec, init) = specfile::parse(&text)
                .map_err(|e| CliError::Input(format!("{}:{e}", input.display())))?;
            report::run_spec(&spec, &init, output, &budget)
        }
        Command::Sample { count, mechanism, m, tolerance, format, output } => {
            if *count < 1 {
                return Err(CliError::Input("sample count must be at least 1".into()));
            }
            if *tolerance <= 0.0 {
                return Err(CliError::Input("tolerance must be positive".into()));
            }
            match mechanism.as_str() {
                "bricard" => sample::run_bricard(*count, *tolerance, *format, output),
                "bennett" => {
                    let m = m
                        .as_deref()
                        .ok_or_else(|| CliError::Input("bennett sampling needs --m".into()))?;
                    let m = parse_m(m)?;
                    sample::run_bennett(&m, *count, *tolerance, *format, output)
                }
                other => Err(CliError::Input(format!("unknown mechanism `{other}`"))),
            }
        }
        Command::Gb { input, order, output } => run_gb(input, order, output, &budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
