use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use yuzvinski_cli::commands::Explicit;
use yuzvinski_cli::{
    run_classify, run_entropy, run_mahler, run_polygon, run_trajectory, run_verify, CliError, CliResult, InputSpec,
    Options, Suite,
};

#[derive(Parser)]
#[command(name = "yuzvinski", version, about = "Algebraic entropy of rational matrices and Mahler measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of a matrix (or of a primitive polynomial) with its per-place split.
    Entropy(Source),
    /// Certified Mahler measure and root enclosures.
    Mahler(Source),
    /// Newton polygons at the primes dividing the leading coefficient (or at --prime).
    Polygon {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Exact trajectory counts and growth estimates.
    Trajectory {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Growth classification of the trajectory counts, checked against the entropy.
    Classify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Seeded property suites.
    Verify {
        /// place-identity, multiplicativity, reciprocal, block-additivity, oracle-agreement or kronecker.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args)]
struct Source {
    /// JSON input document.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Inline matrix, e.g. '[["3/2"]]'.
    #[arg(long, conflicts_with = "input")]
    matrix: Option<String>,
    /// Inline coefficients in ascending degree order, e.g. '[1,-5,6]'.
    #[arg(long, conflicts_with_all = ["input", "matrix"])]
    poly: Option<String>,
    /// Initial working precision for root refinement, in bits.
    #[arg(long)]
    precision: Option<u32>,
    /// Accuracy target for the archimedean part.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    /// Grid parameter; 0 picks an admissible value from the matrix.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    max_n: Option<usize>,
    /// Maximum number of stored points per level.
    #[arg(long)]
    budget: Option<usize>,
    /// Parallel workers for the set expansion.
    #[arg(long)]
    partitions: Option<usize>,
}

fn load(source: &Source) -> CliResult<InputSpec> {
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        return InputSpec::from_json(&text);
    }
    if let Some(m) = &source.matrix {
        return InputSpec::from_json(&format!(r#"{{"matrix": {m}}}"#));
    }
    if let Some(p) = &source.poly {
        return InputSpec::from_json(&format!(r#"{{"poly": {p}}}"#));
    }
    Err(CliError::Input("give --input, --matrix or --poly".into()))
}

fn options(source: &Source, run: Option<&RunArgs>, doc: &InputSpec) -> Options {
    let mut o = Options::default();
    let mut explicit = Explicit::default();
    if let Some(p) = source.precision {
        o.precision = p;
        explicit.precision = true;
    }
    if let Some(t) = source.tolerance {
        o.tolerance = t;
        explicit.tolerance = true;
    }
    if let Some(r) = run {
        if let Some(m) = r.m {
            o.m = m;
            explicit.m = true;
        }
        if let Some(n) = r.max_n {
            o.n_max = n;
            explicit.n_max = true;
        }
        if let Some(b) = r.budget {
            o.budget = b;
            explicit.budget = true;
        }
        o.partitions = r
            .partitions
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    }
    o.merged(doc, &explicit)
}

fn execute(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Entropy(source) => {
            let doc = load(source)?;
            run_entropy(&doc, &options(source, None, &doc))
        }
        Command::Mahler(source) => {
            let doc = load(source)?;
            run_mahler(&doc, &options(source, None, &doc))
        }
        Command::Polygon { source, prime } => {
            let doc = load(source)?;
            let mut o = options(source, None, &doc);
            o.prime = *prime;
            run_polygon(&doc, &o)
        }
        Command::Trajectory { source, run } => {
            let doc = load(source)?;
            run_trajectory(&doc, &options(source, Some(run), &doc))
        }
        Command::Classify { source, run } => {
            let doc = load(source)?;
            run_classify(&doc, &options(source, Some(run), &doc))
        }
        Command::Verify { suite, seed, count } => run_verify(suite.parse::<Suite>()?, *seed, *count),
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("JSON values serialize")
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(v: &Value, pretty: bool) {
    let _ = writeln!(std::io::stdout().lock(), "{}", render(v, pretty));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(doc) => {
            emit(&doc, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(doc) = e.document().filter(|d| !d.is_null()) {
                emit(doc, cli.pretty);
            }
            eprintln!("yuzvinski: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
