use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use prm_core::codes::DEFAULT_ENUMERATION_BUDGET;
use prm_core::search::SearchStrategy;
use prm_weights::ops::{self, ExploreArgs, GeometryArgs, OpError, VerifyArgs, VerifyFamily};
use prm_weights::render::{self, Format};

/// Workbench for minimum and next-to-minimal weights of generalized and
/// projective Reed-Muller codes over small fields.
#[derive(Parser)]
#[command(name = "prm-weights", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: md, csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FieldArgs {
    /// Field order (built-in modulus for prime powers).
    #[arg(long)]
    q: Option<u64>,
    /// Full field spec `p^m[:c0,c1,...,cm]` or `q[:c0,...]`, modulus
    /// coefficients in ascending degree (e.g. `4:1,1,1` for x^2+x+1).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form weight predictions at one parameter point.
    Predict {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check the formulas against the exhaustive oracle and the
    /// witness constructions; exits nonzero on any mismatch.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Maximum number of codewords the oracle may enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        /// Enumeration workers; 0 picks automatically. Results do not
        /// depend on the choice.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Which side to verify: pair (default for d >= 2), rm or prm.
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Regenerate the next-to-minimal weight table for a field order.
    Tables {
        #[arg(long)]
        q: u64,
        /// Largest projective dimension to tabulate.
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify the explicit witness polynomials at one point.
    Witness {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Oracle fallback budget for the affine next-to-minimal witness.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Randomized upper-bound probe for an open prediction cell.
    Explore {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Number of random candidates to sample.
        #[arg(long, default_value_t = 4096)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated strategies: linear-products, quadric-linear,
        /// embed-affine, min-weight-combos. Default: all.
        #[arg(long)]
        strategies: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Support geometry of one homogeneous polynomial.
    Geometry {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        /// Degree; defaults to the degree of the polynomial.
        #[arg(long)]
        d: Option<u32>,
        /// Polynomial in the fixed text syntax over X0..Xn.
        #[arg(long)]
        poly: String,
        /// Budget for the hyperplane-union search.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                OpError::Usage(_) => 1,
                OpError::Discrepancy(_) => 2,
                OpError::BudgetNoResult(_) => 3,
            })
        }
    }
}

fn parse_format(output: &OutputArgs, default: Format) -> Result<Format, OpError> {
    match &output.format {
        None => Ok(default),
        Some(s) => Format::from_str(s).map_err(OpError::Usage),
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), OpError> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| OpError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, OpError> {
    let started = Instant::now();
    let code = match cli.cmd {
        Cmd::Predict {
            field,
            n,
            d,
            output,
        } => {
            let q = resolve_order(&field)?;
            let record = ops::run_predict(q, n, d)?;
            let text = match parse_format(&output, Format::Json)? {
                Format::Json => render::to_json(&record),
                Format::Csv => render::predict_csv(&record),
                Format::Md => render::predict_md(&record),
            };
            emit(&output, &text)?;
            ExitCode::SUCCESS
        }
        Cmd::Verify {
            field,
            n,
            d,
            budget,
            threads,
            family,
            output,
        } => {
            let family = family
                .as_deref()
                .map(|s| match s {
                    "pair" => Ok(VerifyFamily::Pair),
                    "rm" => Ok(VerifyFamily::Rm),
                    "prm" => Ok(VerifyFamily::Prm),
                    other => Err(OpError::Usage(format!(
                        "unknown family `{other}` (expected pair, rm or prm)"
                    ))),
                })
                .transpose()?;
            let record = ops::run_verify(&VerifyArgs {
                q: field.q,
                field: field.field,
                n,
                d,
                budget,
                threads,
                family,
            })?;
            let text = match parse_format(&output, Format::Json)? {
                Format::Json => render::to_json(&record),
                Format::Csv => render::verify_csv(&record),
                Format::Md => render::verify_md(&record),
            };
            emit(&output, &text)?;
            if record.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Cmd::Tables { q, n_max, output } => {
            let record = ops::run_tables(q, n_max)?;
            let text = match parse_format(&output, Format::Md)? {
                Format::Json => render::to_json(&record),
                Format::Csv => render::tables_csv(&record),
                Format::Md => render::tables_md(&record),
            };
            emit(&output, &text)?;
            ExitCode::SUCCESS
        }
        Cmd::Witness {
            field,
            n,
            d,
            budget,
            output,
        } => {
            let record = ops::run_witness(field.q, field.field.as_deref(), n, d, budget)?;
            let text = match parse_format(&output, Format::Json)? {
                Format::Json => render::to_json(&record),
                Format::Csv => render::witnesses_csv(&record),
                Format::Md => render::witnesses_md(&record),
            };
            emit(&output, &text)?;
            if record.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Cmd::Explore {
            field,
            n,
            d,
            budget,
            seed,
            strategies,
            output,
        } => {
            let strategies = match strategies.as_deref() {
                None => SearchStrategy::ALL.to_vec(),
                Some(list) => list
                    .split(',')
                    .map(|s| SearchStrategy::from_str(s.trim()).map_err(OpError::Usage))
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let record = ops::run_explore(&ExploreArgs {
                q: field.q,
                field: field.field,
                n,
                d,
                strategies,
                budget,
                seed,
            })?;
            let text = match parse_format(&output, Format::Json)? {
                Format::Json => render::to_json(&record),
                Format::Csv => render::explore_csv(&record),
                Format::Md => render::explore_md(&record),
            };
            emit(&output, &text)?;
            ExitCode::SUCCESS
        }
        Cmd::Geometry {
            field,
            n,
            d,
            poly,
            budget,
            output,
        } => {
            let record = ops::run_geometry(&GeometryArgs {
                q: field.q,
                field: field.field,
                n,
                d,
                poly,
                budget,
            })?;
            let text = match parse_format(&output, Format::Json)? {
                Format::Json => render::to_json(&record),
                Format::Csv => render::geometry_csv(&record),
                Format::Md => render::geometry_md(&record),
            };
            emit(&output, &text)?;
            if record.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    Ok(code)
}

/// Numeric field order for formula-only commands: `--field` wins when
/// given, otherwise `--q`.
fn resolve_order(args: &FieldArgs) -> Result<u64, OpError> {
    match (&args.field, args.q) {
        (Some(spec), _) => Ok(ops::parse_field_spec(spec)?.order() as u64),
        (None, Some(q)) => Ok(q),
        (None, None) => Err(OpError::Usage("pass --q or --field".into())),
    }
}
