//! planar-count: count planar matchings in regular ordered bipartite
//! multigraphs, cross-verify the counting routes, and expand the related
//! generating functions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
//! exhausted. All machine output is byte-deterministic for fixed arguments.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use planar_count::error::Error;
use planar_count::oracle::{self, VerifyOptions};
use planar_count::series;
use planar_count::tableaux::{count_tableau_pairs, BlockCondition};
use planar_count::walks::{count_chamber_walks, signed_toeplitz_sum, BlockOrder};
use planar_count::Budget;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "planar-count", version, about = "Exact counts of planar matchings in regular bipartite multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count r-regular multigraphs whose planar matching or subgraph number is at most d
    Count(CountArgs),
    /// Run the cross-method verification battery and emit a report
    Verify(VerifyArgs),
    /// Expand a generating function and print its exact rational coefficients
    Series(SeriesArgs),
}

#[derive(Args)]
struct CountArgs {
    /// Size of each vertex part
    #[arg(long)]
    n: usize,
    /// Degree of every vertex
    #[arg(long)]
    r: usize,
    /// Bound on the planar matching (or subgraph) number
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value_t = Method::Walks)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Variant::Matching)]
    variant: Variant,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enumeration cap; overrides PLANAR_COUNT_BUDGET
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Walks,
    Tableaux,
    Chamber,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Variant {
    Matching,
    Subgraph,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest rn covered by the exhaustive claims
    #[arg(long, default_value_t = 6)]
    max_rn: usize,
    /// Largest planarity bound d covered
    #[arg(long, default_value_t = 4)]
    max_d: usize,
    /// Truncation order for the series claims
    #[arg(long, default_value_t = 8)]
    xmax: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
    /// Self-test: plant one wrong row and expect a red report
    #[arg(long, hide = true)]
    corrupt_fixture: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(value_enum)]
    kind: SeriesKind,
    /// Matrix order for the gessel determinant
    #[arg(long)]
    d: Option<usize>,
    /// Keep powers of x up to this bound
    #[arg(long, default_value_t = 12)]
    xmax: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// det(I_{|i-j|}(2x)) of Bessel-type entries, order d
    Gessel,
    /// Exponential generating function of 2-regular planar matching counts
    MatchingGf,
}

#[derive(Serialize)]
struct CountRecord {
    n: usize,
    r: usize,
    d: usize,
    method: String,
    variant: String,
    count: String,
}

#[derive(Serialize)]
struct CoefficientRecord {
    power: i64,
    numerator: String,
    denominator: String,
}

#[derive(Serialize)]
struct SeriesRecord {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    xmax: i64,
    coefficients: Vec<CoefficientRecord>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Series(args) => cmd_series(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } | Error::StateLimit { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn budget_from(cap: Option<u64>) -> Budget {
    cap.map(Budget::new).unwrap_or_default()
}

fn enum_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn cmd_count(args: CountArgs) -> planar_count::Result<ExitCode> {
    let budget = budget_from(args.budget);
    let count = match (args.method, args.variant) {
        (Method::Brute, Variant::Matching) => oracle::brute_g(args.n, args.r, args.d, &budget)?,
        (Method::Brute, Variant::Subgraph) => oracle::brute_g_hat(args.n, args.r, args.d, &budget)?,
        (Method::Walks, Variant::Matching) => {
            signed_toeplitz_sum(args.d, args.n, args.r, BlockOrder::Nonincreasing)?
        }
        (Method::Walks, Variant::Subgraph) => signed_toeplitz_sum(args.d, args.n, args.r, BlockOrder::Increasing)?,
        (Method::Tableaux, Variant::Matching) => {
            count_tableau_pairs(args.n, args.r, args.d, BlockCondition::StrictDescent)
        }
        (Method::Tableaux, Variant::Subgraph) => {
            count_tableau_pairs(args.n, args.r, args.d, BlockCondition::WeakAscent)
        }
        (Method::Chamber, Variant::Matching) => count_chamber_walks(args.d, args.n, args.r, &budget)?,
        (Method::Chamber, Variant::Subgraph) => {
            return Err(Error::Invalid("the chamber route counts matchings only".to_string()))
        }
    };
    let record = CountRecord {
        n: args.n,
        r: args.r,
        d: args.d,
        method: enum_name(args.method),
        variant: enum_name(args.variant),
        count: count.to_string(),
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&record).expect("record serializes")),
        Format::Csv => {
            println!("n,r,d,method,variant,count");
            println!("{},{},{},{},{},{}", record.n, record.r, record.d, record.method, record.variant, record.count);
        }
        Format::Text => println!("{}", record.count),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> planar_count::Result<ExitCode> {
    if args.xmax < 0 {
        return Err(Error::Invalid("xmax must be nonnegative".to_string()));
    }
    let budget = budget_from(args.budget);
    let opts = VerifyOptions {
        max_rn: args.max_rn,
        max_d: args.max_d,
        x_bound: args.xmax,
        corrupt: args.corrupt_fixture,
    };
    let report = oracle::verify_all(&opts, &budget)?;
    let rendered = match args.format {
        Format::Json => report.to_json_string(),
        Format::Csv => report.to_csv_string(),
        Format::Text => {
            let mut out = String::new();
            for row in &report.rows {
                out.push_str(if row.pass { "PASS " } else { "FAIL " });
                out.push_str(&format!("{} [{}] expected={}", row.claim, row.params, row.expected));
                for mv in &row.values {
                    out.push_str(&format!(" {}={}", mv.method, mv.value));
                }
                out.push('\n');
            }
            out.push_str(&format!("{} passed, {} failed", report.passed, report.failed));
            out
        }
    };
    let rendered = rendered.trim_end_matches('\n').to_string();
    match &args.out {
        Some(path) => {
            std::fs::write(path, rendered + "\n")
                .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            println!("{} passed, {} failed", report.passed, report.failed);
        }
        None => println!("{rendered}"),
    }
    Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_series(args: SeriesArgs) -> planar_count::Result<ExitCode> {
    if args.xmax < 0 {
        return Err(Error::Invalid("xmax must be nonnegative".to_string()));
    }
    let budget = budget_from(args.budget);
    budget.check_at_least(args.xmax as u64)?;
    let (series, d) = match args.kind {
        SeriesKind::Gessel => {
            let d = args
                .d
                .ok_or_else(|| Error::Invalid("the gessel kind needs --d".to_string()))?;
            (series::gessel_determinant(d, args.xmax), Some(d))
        }
        SeriesKind::MatchingGf => {
            if args.d.is_some() {
                return Err(Error::Invalid("--d applies to the gessel kind only".to_string()));
            }
            (series::two_regular_matching_gf(args.xmax), None)
        }
    };
    let coefficients: Vec<CoefficientRecord> = series
        .x_coefficients()?
        .into_iter()
        // truncation pins this expansion only on the x^{4n} grid
        .filter(|(power, _)| args.kind != SeriesKind::MatchingGf || power % 4 == 0)
        .map(|(power, c): (i64, BigRational)| CoefficientRecord {
            power,
            numerator: c.numer().to_string(),
            denominator: c.denom().to_string(),
        })
        .collect();
    let record = SeriesRecord { kind: enum_name(args.kind), d, xmax: args.xmax, coefficients };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string(&record).expect("record serializes")),
        Format::Csv => {
            println!("power,numerator,denominator");
            for c in &record.coefficients {
                println!("{},{},{}", c.power, c.numerator, c.denominator);
            }
        }
        Format::Text => {
            for c in &record.coefficients {
                let coeff = if c.denominator == "1" {
                    c.numerator.clone()
                } else {
                    format!("{}/{}", c.numerator, c.denominator)
                };
                println!("x^{} {}", c.power, coeff);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
