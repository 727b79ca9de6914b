//! Command-line surface: root enclosures, primitivity checks, class search,
//! claim verification, and table reproduction, with machine-readable output.
//!
//! Exit codes are a contract: 0 success, 1 verification failure, 2 usage
//! error, 3 internal invariant violation.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dilatation_core::classes::{Family, DEFAULT_COEFF_BOUND};
use dilatation_core::error::Error;
use dilatation_core::matrix::{is_primitive_digraph, CompanionDigraph};
use dilatation_core::poly::IntPoly;
use dilatation_core::rational::parse_rational;
use dilatation_core::roots::{largest_root_enclosure, EnclosureJson};
use dilatation_core::search::{search_min, SearchOptions};
use dilatation_core::verify::{
    reproduce_tables, table_report_to_verification, verify_minispec, verify_observation_s,
    verify_perron_property, verify_theorem, VerificationReport,
};
use dilatation_core::ClassSpec;

#[derive(Parser)]
#[command(
    name = "dilatation",
    version,
    about = "Search and verify minimal spectral radii over constrained polynomial classes"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Output format: json, csv (tables only) or text.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Enclosure tolerance as an exact decimal or rational string.
    #[arg(long, global = true)]
    tol: Option<String>,

    /// Worker threads for the search; any value yields byte-identical reports.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Seed for the randomized verifiers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Certified enclosure of the largest root of a class-shaped polynomial.
    Root {
        /// Polynomial as a JSON array (descending powers) or as "x^3 - x^2 - x - 1".
        poly: String,
    },
    /// Primitivity report for the companion digraph of a polynomial.
    Primitive { poly: String },
    /// Certified minimality search over a class.
    Search {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
        bound: u32,
        /// Disable dominance pruning (full exhaustion).
        #[arg(long)]
        no_prune: bool,
    },
    /// Run one of the claim verifiers; exits 0 iff the claim passes.
    Verify {
        #[command(subcommand)]
        claim: VerifyClaim,
    },
    /// Reproduce one of the three dilatation tables; exits 0 iff all rows match.
    Tables {
        #[arg(long)]
        which: u8,
    },
}

#[derive(Subcommand)]
enum VerifyClaim {
    /// Single-pair family: boundary values, monotone roots, minimizer at i = n-1.
    Minispec {
        #[arg(long)]
        n_max: usize,
    },
    /// Degree-drop comparison for the S family.
    ObservationS {
        #[arg(long)]
        k_max: usize,
    },
    /// Seeded dominance battery: lower(T) > upper(L) for every sampled pair.
    Perron {
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        dim_max: usize,
    },
    /// Class search returns the theorem polynomial for each k.
    Theorem {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k_max: u32,
    },
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Json,
    Csv,
    Text,
}

fn parse_format(s: Option<&str>, default: Format) -> Result<Format, Error> {
    match s {
        None => Ok(default),
        Some("json") => Ok(Format::Json),
        Some("csv") => Ok(Format::Csv),
        Some("text") => Ok(Format::Text),
        Some(other) => Err(Error::InvalidParameter(format!(
            "unknown format {other:?} (expected json, csv or text)"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            classify_error(&e)
        }
        Err(_) => {
            eprintln!("error: internal invariant violation");
            ExitCode::from(3)
        }
    }
}

fn classify_error(e: &Error) -> ExitCode {
    match e {
        Error::Undecided(_) | Error::NonConvergence => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Root { poly } => {
            let format = parse_format(g.format.as_deref(), Format::Json)?;
            let p = IntPoly::parse(poly)?;
            let tol = match &g.tol {
                Some(t) => parse_rational(t)?,
                None => parse_rational("1e-12").unwrap(),
            };
            let enc = largest_root_enclosure(&p, &tol)?;
            let json = EnclosureJson::from(&enc);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json).unwrap()),
                Format::Text => println!(
                    "largest root of {} in [{}, {}] ≈ {}",
                    json.poly, json.lo, json.hi, json.approx
                ),
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Primitive { poly } => {
            let format = parse_format(g.format.as_deref(), Format::Json)?;
            let p = IntPoly::parse(poly)?;
            let digraph = CompanionDigraph::companion_of(&p)?;
            let report = is_primitive_digraph(&digraph);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => println!(
                    "{}: strongly connected {}, cycle gcd {}, primitive {}",
                    p,
                    report.strongly_connected,
                    report
                        .cycle_gcd
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "undefined".into()),
                    report.primitive
                ),
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            family,
            k,
            bound,
            no_prune,
        } => {
            let format = parse_format(g.format.as_deref(), Format::Json)?;
            let family: Family = family.parse()?;
            let spec = ClassSpec::new(family, *k, *bound)?;
            let opts = SearchOptions {
                prune: !no_prune,
                threads: g.threads.max(1),
                tol: match &g.tol {
                    Some(t) => parse_rational(t)?,
                    None => dilatation_core::search::default_tol(),
                },
            };
            let report = search_min(&spec, &opts)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => {
                    println!(
                        "class {}, k={} (degree {}): {} candidates, {} pruned, {} excluded",
                        family,
                        k,
                        report.degree,
                        report.enumerated,
                        report.pruned_by_dominance,
                        report.root_location_excluded
                    );
                    println!(
                        "minimizer {} with root in [{}, {}] ≈ {}",
                        report.minimizer,
                        report.enclosure.lo,
                        report.enclosure.hi,
                        report.enclosure.approx
                    );
                    if report.tie {
                        for p in &report.co_minimal {
                            println!("co-minimal: {p}");
                        }
                    }
                    if let Some(ru) = &report.runner_up {
                        println!("runner-up {} ≈ {}", ru.poly, ru.enclosure.approx);
                    }
                }
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { claim } => {
            let format = parse_format(g.format.as_deref(), Format::Text)?;
            let report = match claim {
                VerifyClaim::Minispec { n_max } => verify_minispec(*n_max)?,
                VerifyClaim::ObservationS { k_max } => verify_observation_s(*k_max)?,
                VerifyClaim::Perron { samples, dim_max } => {
                    verify_perron_property(*samples, *dim_max, g.seed)?
                }
                VerifyClaim::Theorem { family, k_max } => {
                    let family: Family = family.parse()?;
                    verify_theorem(family, *k_max, g.threads.max(1))?
                }
            };
            print_verification(&report, format)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Tables { which } => {
            let format = parse_format(g.format.as_deref(), Format::Csv)?;
            let tol = match &g.tol {
                Some(t) => parse_rational(t)?,
                None => parse_rational("1e-7").unwrap(),
            };
            let report = reproduce_tables(*which, &tol)?;
            match format {
                Format::Csv => {
                    println!("g,polynomial,computed,expected,match");
                    for row in &report.rows {
                        println!(
                            "{},{},{},{},{}",
                            row.g, row.polynomial, row.computed, row.expected, row.matched
                        );
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => print_verification(
                    &table_report_to_verification(&report),
                    Format::Text,
                )?,
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn print_verification(report: &VerificationReport, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => print!("{report}"),
        Format::Csv => return Err(csv_unsupported()),
    }
    Ok(())
}

fn csv_unsupported() -> Error {
    Error::InvalidParameter("csv output is only available for tables".into())
}
