//! Command-line interface: validation, intersection homology, constructions,
//! fixture library, and the verification suites.
//!
//! Exit codes: 0 on success, 1 when a validation or verification check
//! fails, 2 on usage or parse errors.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use strathom::error::Error;
use strathom::filtration::Stratification;
use strathom::ih::intersection_homology;
use strathom::verify::{run_suite, HarnessConfig, Suite};
use strathom::{fixtures, io};

#[derive(Parser)]
#[command(
    name = "strathom",
    about = "Stratified simplicial complexes and perversity intersection homology",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Path of a complex/filtration JSON file
    input: Option<PathBuf>,
    /// Name of a built-in fixture instead of a file
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the stratified pseudomanifold axioms
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Emit JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Compute intersection homology
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// "zero", "top", "lower-middle", "upper-middle", or {"<stratum>": n}
        #[arg(long, default_value = "zero")]
        perversity: String,
        /// Z for Betti numbers with torsion, Q for ranks only
        #[arg(long, default_value = "Z")]
        coefficients: String,
        /// Barycentric subdivisions applied before computing
        #[arg(long, default_value_t = 2)]
        subdivide: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build a derived complex and write it as filtration JSON
    Construct {
        /// cone | suspension | join | product | subdivide | quotient
        kind: String,
        #[command(flatten)]
        input: InputArgs,
        /// Apex label for cones
        #[arg(long, default_value = "apex")]
        apex: String,
        /// Pole labels for suspensions
        #[arg(long, default_value = "north")]
        north: String,
        #[arg(long, default_value = "south")]
        south: String,
        /// Second operand for joins (fixture name or path)
        #[arg(long)]
        with: Option<String>,
        /// Rounds of barycentric subdivision
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Action for quotients: a built-in name or a JSON file path
        #[arg(long)]
        action: Option<String>,
        /// Output path (stdout when omitted)
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run verification suites
    Verify {
        /// cone | product | mv | duality | blowup | quotient | subdivision |
        /// extremes | wellformed | all
        suite: String,
        /// Restrict fixture-driven suites to one fixture
        #[arg(long)]
        fixture: Option<String>,
        /// Print every comparison row, not only failures
        #[arg(long)]
        verbose: bool,
        /// Include runtimes (breaks byte-for-byte determinism)
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        json: bool,
    },
    /// Fixture library
    Fixtures {
        #[command(subcommand)]
        action: FixturesCommand,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// List built-in fixtures and group actions
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                Error::Parse(_)
                    | Error::UnknownFixture(_)
                    | Error::UnknownAction(_)
                    | Error::Invalid(_)
            );
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn load_input(input: &InputArgs) -> Result<(String, Stratification), Error> {
    match (&input.input, &input.fixture) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            io::stratified_from_json(&value)
        }
        (None, Some(name)) => Ok((name.clone(), fixtures::fixture(name)?)),
        (Some(_), Some(_)) => Err(Error::Parse(
            "give either a path or --fixture, not both".into(),
        )),
        (None, None) => Err(Error::Parse("an input path or --fixture is needed".into())),
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Invalid(format!("write: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { input, json } => {
            let (name, strat) = load_input(&input)?;
            let report = strat.validate();
            if json {
                let v = io::validation_to_json(&name, &strat, &report);
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                print!("{}", io::validation_table(&name, &strat, &report));
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Compute {
            input,
            perversity,
            coefficients,
            subdivide,
            json,
        } => {
            let (_, strat) = load_input(&input)?;
            let rational = match coefficients.as_str() {
                "Z" | "z" => false,
                "Q" | "q" => true,
                other => {
                    return Err(Error::Parse(format!(
                        "coefficients must be Z or Q, got {other:?}"
                    )))
                }
            };
            let (p_name, p) = io::perversity_from_spec(&perversity, &strat)?;
            let h = intersection_homology(&strat, &p, subdivide, rational);
            if json {
                let v = io::homology_to_json(&p_name, &h);
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                print!("{}", io::homology_table(&h));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct {
            kind,
            input,
            apex,
            north,
            south,
            with,
            times,
            action,
            output,
        } => {
            let built: (String, Stratification) = match kind.as_str() {
                "cone" => {
                    let (name, strat) = load_input(&input)?;
                    let cone = strat.cone(&apex)?;
                    (format!("cone-{name}"), cone.stratification)
                }
                "suspension" => {
                    let (name, strat) = load_input(&input)?;
                    let sus = strat.suspension(&north, &south)?;
                    (format!("suspension-{name}"), sus.stratification)
                }
                "join" => {
                    let (name, strat) = load_input(&input)?;
                    let other_name = with.ok_or_else(|| {
                        Error::Parse("join needs --with <fixture or path>".into())
                    })?;
                    let other = match fixtures::fixture(&other_name) {
                        Ok(s) => s,
                        Err(_) => {
                            let text = std::fs::read_to_string(&other_name)
                                .map_err(|e| Error::Parse(format!("{other_name}: {e}")))?;
                            let value: serde_json::Value = serde_json::from_str(&text)
                                .map_err(|e| Error::Parse(format!("{other_name}: {e}")))?;
                            io::stratified_from_json(&value)?.1
                        }
                    };
                    let joined = strat.complex().join(other.complex())?;
                    (
                        format!("join-{name}-{other_name}"),
                        Stratification::trivial(joined),
                    )
                }
                "product" => {
                    let (name, strat) = load_input(&input)?;
                    let prod = strat.interval_product();
                    (format!("product-{name}"), prod.stratification)
                }
                "subdivide" => {
                    let (name, strat) = load_input(&input)?;
                    let mut s = strat;
                    for _ in 0..times {
                        s = s.subdivide().stratification;
                    }
                    (format!("subdivide-{name}"), s)
                }
                "quotient" => {
                    let action_name = action
                        .ok_or_else(|| Error::Parse("quotient needs --action".into()))?;
                    // the optional --fixture names the acted-on complex;
                    // built-in actions pin theirs, so only verify agreement
                    if let Some(f) = &input.fixture {
                        let base = match action_name.as_str() {
                            "antipodal" => Some("octahedron"),
                            "rotation-circle" => Some("circle"),
                            "rotation-torus" => Some("torus"),
                            "pole-swap" => Some("sigma-t2"),
                            _ => None,
                        };
                        if let Some(base) = base {
                            if f != base {
                                return Err(Error::Parse(format!(
                                    "action {action_name:?} acts on {base:?}, not {f:?}"
                                )));
                            }
                        }
                    }
                    let act = match fixtures::action(&action_name) {
                        Ok(a) => a,
                        Err(_) => {
                            let text = std::fs::read_to_string(&action_name)
                                .map_err(|e| Error::Parse(format!("{action_name}: {e}")))?;
                            let value: serde_json::Value = serde_json::from_str(&text)
                                .map_err(|e| Error::Parse(format!("{action_name}: {e}")))?;
                            io::action_from_json(&value)?
                        }
                    };
                    let q = act.regularize()?.quotient()?;
                    (format!("quotient-{action_name}"), q.stratification)
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown construction {other:?}; use cone, suspension, join, product, subdivide, or quotient"
                    )))
                }
            };
            let v = io::stratified_to_json(&built.1, &built.0);
            let text = format!("{}\n", serde_json::to_string_pretty(&v).unwrap());
            write_output(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            fixture,
            verbose,
            timings,
            json,
        } => {
            let suite = Suite::parse(&suite)?;
            let config = HarnessConfig::default();
            let reports = run_suite(suite, &config, fixture.as_deref())?;
            if json {
                let v: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| io::report_to_json(r, timings))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                print!("{}", io::report_table(&reports, verbose, timings));
            }
            Ok(if reports.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Fixtures { action } => match action {
            FixturesCommand::List => {
                println!("{:<14} {:<9} description", "fixture", "kind");
                for info in fixtures::FIXTURES {
                    let kind = if info.counterexample {
                        "invalid"
                    } else {
                        "valid"
                    };
                    println!("{:<14} {:<9} {}", info.name, kind, info.description);
                }
                println!();
                println!("{:<14} {:<9} description", "action", "");
                for (name, description) in fixtures::ACTIONS {
                    println!("{:<14} {:<9} {}", name, "", description);
                }
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}
