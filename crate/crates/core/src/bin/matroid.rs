use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use matroid_core::amalgam::{has_amalgam, AmalgamOutcome, AmalgamProblem};
use matroid_core::axioms::check_z_axioms_entries;
use matroid_core::io::{set_to_value, sets_to_value, Check, MatrixFile, MatroidFile, Report};
use matroid_core::kernel::{ElementSet, Matroid};
use matroid_core::linear::column_matroid;
use matroid_core::modcuts::forced_closure;
use matroid_core::properties::{bundle_condition_holds, intersection_property_holds, BundleCheck};
use matroid_core::verify::{run_all, run_check, CheckName};
use matroid_core::{Error, Result};

/// Matroid computations on cyclic-flat presentations.
#[derive(Parser)]
#[command(name = "matroid", version, about)]
struct Cli {
    /// Plain-text output instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matroid file against the cyclic-flat axioms (Z0)-(Z3).
    CheckAxioms { file: PathBuf },
    /// Rank of a set of elements.
    Rank {
        file: PathBuf,
        /// Comma-separated labels, e.g. "a,b,c". Empty for the empty set.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Closure (smallest flat containing) a set of elements.
    Closure {
        file: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
    },
    /// All flats, or the flats of one rank.
    Flats {
        file: PathBuf,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// All circuits.
    Circuits { file: PathBuf },
    /// The minimal modular cut containing the given flats.
    ModularCutMin {
        file: PathBuf,
        /// Semicolon-separated sets of comma-separated labels, e.g. "a,b;c,d".
        #[arg(long)]
        flats: String,
    },
    /// Single-element extension by the minimal modular cut of the given flats.
    Extend {
        file: PathBuf,
        #[arg(long)]
        flats: String,
        /// Label of the new element.
        #[arg(long)]
        label: String,
        /// Write the extension here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert an exact-matrix file into its column matroid.
    FromMatrix {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the bundle condition (rank-4 matroids).
    Bundle { file: PathBuf },
    /// Check the intersection property.
    Ip { file: PathBuf },
    /// Search for an amalgam of two matroids agreeing on their common elements.
    Amalgam {
        file1: PathBuf,
        file2: PathBuf,
        /// Search node budget.
        #[arg(long, default_value_t = matroid_core::amalgam::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Run the built-in verification suite.
    PaperVerify {
        /// Run every check (the default when --check is absent).
        #[arg(long)]
        all: bool,
        /// Run one check: vamos, counterexample, planes3, planes4, ip4,
        /// bundle-modular, or lset.
        #[arg(long)]
        check: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = cli.text;
    match run(cli.command) {
        Ok(Output::Report(report)) => {
            emit_report(&report, text);
            code(report.exit_code())
        }
        Ok(Output::Reports(reports)) => {
            if text {
                for r in &reports {
                    print!("{}", r.to_text());
                }
            } else {
                let all: Vec<serde_json::Value> =
                    reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
                println!("{}", serde_json::to_string_pretty(&all).unwrap());
            }
            code(if reports.iter().all(|r| r.exit_code() == 0) { 0 } else { 1 })
        }
        Ok(Output::Matroid(file)) => {
            println!("{}", file.to_json_string());
            code(0)
        }
        Err(e) => {
            let report = Report::error("matroid", &e);
            emit_report(&report, text);
            code(2)
        }
    }
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn emit_report(report: &Report, text: bool) {
    if text {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json_string());
    }
}

enum Output {
    Report(Report),
    Reports(Vec<Report>),
    Matroid(MatroidFile),
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::CheckAxioms { file } => {
            let parsed = MatroidFile::parse(&std::fs::read_to_string(&file)?)?;
            let (_, entries) = parsed.to_parts()?;
            let report = match check_z_axioms_entries(&entries) {
                Ok(()) => Report::new("check-axioms", vec![Check::compare("axioms", "valid", "valid")]),
                Err(violations) => {
                    let listed: Vec<_> = violations
                        .iter()
                        .map(|v| json!({ "violation": v, "display": v.to_string() }))
                        .collect();
                    Report::new(
                        "check-axioms",
                        vec![Check::compare("axioms", "valid", "invalid")],
                    )
                    .with_witnesses(json!({ "violations": listed }))
                }
            };
            Ok(Output::Report(report))
        }
        Command::Rank { file, set } => {
            let m = load_matroid(&file)?;
            let x = parse_set(&m, &set)?;
            let rank = m.rank_of(&x)?;
            Ok(Output::Report(query_report("rank", json!({ "set": set_to_value(&x), "rank": rank }))))
        }
        Command::Closure { file, set } => {
            let m = load_matroid(&file)?;
            let x = parse_set(&m, &set)?;
            let cl = m.closure(&x)?;
            Ok(Output::Report(query_report(
                "closure",
                json!({ "set": set_to_value(&x), "closure": set_to_value(&cl) }),
            )))
        }
        Command::Flats { file, rank } => {
            let m = load_matroid(&file)?;
            let flats = match rank {
                Some(k) => m.flats_of_rank(k)?,
                None => m.all_flats(),
            };
            Ok(Output::Report(query_report(
                "flats",
                json!({ "rank": rank, "count": flats.len(), "flats": sets_to_value(&flats) }),
            )))
        }
        Command::Circuits { file } => {
            let m = load_matroid(&file)?;
            let circuits = m.circuits();
            Ok(Output::Report(query_report(
                "circuits",
                json!({ "count": circuits.len(), "circuits": sets_to_value(&circuits) }),
            )))
        }
        Command::ModularCutMin { file, flats } => {
            let m = load_matroid(&file)?;
            let seeds = parse_flats(&m, &flats)?;
            let cut = forced_closure(&m, &seeds)?;
            Ok(Output::Report(query_report(
                "modular-cut-min",
                json!({
                    "seeds": sets_to_value(&seeds),
                    "members": sets_to_value(&cut.members()),
                }),
            )))
        }
        Command::Extend { file, flats, label, output } => {
            let m = load_matroid(&file)?;
            let seeds = parse_flats(&m, &flats)?;
            let cut = forced_closure(&m, &seeds)?;
            let ext = matroid_core::modcuts::extend(&m, &cut, &label)?;
            let out = MatroidFile::from_matroid(&ext);
            match output {
                Some(path) => {
                    std::fs::write(&path, out.to_json_string())?;
                    Ok(Output::Report(query_report(
                        "extend",
                        json!({ "written": path.display().to_string(), "ground_size": ext.size() }),
                    )))
                }
                None => Ok(Output::Matroid(out)),
            }
        }
        Command::FromMatrix { file, output } => {
            let parsed = MatrixFile::parse(&std::fs::read_to_string(&file)?)?;
            let matrix = parsed.to_exact_matrix()?;
            let m = column_matroid(&matrix)?;
            let out = MatroidFile::from_matroid(&m);
            match output {
                Some(path) => {
                    std::fs::write(&path, out.to_json_string())?;
                    Ok(Output::Report(query_report(
                        "from-matrix",
                        json!({ "written": path.display().to_string(), "rank": m.rank() }),
                    )))
                }
                None => Ok(Output::Matroid(out)),
            }
        }
        Command::Bundle { file } => {
            let m = load_matroid(&file)?;
            let report = match bundle_condition_holds(&m)? {
                BundleCheck::Holds => {
                    Report::new("bundle", vec![Check::compare("bundle condition", true, true)])
                }
                BundleCheck::Counterexample(q) => Report::new(
                    "bundle",
                    vec![Check::compare("bundle condition", true, false)],
                )
                .with_witnesses(json!({
                    "quadruple": sets_to_value(q.lines.iter()),
                    "coplanar_pairs": q.coplanar_pairs,
                    "noncoplanar_pair": q.noncoplanar_pair,
                })),
            };
            Ok(Output::Report(report))
        }
        Command::Ip { file } => {
            let m = load_matroid(&file)?;
            let ip = intersection_property_holds(&m);
            let failing: Vec<_> = ip
                .failing
                .iter()
                .map(|(x, y)| json!([set_to_value(x), set_to_value(y)]))
                .collect();
            let report = Report::new(
                "ip",
                vec![Check::compare("intersection property", true, ip.holds)],
            )
            .with_witnesses(json!({
                "pairs_checked": ip.pairs_checked,
                "failing_pairs": failing,
            }));
            Ok(Output::Report(report))
        }
        Command::Amalgam { file1, file2, budget } => {
            let n1 = load_matroid(&file1)?;
            let n2 = load_matroid(&file2)?;
            let problem = AmalgamProblem::new(n1, n2)?;
            let report = match has_amalgam(&problem, budget) {
                AmalgamOutcome::Amalgam(a) => Report::new(
                    "amalgam",
                    vec![Check::compare("amalgam exists", true, true)],
                )
                .with_witnesses(json!({ "amalgam": MatroidFile::from_matroid(&a) })),
                AmalgamOutcome::None => Report::new(
                    "amalgam",
                    vec![Check::compare("amalgam exists", true, false)],
                ),
                AmalgamOutcome::BudgetExceeded { explored } => {
                    return Err(Error::Precondition(format!(
                        "search budget exhausted after {explored} nodes; raise --budget"
                    )))
                }
            };
            Ok(Output::Report(report))
        }
        Command::PaperVerify { all, check } => {
            let reports = match (all, check) {
                (_, Some(name)) => {
                    let check = CheckName::parse(&name).ok_or_else(|| Error::Precondition(format!(
                        "unknown check `{name}`; expected one of vamos, counterexample, planes3, planes4, ip4, bundle-modular, lset"
                    )))?;
                    vec![run_check(check)]
                }
                _ => run_all(),
            };
            Ok(Output::Reports(reports))
        }
    }
}

fn load_matroid(path: &Path) -> Result<Matroid> {
    MatroidFile::parse(&std::fs::read_to_string(path)?)?.to_matroid()
}

fn parse_set(m: &Matroid, spec: &str) -> Result<ElementSet> {
    let labels: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    ElementSet::from_labels(m.ground(), labels)
}

fn parse_flats(m: &Matroid, spec: &str) -> Result<Vec<ElementSet>> {
    spec.split(';').map(|part| parse_set(m, part)).collect()
}

fn query_report(command: &str, value: serde_json::Value) -> Report {
    Report::new(command, Vec::new()).with_witnesses(value)
}
