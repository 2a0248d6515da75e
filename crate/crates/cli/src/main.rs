use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eigenseq::catalog::{check_closed_forms, Catalog, CycleMatch};
use eigenseq::eigen::{
    apply_expr, partition_orbit, revert_lex_search, solve_xor_special, DEFAULT_REVERT_CAP,
};
use eigenseq::linear::{diff_table_diagonal, difference_table};
use eigenseq::{format_rational, EigenProblem, Error, Offset, Sequence, TransformExpr};

#[derive(Parser)]
#[command(
    name = "eigenseq",
    version,
    about = "Integer sequence transforms and their eigen-sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator expression to a sequence.
    Transform {
        expr: String,
        #[command(flatten)]
        input: TermsInput,
        #[arg(long, value_parser = parse_offset)]
        offset: Option<Offset>,
        #[command(flatten)]
        format: Format,
    },
    /// Solve the eigen-equation an expression names.
    Eigen {
        expr: String,
        #[arg(short = 'n', long = "count")]
        count: usize,
        #[arg(long, value_parser = parse_offset)]
        offset: Option<Offset>,
        #[command(flatten)]
        format: Format,
    },
    /// Iterate a transform until the prefix cycles.
    Orbit {
        #[command(subcommand)]
        which: OrbitKind,
    },
    /// Searches for special eigen-sequences.
    Search {
        #[command(subcommand)]
        which: SearchKind,
    },
    /// Leading diagonal of the difference table of the given depth.
    Difftable {
        #[command(flatten)]
        input: TermsInput,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Print every table, not just the final diagonal.
        #[arg(long)]
        show: bool,
    },
    /// Recompute catalog rows from their operators.
    Verify {
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// Check the generating-function identities instead.
        #[arg(long, conflicts_with_all = ["id", "all"])]
        closed_forms: bool,
        #[arg(long, default_value_t = 10, requires = "closed_forms")]
        order: usize,
        /// Catalog file to use instead of the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// List catalog rows.
    List {
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OrbitKind {
    Partition {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(short = 'n', long = "count")]
        count: usize,
        #[arg(long, default_value_t = 30)]
        max_iter: usize,
    },
}

#[derive(Subcommand)]
enum SearchKind {
    /// Lexicographically first increasing REVERT fixed point.
    Revert {
        #[arg(short = 'n', long = "count")]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_REVERT_CAP)]
        cap: u64,
    },
    /// The XOR-CONV sequence starting 0,1.
    Xor {
        #[arg(short = 'n', long = "count")]
        count: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TermsInput {
    /// Comma-separated terms.
    #[arg(long, allow_hyphen_values = true)]
    terms: Option<String>,
    /// File with one term per line or a comma-separated list.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    json: bool,
    /// `n a(n)` lines.
    #[arg(long)]
    bfile: bool,
}

fn parse_offset(s: &str) -> Result<Offset, String> {
    s.parse::<usize>()
        .ok()
        .and_then(Offset::from_index)
        .ok_or_else(|| format!("offset must be 0 or 1, got `{s}`"))
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn parse_expr(text: &str) -> Result<TransformExpr, Failure> {
    TransformExpr::parse(text).map_err(|e| Failure::Usage(format!("in `{text}`: {e}")))
}

fn read_terms(input: &TermsInput, offset: Offset) -> Result<Sequence, Failure> {
    let text = match (&input.terms, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        (None, None) => unreachable!("clap requires one input"),
    };
    Sequence::parse(&text, offset).map_err(|e| Failure::Usage(format!("terms: {e}")))
}

fn load_catalog(path: Option<&PathBuf>) -> Result<Catalog, Failure> {
    match path {
        None => Ok(Catalog::builtin()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Catalog::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn render(seq: &Sequence, format: &Format) -> Outcome {
    if format.json {
        let terms: Vec<String> = seq.terms().iter().map(format_rational).collect();
        let value = serde_json::json!({ "offset": seq.offset().index(), "terms": terms });
        return Ok(format!("{value}\n"));
    }
    if format.bfile {
        let mut out = String::new();
        for (i, t) in seq.terms().iter().enumerate() {
            let n = seq.offset().index() + i;
            if !t.is_integer() {
                return Err(Failure::Usage(format!(
                    "b-file output needs integers; a({n}) = {t}"
                )));
            }
            writeln!(out, "{n} {t}").expect("write to string");
        }
        return Ok(out);
    }
    Ok(format!("{seq}\n"))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Transform {
            expr,
            input,
            offset,
            format,
        } => {
            let e = parse_expr(&expr)?;
            let a = read_terms(&input, offset.unwrap_or_else(|| e.default_offset()))?;
            render(&apply_expr(&e, &a)?, &format)
        }
        Command::Eigen {
            expr,
            count,
            offset,
            format,
        } => {
            let e = parse_expr(&expr)?;
            let problem = EigenProblem::from_expr(&e)?;
            let seq = problem.solve(count, offset.unwrap_or_else(|| e.default_offset()))?;
            render(&seq, &format)
        }
        Command::Orbit {
            which:
                OrbitKind::Partition {
                    start,
                    count,
                    max_iter,
                },
        } => {
            let start = Sequence::parse(&start, Offset::One)
                .map_err(|e| Failure::Usage(format!("start: {e}")))?;
            let report = partition_orbit(&start, count, max_iter)?;
            let mut out = String::new();
            for (i, s) in report.iterates.iter().enumerate() {
                writeln!(out, "{i}: {s}").expect("write to string");
            }
            writeln!(
                out,
                "tail {} period {} exact {}",
                report.tail, report.period, report.exact
            )
            .expect("write to string");
            let verdict = match Catalog::builtin().classify_cycle(report.cycle()) {
                CycleMatch::Listed(ids) => format!("cycle {}", ids.join(",")),
                CycleMatch::AllOnes => {
                    "cycle all-ones (fixed point not in the catalog)".to_string()
                }
                CycleMatch::Unlisted => "cycle not in the catalog".to_string(),
            };
            writeln!(out, "{verdict}").expect("write to string");
            Ok(out)
        }
        Command::Search {
            which: SearchKind::Revert { count, cap },
        } => {
            let found = revert_lex_search(count, cap)?;
            Ok(format!(
                "{}\ncap {} horizon {}\n",
                found.terms, found.cap, found.horizon
            ))
        }
        Command::Search {
            which: SearchKind::Xor { count },
        } => Ok(format!("{}\n", solve_xor_special(count)?)),
        Command::Difftable { input, depth, show } => {
            let a = read_terms(&input, Offset::Zero)?;
            let mut out = String::new();
            if show {
                let mut current = a.clone();
                for level in 1..=depth {
                    writeln!(out, "table {level}").expect("write to string");
                    for row in difference_table(current.terms()) {
                        let row = Sequence::new(Offset::Zero, row);
                        writeln!(out, "{row}").expect("write to string");
                    }
                    current = diff_table_diagonal(&current, 1);
                }
                out.push_str("diagonal\n");
            }
            writeln!(out, "{}", diff_table_diagonal(&a, depth)).expect("write to string");
            Ok(out)
        }
        Command::Verify {
            id,
            all,
            closed_forms,
            order,
            catalog,
        } => {
            let mut out = String::new();
            if closed_forms {
                let checks = check_closed_forms(order);
                for c in &checks {
                    writeln!(out, "{c}").expect("write to string");
                }
                let passed = checks.iter().filter(|c| c.passed).count();
                writeln!(out, "{passed}/{} identities hold", checks.len())
                    .expect("write to string");
                print!("{out}");
                return if passed == checks.len() {
                    Ok(String::new())
                } else {
                    Err(Failure::Verification)
                };
            }
            let catalog = load_catalog(catalog.as_ref())?;
            let reports = match (id, all) {
                (Some(id), _) => catalog.verify_entry(&id)?,
                (None, true) => catalog.verify_all().reports,
                (None, false) => return Err(Failure::Usage("verify needs an id or --all".into())),
            };
            for r in &reports {
                writeln!(out, "{r}").expect("write to string");
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed}/{} rows passed", reports.len()).expect("write to string");
            print!("{out}");
            if passed == reports.len() {
                Ok(String::new())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::List { catalog } => {
            let mut out = String::new();
            for e in load_catalog(catalog.as_ref())?.entries() {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    e.id,
                    e.offset(),
                    e.property,
                    e.operator,
                    e.notes()
                )
                .expect("write to string");
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
