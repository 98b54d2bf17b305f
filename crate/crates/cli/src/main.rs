mod literal;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use kla2_core::alcove::interval_svg;
use kla2_core::coxeter::{classify, lower_interval, Elt, Word};
use kla2_core::hecke::{hom_rank, kl_basis, mu};
use kla2_core::klformulas::kl_closed;
use kla2_core::leaves::{for_each_leaf, DEFAULT_BOUND};
use kla2_core::projcoeff::{beyond_table, wall_table};
use kla2_core::suites::{is_suite, run_all, run_suite, SuiteParams, DEFAULT_MAX_LEN, SUITES};
use kla2_core::Error;

use literal::{diagnostic, parse_element};

#[derive(Parser)]
#[command(
    name = "kla2",
    version,
    about = "Kazhdan-Lusztig computations for the affine Weyl group of type A~2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical basis element in the standard basis.
    Kl {
        elem: String,
        /// Use the closed form of the element's family.
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// The coefficient of v in h_{y,x}.
    Mu {
        y: String,
        x: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Lower Bruhat interval of an element.
    Interval {
        elem: String,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Graded rank of the morphism space between two indecomposables.
    Homrank {
        x: String,
        y: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Light leaves of a word, one JSON object per line.
    Leaves {
        word: String,
        #[arg(long)]
        u_only: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// SVG picture of a lower interval, with optional nested intervals.
    Svg {
        elem: String,
        #[arg(long, num_args = 1..)]
        nest: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Closed forms and recursion values of the projector coefficients.
    #[command(group(ArgGroup::new("family").required(true).args(["wall", "beyond"])))]
    Coeffs {
        #[arg(long)]
        wall: bool,
        #[arg(long)]
        beyond: bool,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Runs a verification suite; prints a JSON report.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        max_beyond: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn elem(text: &str) -> Result<Elt, Failure> {
    parse_element(text).map_err(|e| Failure::Usage(diagnostic(text, &e)))
}

fn capped(x: Elt, max_len: usize) -> Result<Elt, Failure> {
    if x.length() > max_len {
        return Err(Failure::Usage(format!(
            "element of length {} exceeds the length cap {max_len}; raise it with --max-len",
            x.length()
        )));
    }
    Ok(x)
}

fn show(x: Elt) -> String {
    if x.is_identity() {
        "e".to_string()
    } else {
        x.to_string()
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("KLA2_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("KLA2_THREADS must be a non-negative integer, got {value:?}")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Kl {
            elem: text,
            closed,
            json,
            max_len,
        } => {
            let x = elem(&text)?;
            let (method, family, value) = if closed {
                let tag = classify(x)?;
                ("closed", Some(tag), kl_closed(&tag)?)
            } else {
                ("oracle", None, (*kl_basis(capped(x, max_len)?)).clone())
            };
            if json {
                let doc = json!({
                    "element": show(x),
                    "method": method,
                    "family": family,
                    "value": value,
                });
                writeln!(out, "{doc}")?;
            } else {
                writeln!(out, "{value}")?;
            }
        }
        Command::Mu { y, x, max_len } => {
            let (y, x) = (elem(&y)?, capped(elem(&x)?, max_len)?);
            writeln!(out, "{}", mu(y, x))?;
        }
        Command::Interval {
            elem: text,
            count,
            json,
        } => {
            let mut elts: Vec<Elt> = lower_interval(elem(&text)?).into_iter().collect();
            elts.sort_by_cached_key(|y| (y.length(), y.to_string()));
            if count {
                writeln!(out, "{}", elts.len())?;
            } else if json {
                let names: Vec<String> = elts.into_iter().map(show).collect();
                writeln!(out, "{}", Value::from(names))?;
            } else {
                for y in elts {
                    writeln!(out, "{}", show(y))?;
                }
            }
        }
        Command::Homrank { x, y, max_len } => {
            let (x, y) = (capped(elem(&x)?, max_len)?, capped(elem(&y)?, max_len)?);
            writeln!(out, "{}", hom_rank(x, y))?;
        }
        Command::Leaves { word, u_only, bound } => {
            let word: Word = word
                .strip_prefix("w:")
                .unwrap_or(&word)
                .parse()
                .map_err(|e: Error| Failure::Usage(diagnostic(&word, &e)))?;
            let mut failed = None;
            for_each_leaf(&word, bound, |leaf| {
                if failed.is_some() || (u_only && !leaf.decorations.iter().all(|d| d.is_up())) {
                    return;
                }
                let line = serde_json::to_string(leaf).expect("leaf serializes");
                if let Err(e) = writeln!(out, "{line}") {
                    failed = Some(e);
                }
            })?;
            if let Some(e) = failed {
                return Err(e.into());
            }
        }
        Command::Svg {
            elem: text,
            nest,
            output,
        } => {
            let x = elem(&text)?;
            let nest = nest.iter().map(|t| elem(t)).collect::<Result<Vec<_>, _>>()?;
            std::fs::write(&output, interval_svg(x, &nest))
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", output.display())))?;
        }
        Command::Coeffs { wall, max, json, .. } => {
            let rows = if wall { wall_table(max)? } else { beyond_table(max)? };
            if json {
                writeln!(out, "{}", serde_json::to_string(&rows).expect("rows serialize"))?;
            } else {
                writeln!(out, "{:<14} {:>24} {:>24}  equal", "index", "closed", "recursive")?;
                for row in &rows {
                    writeln!(
                        out,
                        "{:<14} {:>24} {:>24}  {}",
                        row.index, row.closed, row.recursive, row.equal
                    )?;
                }
            }
            if rows.iter().any(|r| !r.equal) {
                out.flush()?;
                return Err(Failure::Checks);
            }
        }
        Command::Verify {
            suite,
            max_len,
            max,
            max_beyond,
        } => {
            if !is_suite(&suite) {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of: all, {}",
                    SUITES.join(", ")
                )));
            }
            let params = SuiteParams {
                max_len,
                max,
                max_beyond,
            };
            let reports = if suite == "all" {
                run_all(&params)?
            } else {
                vec![run_suite(&suite, &params)?]
            };
            let pass = reports.iter().all(|r| r.pass);
            let mut stderr = io::stderr().lock();
            for r in &reports {
                writeln!(stderr, "{r}")?;
                for m in r.mismatches() {
                    writeln!(stderr, "  {}: expected {}, got {}", m.item, m.expected, m.actual)?;
                }
            }
            let doc = if suite == "all" {
                json!({ "suite": "all", "pass": pass, "reports": reports })
            } else {
                serde_json::to_value(&reports[0]).expect("report serializes")
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
            if !pass {
                out.flush()?;
                return Err(Failure::Checks);
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
