//! Command-line front end for the `subdirect` crate.
//!
//! The binary reads declarations from a small line-oriented format (see
//! [`doc`]) and answers structural questions about subgroups of finite
//! direct products. Five subcommands: `analyze` a subgroup, `construct` a
//! declared goursat/pullback datum, `present` a presentation by
//! homomorphisms, `verify` property suites over a file or an enumerated
//! product, and `enumerate` the subgroups of a product expression.
//!
//! All output is deterministic: identical invocations produce byte-identical
//! reports, regardless of the `--threads` setting. Exit codes: 0 success,
//! 1 verification failure, 2 input error, 3 resource bound exceeded.

pub mod commands;
pub mod doc;
pub mod expr;
pub mod report;
pub mod resolve;
pub mod suites;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use subdirect::{Error, DEFAULT_ENUMERATION_BOUND};

use doc::Document;
use resolve::Env;

type Result<T> = std::result::Result<T, Error>;

/// Environment variable overriding the enumeration order bound; the
/// `--max-order` flag wins over both this and the built-in default.
pub const MAX_ORDER_VAR: &str = "SUBDIRECT_MAX_ORDER";

pub struct Output {
    pub stdout: String,
    /// A verification ran and found failures (exit code 1).
    pub failed: bool,
}

#[derive(Parser)]
#[command(
    name = "subdirect",
    version,
    about = "Structure analysis for subgroups of finite direct products"
)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    /// Order bound for subgroup enumeration (default: SUBDIRECT_MAX_ORDER
    /// from the environment, then 128).
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a declared subgroup (or construction, or presentation image).
    Analyze {
        /// Input file in the declaration format.
        file: PathBuf,
        /// Declaration to analyze; defaults to the only candidate.
        name: Option<String>,
        /// Include the structural isomorphism splitting at these one-based
        /// indices, e.g. "1,2".
        #[arg(long, value_name = "SET")]
        split: Option<String>,
        /// Include the three quotient systems.
        #[arg(long)]
        system: bool,
    },
    /// Build a goursat or pullback declaration and re-analyze the result.
    Construct {
        file: PathBuf,
        /// Construction to build; defaults to the only candidate.
        name: Option<String>,
    },
    /// Report on a presentation by homomorphisms.
    Present {
        file: PathBuf,
        /// Presentation to report on; defaults to the only candidate.
        name: Option<String>,
    },
    /// Run property suites over a file or an enumerated product.
    Verify {
        /// Input file in the declaration format.
        file: Option<PathBuf>,
        /// Enumerate all subgroups of this product expression instead,
        /// e.g. "Z2^3" or "S3xS3".
        #[arg(long, value_name = "EXPR", conflicts_with = "file")]
        enumerate: Option<String>,
        /// Suite to run (repeatable); defaults to every suite.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
    },
    /// List the subgroups of a product expression.
    Enumerate {
        /// Product expression, e.g. "Z4xZ2".
        expr: String,
    },
}

/// Parses arguments, runs the command, and returns (exit code, stdout,
/// stderr) without touching the process. `main` is a thin wrapper; tests
/// call this directly.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, rendered, String::new()),
                _ => (2, String::new(), rendered),
            };
        }
    };
    match execute(cli) {
        Ok(out) => (i32::from(out.failed), out.stdout, String::new()),
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource { .. } => 3,
        _ => 2,
    }
}

fn execute(cli: Cli) -> Result<Output> {
    match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(|e| Error::Input(format!("cannot build a thread pool: {e}")))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn dispatch(cli: Cli) -> Result<Output> {
    let json = cli.json;
    let bound = resolve_bound(cli.max_order)?;
    match cli.command {
        Cmd::Analyze {
            file,
            name,
            split,
            system,
        } => {
            let (_, env) = load(&file)?;
            commands::analyze::run(&env, name.as_deref(), split.as_deref(), system, json)
        }
        Cmd::Construct { file, name } => {
            let (_, env) = load(&file)?;
            commands::construct::run(&env, name.as_deref(), json)
        }
        Cmd::Present { file, name } => {
            let (doc, env) = load(&file)?;
            commands::present::run(&doc, &env, name.as_deref(), json)
        }
        Cmd::Verify {
            file,
            enumerate,
            suites,
        } => match file {
            Some(path) => {
                let (_, env) = load(&path)?;
                commands::verify::run(
                    Some(&env),
                    Some(path.display().to_string()),
                    None,
                    &suites,
                    bound,
                    json,
                )
            }
            None => commands::verify::run(None, None, enumerate.as_deref(), &suites, bound, json),
        },
        Cmd::Enumerate { expr } => commands::enumerate::run(&expr, bound, json),
    }
}

fn resolve_bound(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_ORDER_VAR) {
        Ok(value) => value.trim().parse().map_err(|_| {
            Error::Input(format!("{MAX_ORDER_VAR} must be a number, found {value:?}"))
        }),
        Err(_) => Ok(DEFAULT_ENUMERATION_BOUND),
    }
}

fn load(file: &Path) -> Result<(Document, Env)> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", file.display())))?;
    let doc = Document::parse(&text)?;
    let env = Env::build(&doc)?;
    Ok((doc, env))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resource_errors_map_to_exit_three() {
        assert_eq!(
            exit_code(&Error::Resource {
                what: "x",
                order: 9,
                bound: 1
            }),
            3
        );
        assert_eq!(exit_code(&Error::Input("bad".to_string())), 2);
        assert_eq!(exit_code(&Error::Precondition("no".to_string())), 2);
    }

    #[test]
    fn help_exits_zero_and_prints_to_stdout() {
        let (code, stdout, stderr) = run(["subdirect", "--help"]);
        assert_eq!(code, 0);
        assert!(stdout.contains("analyze"));
        assert!(stderr.is_empty());
    }

    #[test]
    fn unknown_flags_exit_two() {
        let (code, _, stderr) = run(["subdirect", "analyze", "--bogus"]);
        assert_eq!(code, 2);
        assert!(!stderr.is_empty());
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let (code, _, stderr) = run(["subdirect", "analyze", "/no/such/file.grp"]);
        assert_eq!(code, 2);
        assert!(stderr.contains("cannot read"));
    }

    #[test]
    fn verify_requires_a_scope() {
        let (code, _, stderr) = run(["subdirect", "verify", "--suite", "all"]);
        assert_eq!(code, 2, "{stderr}");
        assert!(stderr.contains("exactly one"), "{stderr}");
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let (code, _, stderr) = run([
            "subdirect",
            "verify",
            "--enumerate",
            "S3xS3",
            "--suite",
            "core-cosets",
            "--max-order",
            "16",
        ]);
        assert_eq!(code, 3, "{stderr}");
        assert!(stderr.contains("exceeds the bound"));
    }
}
