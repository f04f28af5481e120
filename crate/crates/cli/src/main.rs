//! `algorec`: scan Java sources for known algorithms.
//!
//! Exit codes: 0 success, 2 diagnostics under `--strict`, 64 usage error,
//! 65 malformed input data (labels, pairs, pattern files, unparsable source
//! for `dump`), 74 I/O error.

mod bench;
mod inject;
mod scan;
mod select;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use algorec::matcher::DEFAULT_STATE_BUDGET;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Data(_) => 65,
            CliError::Io(_) => 74,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "algorec",
    version,
    about = "Find algorithm implementations in Java code with structural search patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatchArgs {
    /// Maximum matching states per entry point.
    #[arg(long, env = "ALGOREC_BUDGET", default_value_t = DEFAULT_STATE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Subcommand)]
enum Command {
    /// Match patterns against every .java file under a directory.
    Scan {
        #[arg(long)]
        corpus: PathBuf,
        /// Catalog pattern name or pattern JSON file; repeatable.
        #[arg(long = "pattern", required = true, num_args = 1..)]
        patterns: Vec<String>,
        /// Print a JSON document instead of text records.
        #[arg(long)]
        json: bool,
        /// Write a marker comment above each detected method.
        #[arg(long)]
        inject_comments: bool,
        /// Marker text; `{algorithm}`, `{pattern}` and `{version}` are substituted.
        #[arg(long, default_value = inject::DEFAULT_TEMPLATE)]
        comment_template: String,
        /// Exit with 2 when any file failed to parse or exceeded the budget.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        matching: MatchArgs,
    },
    /// Score patterns against labeled methods.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// Skip clone pairs with a side shorter than this many tokens.
        #[arg(long, default_value_t = 50, requires = "pairs")]
        min_tokens: u32,
        /// Where to write the JSON report.
        #[arg(long, default_value = "algorec-bench.json")]
        out: PathBuf,
        /// Extra pattern files that labels may refer to by name.
        #[arg(long = "pattern")]
        patterns: Vec<String>,
        #[command(flatten)]
        matching: MatchArgs,
    },
    /// Print the normalized syntax tree of a Java file.
    Dump { file: PathBuf },
    /// Inspect the built-in pattern catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Describe {
        name: String,
    },
    /// Write every pattern as `<name>.pattern.json` into a directory.
    Export {
        dir: PathBuf,
    },
}

fn with_jobs<T: Send>(jobs: Option<u16>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}"))),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Scan {
            corpus,
            patterns,
            json,
            inject_comments,
            comment_template,
            strict,
            matching,
        } => {
            inject::check_template(&comment_template).map_err(CliError::Usage)?;
            let config = scan::ScanConfig {
                corpus,
                patterns: select::resolve_all(&patterns)?,
                json,
                budget: matching.budget,
                inject_comments,
                comment_template,
                strict,
            };
            with_jobs(matching.jobs, || scan::run(&config, &mut std::io::stdout()))?
        }
        Command::Bench {
            corpus,
            labels,
            pairs,
            min_tokens,
            out,
            patterns,
            matching,
        } => {
            let config = bench::BenchConfig {
                corpus,
                labels,
                pairs: pairs.map(|p| (p, min_tokens)),
                out,
                extra: select::resolve_all(&patterns)?,
                budget: matching.budget,
            };
            with_jobs(matching.jobs, || {
                bench::run(&config, &mut std::io::stdout())
            })?
        }
        Command::Dump { file } => {
            let src = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", file.display())))?;
            let unit = algorec::java::parse_source(&file.to_string_lossy(), &src)
                .map_err(|e| CliError::Data(e.to_string()))?;
            print!("{}", unit.root.dump());
            Ok(0)
        }
        Command::Catalog { action } => {
            let catalog = select::catalog()?;
            match action {
                CatalogAction::List => {
                    for e in &catalog {
                        println!(
                            "{:<14} v{}  {:<24} {}",
                            e.name,
                            e.pattern.version,
                            e.algorithm,
                            e.variants.join(", ")
                        );
                    }
                }
                CatalogAction::Describe { name } => {
                    let entry = catalog
                        .iter()
                        .find(|e| e.name == name)
                        .ok_or_else(|| select::unknown(&name, &catalog))?;
                    print!("{}", algorec::catalog::describe(entry));
                }
                CatalogAction::Export { dir } => {
                    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
                    std::fs::create_dir_all(&dir).map_err(io)?;
                    for e in &catalog {
                        let path = dir.join(algorec::catalog::file_name(e.name));
                        std::fs::write(&path, e.pattern.to_json()).map_err(io)?;
                        println!("{}", path.display());
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("algorec: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
