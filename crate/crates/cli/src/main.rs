//! `graph-monads`: validate, enumerate and combine perfect matchings and
//! partial Steiner triple systems, and check the monad laws behind them.
//!
//! Exit codes: 0 ok, 1 the structure or law check failed, 2 bad input.

mod commands;
mod load;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CommandResult, Direction, ListKind, MonadKind, ProductKind};

#[derive(Parser)]
#[command(name = "graph-monads", version, about)]
struct Cli {
    /// Largest graph order the enumerators accept.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Print the full result as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing but the primary output; rely on the exit code.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a matching file is a perfect matching of a graph.
    CheckMatching { graph: PathBuf, matching: PathBuf },
    /// Check that a file holds a partial Steiner triple system.
    CheckPsts { file: PathBuf },
    /// Enumerate structures on a graph, as JSON in canonical order.
    List { kind: ListKind, graph: PathBuf },
    /// Check the monad laws pointwise on one graph.
    Laws { monad: MonadKind, graph: PathBuf },
    /// Check the monad laws on every labeled graph up to a size.
    LawsSweep {
        monad: MonadKind,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Product of two matched graphs or two partial Steiner systems.
    Product {
        kind: ProductKind,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Image of a graph under T or S, as an edge list.
    Functor {
        monad: MonadKind,
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering, highlighting a matching or coloring triples.
    Dot {
        graph: PathBuf,
        structure: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Translate between structures and their algebras.
    Convert {
        direction: Direction,
        file: PathBuf,
        /// Graph to use instead of the one named in the file.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> (CommandResult, Option<&PathBuf>) {
    let (attempt, out) = match &cli.command {
        Command::CheckMatching { graph, matching } => (commands::check_matching_cmd(graph, matching), None),
        Command::CheckPsts { file } => (commands::check_psts_cmd(file), None),
        Command::List { kind, graph } => (commands::list_cmd(*kind, graph, cli.cap), None),
        Command::Laws { monad, graph } => (commands::laws_cmd(*monad, graph), None),
        Command::LawsSweep { monad, max_n } => (commands::laws_sweep_cmd(*monad, *max_n), None),
        Command::Product { kind, a, b, out } => (commands::product_cmd(*kind, a, b), out.as_ref()),
        Command::Functor { monad, graph, out } => (commands::functor_cmd(*monad, graph), out.as_ref()),
        Command::Dot {
            graph,
            structure,
            out,
        } => (commands::dot_cmd(graph, structure.as_deref()), out.as_ref()),
        Command::Convert {
            direction,
            file,
            graph,
            out,
        } => (
            commands::convert_cmd(*direction, file, graph.as_deref()),
            out.as_ref(),
        ),
    };
    (attempt.unwrap_or_else(|e| e), out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut result, out) = run(&cli);

    // Only a successful artifact is written to disk.
    let mut artifact_on_stdout = false;
    if let (Some(text), commands::Status::Ok) = (&result.artifact, result.status) {
        match out {
            Some(path) => {
                if let Err(e) = fs::write(path, text) {
                    result = CommandResult::error(format!("{}: {e}", path.display()));
                } else {
                    result.report.push_str(&format!("\nwrote {}", path.display()));
                }
            }
            None if !cli.json => {
                print!("{text}");
                artifact_on_stdout = true;
            }
            None => {}
        }
    }

    if cli.json {
        println!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
    } else if result.status == commands::Status::Error {
        eprintln!("{}", result.report);
    } else if !cli.quiet {
        if artifact_on_stdout {
            eprintln!("{}", result.report);
        } else {
            println!("{}", result.report);
        }
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(result.status.exit_code())
}
