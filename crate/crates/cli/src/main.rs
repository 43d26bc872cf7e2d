use clap::{Parser, Subcommand};
use laxalg_cli::cache::CACHE_DIR_VAR;
use laxalg_cli::commands::parse_degree;
use laxalg_cli::{run, Command, Invocation};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "laxalg", version, about = "Exact checks for Lax operator algebras on the marked projective line")]
struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Emit the JSON report instead of the table.
    #[arg(long, global = true)]
    machine_readable: bool,

    /// Directory for cached degree bases.
    #[arg(long, global = true, value_name = "PATH", env = CACHE_DIR_VAR)]
    cache_dir: Option<PathBuf>,

    /// Degree `m`, or `m,n`.
    #[arg(long, global = true, value_name = "m[,n]", allow_hyphen_values = true, value_parser = parse_degree)]
    degree: Option<(i64, Option<i64>)>,

    /// grading, almost-graded, cocycle, tyurin or all.
    #[arg(long, global = true, value_name = "NAME")]
    suite: Option<String>,

    /// Prefix filter on Tyurin check names, spaces written as `_`.
    #[arg(long, global = true, value_name = "NAME")]
    case: Option<String>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Level dimensions, depth, codimensions and invariants of each grading.
    Grade,
    /// Bases of L_m over the window or the given degrees.
    Basis,
    /// Run verification suites.
    Verify,
    /// Table of the cocycle on basis pairs of L_m x L_n.
    Cocycle,
    /// Span checks of the Tyurin-parameter families.
    TyurinCheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Grade => Command::Grade,
        Cmd::Basis => Command::Basis,
        Cmd::Verify => Command::Verify,
        Cmd::Cocycle => Command::Cocycle,
        Cmd::TyurinCheck => Command::TyurinCheck,
    };
    let inv = Invocation {
        command,
        config: cli.config,
        cache_dir: cli.cache_dir,
        degree: cli.degree,
        suite: cli.suite,
        case: cli.case,
    };
    match run(&inv) {
        Ok(report) => {
            let text = if cli.machine_readable { report.render_json() } else { report.render_table() };
            print!("{text}");
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
