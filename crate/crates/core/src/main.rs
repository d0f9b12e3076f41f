use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tanaka::cli::{check_finite, parse_job, render_table, run, CliError, RunOptions};

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Runs one JSON job file and prints the report.
#[derive(Parser)]
#[command(name = "tanaka", version)]
struct Args {
    /// Job file, or `-` for stdin.
    job: PathBuf,
    /// Include basis vectors of every component.
    #[arg(long)]
    emit_bases: bool,
    /// Include labels and sparse structure constants of the prolongation.
    #[arg(long)]
    emit_brackets: bool,
    /// Exit with code 4 when a prolongation reaches its cap.
    #[arg(long)]
    require_finite: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Schema(e.to_string());
    let text = if args.job.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        std::fs::read_to_string(&args.job).map_err(io)?
    };
    let job = parse_job(&text)?;
    let opts = RunOptions {
        emit_bases: args.emit_bases,
        emit_brackets: args.emit_brackets,
        require_finite: args.require_finite,
    };
    let report = run(&job, &opts)?;
    let rendered = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Table => render_table(&report),
    };
    match &args.output {
        Some(path) => std::fs::write(path, rendered).map_err(io)?,
        None => print!("{rendered}"),
    }
    // The report is written before the finiteness policy decides the code.
    check_finite(&job, &opts, &report)
}
