use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use ccgroup::cli::run::{run_source, RunFlags};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Read the theory from the problem file.
    Auto,
}

/// Decide ground equations modulo groups, monoids and semigroups.
#[derive(Debug, Parser)]
#[command(name = "ccgroup", version)]
struct Args {
    /// Problem file.
    file: PathBuf,
    /// Inference budget for completion [default: 100000, or the file's `option fuel`].
    #[arg(long)]
    fuel: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    mode: Mode,
    /// Print the completion trace and query rewrites.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    json: bool,
    /// Print the monoid presentation (group mode only).
    #[arg(long)]
    show_presentation: bool,
    /// Enumerate normal forms of words up to this length (group mode only).
    #[arg(long, value_name = "L")]
    enumerate_nf: Option<usize>,
    /// Skip DEDUCE on rules of the form f(c,d) -> 1.
    #[arg(long)]
    skip_unit_deduce: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Mode::Auto = args.mode;
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let flags = RunFlags {
        fuel: args.fuel,
        trace: args.trace,
        show_presentation: args.show_presentation,
        enumerate_nf: args.enumerate_nf,
        skip_unit_deduce: args.skip_unit_deduce,
    };
    match run_source(&text, &flags) {
        Ok(report) => {
            let out = if args.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
