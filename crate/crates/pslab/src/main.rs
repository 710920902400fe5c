use std::process::ExitCode;

use clap::Parser;
use pslab::cli::{self, Cli};

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, params) = args.command.split();
    match cli::run(name, params) {
        Ok(summary) => {
            eprintln!(
                "{name}: wrote {} ({:.2} s)",
                summary.csv.display(),
                summary.manifest.wall_time_seconds
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
