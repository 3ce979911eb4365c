use std::process::ExitCode;

use clap::Parser;
use stimsig_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stimsig: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
