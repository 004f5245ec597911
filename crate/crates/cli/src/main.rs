use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use rumin_cli::args::Cli;
use rumin_cli::{commands, emit};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = commands::run(&cli.command).and_then(|outcome| emit(&outcome, &mut out));
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Err(e), _) => {
            eprintln!("rumin: {e}");
            ExitCode::from(e.exit_code())
        }
        (Ok(_), Err(e)) => {
            eprintln!("rumin: cannot write output: {e}");
            ExitCode::from(rumin_cli::error::exit::VERIFY_FAILED)
        }
    }
}
