use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = chordweave::cli::Cli::parse();
    ExitCode::from(chordweave::cli::run(cli))
}
