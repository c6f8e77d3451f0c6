use std::process::ExitCode;

use clap::Parser;

use fibcontract_cli::commands::error_status;
use fibcontract_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut stdout, mut stderr) = (std::io::stdout().lock(), std::io::stderr());
    match run(&cli, &mut stdout, &mut stderr) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_status(&err).code() as u8)
        }
    }
}
