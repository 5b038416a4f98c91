use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use gaussfactor::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    match run(cli, &mut stdout) {
        Ok(()) => {
            let _ = stdout.flush();
            ExitCode::SUCCESS
        }
        Err(err) => {
            let _ = stdout.flush();
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
