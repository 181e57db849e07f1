use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use orthobound::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match run(&cli, &mut out) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = out.flush();
            eprintln!("orthobound: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("Try 'orthobound --help' for usage.");
            }
            e.exit_code()
        }
    };
    if out.flush().is_err() && code == 0 {
        return ExitCode::from(3);
    }
    ExitCode::from(code as u8)
}
