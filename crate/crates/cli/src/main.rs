use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use nbrw_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli, &mut std::io::stdin()) {
        Ok(outcome) => {
            let written = match &cli.options.output {
                Some(path) => std::fs::write(path, &outcome.document),
                None => std::io::stdout().write_all(outcome.document.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: i/o: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
