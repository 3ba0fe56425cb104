use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use dedekind_cli::{run, Cli, Outcome, EXIT_VIOLATION};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out, &mut io::stderr());
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(dedekind_cli::EXIT_DOMAIN);
    }
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
