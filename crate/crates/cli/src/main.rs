use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = frobhn::Cli::parse();
    let code = frobhn::run(
        cli,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
