use std::process::ExitCode;

use clap::Parser;

use nikishin_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("internal error: thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, outcome.json() + "\n") {
                    eprintln!("input error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                println!("{}", outcome.json());
            } else {
                print!("{}", outcome.text());
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Internal(_) => 3,
            })
        }
    }
}
