use std::process::ExitCode;

use posreg::cli::{parse_config, run, ConfigError, OUTPUT_DIR_ENV};

fn main() -> ExitCode {
    let env_dir = std::env::var_os(OUTPUT_DIR_ENV).map(Into::into);
    let config = match parse_config(std::env::args_os(), env_dir) {
        Ok(c) => c,
        Err(ConfigError::Clap(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}\n\n{}", ConfigError::usage());
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            for c in outcome.checks.iter().filter(|c| !c.pass) {
                eprintln!("{}", c.summary_line());
            }
            println!(
                "{} of {} checks passed; outputs in {}",
                outcome.checks.iter().filter(|c| c.pass).count(),
                outcome.checks.len(),
                config.output_dir.display()
            );
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
