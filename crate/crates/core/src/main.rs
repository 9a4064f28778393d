use std::process::ExitCode;

use clap::Parser;
use instanton_core::cli::{exit_code_for, run, CliArgs, RunConfig, EXIT_CONFIG};

fn main() -> ExitCode {
    let args = CliArgs::parse();
    let cfg = match RunConfig::from_args(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("instanton: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    match run(&cfg) {
        Ok(out) => {
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("instanton: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_CONFIG as u8);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("instanton: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
