//! `knotdimer`: Alexander and twisted Alexander polynomials from PD codes.
//!
//! Exit status is 0 on success and agreement, 1 when routes disagree or a
//! verification check fails, and 2 on input errors.

mod config;
mod error;
mod export;
mod run;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use config::{load_table, Cli, RunConfig};
use error::CliError;

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<u8> {
    Ok(match config {
        RunConfig::Alexander { knot, method, format } => {
            run::report(out, &knot.name, &run::alexander(knot, *method)?, *format)?
        }
        RunConfig::Twisted { knot, rep, method, format } => {
            run::report(out, &knot.name, &run::twisted(knot, rep, *method)?, *format)?
        }
        RunConfig::Verify { max_dimer_size, format } => {
            let mut results = Vec::new();
            for (name, d) in load_table()? {
                results.extend(verify::check_knot(&name, &d, *max_dimer_size));
            }
            verify::report(out, &results, *format)?
        }
        RunConfig::Export { knot, graph, rep } => {
            out.write_all(export::export(knot, *graph, rep)?.as_bytes())?;
            0
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = RunConfig::resolve(cli.command).map_err(anyhow::Error::from).and_then(|config| {
        let mut out = Vec::new();
        let status = execute(&config, &mut out)?;
        std::io::stdout().lock().write_all(&out)?;
        Ok(status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("knotdimer: {e:#}");
            ExitCode::from(if e.is::<CliError>() { 2 } else { 1 })
        }
    }
}
