//! Command-line front end for the `pullin` laboratory.
//!
//! Every subcommand writes one envelope
//! `{"command", "config", "result", "warnings"}` as JSON, or the result table
//! as CSV with `#`-prefixed metadata lines. Floats are rounded to 12
//! significant digits so identical invocations give identical bytes.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;

pub use config::{parse_run_config, Cli, Format, RunConfig, Task};
pub use error::CliError;
pub use output::Envelope;

/// Executes a validated configuration and returns the rendered envelope.
pub fn execute(config: &RunConfig) -> Result<Envelope, CliError> {
    let name = config.task.name();
    log::info!("running {name}");
    let env = match &config.task {
        Task::Branch { spec, schedule, tol } => {
            let o = commands::branch(spec, schedule, *tol)?;
            Envelope::new(name, config, &o.result, o.warnings)
        }
        Task::Bounds { spec, tol } => {
            let o = commands::bounds(spec, *tol)?;
            Envelope::new(name, config, &o.result, o.warnings)
        }
        Task::Constants {
            dimensions,
            beta,
            gamma,
            beta_p,
            gamma_tau,
        } => {
            let o = commands::constants(dimensions, *beta, *gamma, *beta_p, *gamma_tau)?;
            Envelope::new(name, config, &o.result, o.warnings)
        }
        Task::Transform {
            dimension,
            alpha,
            families,
        } => {
            let o = commands::transform(*dimension, *alpha, families)?;
            Envelope::new(name, config, &o.result, o.warnings)
        }
        Task::Asymptotics {
            nonlinearity,
            dimension,
            lambda,
            tol,
        } => {
            let o = commands::asymptotics(nonlinearity, *dimension, *lambda, *tol)?;
            Envelope::new(name, config, &o.result, o.warnings)
        }
        Task::Verify { criteria } => {
            let o = commands::verify(criteria);
            Envelope::new(name, config, &o.result, o.warnings)
        }
    };
    for w in &env.warnings {
        log::warn!("{w}");
    }
    Ok(env)
}

/// Executes `config` and writes the artifact to `--out` or standard output.
///
/// A verification run that records failed criteria still writes its report
/// before returning [`CliError::Verification`].
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let env = execute(config)?;
    let text = env.render(config.format);
    match &config.out {
        Some(path) => output::write_atomic(path, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    if let Task::Verify { .. } = config.task {
        let failed = env.result["failed"].as_u64().unwrap_or(0) as usize;
        if failed > 0 {
            return Err(CliError::Verification { failed });
        }
    }
    Ok(())
}
