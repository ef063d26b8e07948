//! Command-line front end: argument parsing, configuration layering and the
//! `score`, `batch`, `calibrate`, `evaluate` and `plot-2d` commands.

pub mod args;
pub mod commands;
pub mod run_config;
pub mod scoring;
pub mod svg;
pub mod synth;

use std::io::Write;

use anyhow::Result;
use srif_core::SrifError;

pub use args::{Cli, Command, GlobalArgs};
pub use run_config::RunConfig;

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let rc = RunConfig::resolve(&cli.global)?;
    match &cli.command {
        Command::Score { reference, test, out } => commands::score(reference, test, out.as_deref(), &rc, stdout),
        Command::Batch { manifest, out, split } => commands::batch(manifest, *split, out.as_deref(), &rc, stdout),
        Command::Calibrate { manifest, out, curve } => {
            commands::calibrate(manifest, out, curve.as_deref(), cli.global.alpha, cli.global.gamma, &rc, stdout)
        }
        Command::Evaluate { manifest, mode, split, out } => {
            commands::evaluate_cmd(manifest, *mode, *split, out.as_deref(), &rc, stdout)
        }
        Command::Plot2d { manifest, out, svg, split } => {
            commands::plot2d(manifest, *split, out, svg.as_deref(), &rc, stdout)
        }
    }
}

/// Process exit status for a failed run: 2 for unreadable inputs, 3 for
/// malformed configuration or manifests, 4 for data the statistics cannot
/// use, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.chain().find_map(|e| e.downcast_ref::<SrifError>()) {
        Some(SrifError::Decode { .. } | SrifError::Io(_)) => 2,
        Some(SrifError::Parse { .. } | SrifError::InvalidConfig(_)) => 3,
        Some(SrifError::InsufficientData { .. } | SrifError::DegenerateScores(_)) => 4,
        Some(_) => 1,
        None if err.chain().any(|e| e.downcast_ref::<std::io::Error>().is_some()) => 2,
        None => 1,
    }
}
