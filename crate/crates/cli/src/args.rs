use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use srif_core::{CombineMode, Split};

/// Full-reference quality scoring for super-resolved images.
#[derive(Debug, Parser)]
#[command(name = "srif", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// `key = value` settings file applied on top of the defaults.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Calibration table used to weight the two measures.
    #[arg(long, global = true, env = "SRIF_TABLE", value_name = "FILE")]
    pub table: Option<PathBuf>,
    /// Worker threads for manifest commands (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Exponent of the assorted factor.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// Rate of the statistical similarity mapping.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Number of assorted-factor bins used by calibration.
    #[arg(long, global = true)]
    pub bins: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score one reference/test pair.
    Score {
        reference: PathBuf,
        test: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score every pair of a manifest into a CSV file.
    Batch {
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        split: Split,
    },
    /// Learn the per-bin weights from the training split of a manifest.
    Calibrate {
        manifest: PathBuf,
        /// Destination of the calibration table.
        #[arg(long)]
        out: PathBuf,
        /// Destination of the weights-versus-factor curve
        /// (default: `<out>.curve.csv`).
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Fit the logistic mapping and report SRCC, KRCC, PLCC and RMSE.
    Evaluate {
        manifest: PathBuf,
        #[arg(long, default_value = "srif", value_parser = parse_mode)]
        mode: CombineMode,
        #[arg(long, default_value = "all")]
        split: Split,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export (D, S_sim) coordinates per pair as CSV plus an SVG scatter.
    #[command(name = "plot-2d")]
    Plot2d {
        manifest: PathBuf,
        /// Destination of the CSV data.
        #[arg(long)]
        out: PathBuf,
        /// Destination of the SVG (default: `<out>` with an `.svg` extension).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        split: Split,
    },
}

fn parse_mode(s: &str) -> Result<CombineMode, String> {
    s.parse().map_err(|_| format!("expected one of srif, df_only, sf_only, avg; got {s:?}"))
}
