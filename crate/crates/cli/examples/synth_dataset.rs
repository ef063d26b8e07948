//! Writes a synthetic labeled corpus: `synth_dataset <dir> [references] [size] [seed]`.

use std::path::PathBuf;

use anyhow::{Context, Result};
use srif_cli::synth::{write_dataset, SynthOptions};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().context("usage: synth_dataset <dir> [references] [size] [seed]")?);
    let mut opts = SynthOptions::default();
    if let Some(n) = args.next() {
        opts.references = n.parse()?;
    }
    if let Some(s) = args.next() {
        opts.size = s.parse()?;
    }
    if let Some(s) = args.next() {
        opts.seed = s.parse()?;
    }
    let manifest = write_dataset(&dir, &opts)?;
    println!("{}", manifest.display());
    Ok(())
}
