use std::path::PathBuf;

use anyhow::{Context, Result};
use srif_core::fidelity::config_for_table;
use srif_core::{CalibrationTable, SrifConfig};

use crate::args::GlobalArgs;

/// Everything a command needs: numeric settings, the optional calibration
/// table and the size of the worker pool.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub srif: SrifConfig,
    pub table: Option<CalibrationTable>,
    pub table_path: Option<PathBuf>,
    pub workers: usize,
}

impl RunConfig {
    /// Layers, lowest precedence first: defaults, the config file, the
    /// table's own `alpha`/`gamma`, then command-line flags.
    pub fn resolve(args: &GlobalArgs) -> Result<Self> {
        let mut srif = SrifConfig::default();
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
            srif.apply_kv_text(&text).with_context(|| format!("in config {}", path.display()))?;
        }
        let table = match &args.table {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).with_context(|| format!("reading table {}", path.display()))?;
                let table =
                    CalibrationTable::from_text(&text).with_context(|| format!("in table {}", path.display()))?;
                srif = config_for_table(&srif, &table);
                Some(table)
            }
            None => None,
        };
        if let Some(a) = args.alpha {
            srif.alpha = a;
        }
        if let Some(g) = args.gamma {
            srif.sf.gamma = g;
        }
        if let Some(b) = args.bins {
            srif.calibration.bins = b;
        }
        srif.validate()?;
        if let Some(t) = &table {
            let hash = srif.hash();
            if t.config_hash != hash {
                log::warn!(
                    "calibration table was built under config {} but scoring uses {}; weights may not transfer",
                    t.config_hash,
                    hash
                );
            }
        }
        let workers = if args.workers == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            args.workers
        };
        Ok(Self { srif, table, table_path: args.table.clone(), workers })
    }

    pub fn hash(&self) -> String {
        self.srif.hash()
    }
}
