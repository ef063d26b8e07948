use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use srif_core::dataset::{load_luminance, parse_manifest};
use srif_core::{load_pair, score_pair, FidelityReport, ManifestEntry, Split};

use crate::run_config::RunConfig;

pub fn score_files(reference: &Path, test: &Path, rc: &RunConfig) -> Result<FidelityReport> {
    let r = load_luminance(reference)?;
    let t = load_luminance(test)?;
    if rc.table.is_none() {
        log::warn!("no calibration table given (--table or SRIF_TABLE); combining with equal weights 0.5/0.5");
    }
    Ok(score_pair(&r, &t, &rc.srif, rc.table.as_ref())?)
}

/// Manifest entries of `split` with their scores, in manifest order.
/// Pairs that fail to load or score are logged and left out.
pub struct ScoredManifest {
    pub rows: Vec<(ManifestEntry, FidelityReport)>,
    pub excluded: usize,
}

pub fn score_manifest(manifest: &Path, split: Split, rc: &RunConfig) -> Result<ScoredManifest> {
    let parsed = parse_manifest(manifest)?;
    for w in &parsed.warnings {
        log::warn!("{w}");
    }
    let entries: Vec<ManifestEntry> = parsed.entries.into_iter().filter(|e| e.split.includes(split)).collect();
    if rc.table.is_none() {
        log::warn!("no calibration table given (--table or SRIF_TABLE); combining with equal weights 0.5/0.5");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(rc.workers)
        .build()
        .context("building worker pool")?;
    let results: Vec<_> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| load_pair(e).and_then(|p| score_pair(&p.reference, &p.test, &rc.srif, rc.table.as_ref())))
            .collect()
    });

    let mut rows = Vec::with_capacity(entries.len());
    let mut excluded = 0;
    for (entry, res) in entries.into_iter().zip(results) {
        match res {
            Ok(report) => rows.push((entry, report)),
            Err(e) => {
                excluded += 1;
                log::warn!("excluded manifest line {} ({} vs {}): {e}", entry.line, entry.ref_path, entry.test_path);
            }
        }
    }
    log::info!("scored {} pairs, excluded {}", rows.len(), excluded);
    Ok(ScoredManifest { rows, excluded })
}
