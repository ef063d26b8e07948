use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use srif_core::uncertainty::{calibrate_with_search, RatioSample};
use srif_core::{evaluate, CombineMode, SrifError, Split};

use crate::run_config::RunConfig;
use crate::scoring::{score_files, score_manifest};
use crate::svg;

/// Writes `content` to `path`, or to `stdout` when no path is given.
fn emit(path: Option<&Path>, content: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(content.as_bytes()).context("writing to stdout"),
    }
}

fn csv_text(records: impl IntoIterator<Item = Vec<String>>, comment: &str) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in records {
        w.write_record(&r)?;
    }
    let body = String::from_utf8(w.into_inner().context("flushing CSV")?)?;
    Ok(format!("# {comment}\n{body}"))
}

pub fn score(reference: &Path, test: &Path, out: Option<&Path>, rc: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let report = score_files(reference, test, rc)?;
    emit(out, &report.to_record(&rc.hash()), stdout)
}

pub const BATCH_HEADER: [&str; 16] = [
    "ref_path", "test_path", "mos", "algorithm", "scale", "split", "D", "S_raw", "S_sim", "sr", "tr", "f", "w_d", "w_s",
    "Q_ds", "flags",
];

pub fn batch(manifest: &Path, split: Split, out: Option<&Path>, rc: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let scored = score_manifest(manifest, split, rc)?;
    let header = BATCH_HEADER.iter().map(|s| s.to_string()).collect();
    let rows = scored.rows.iter().map(|(e, r)| {
        vec![
            e.ref_path.clone(),
            e.test_path.clone(),
            e.mos.to_string(),
            e.algorithm.clone(),
            e.scale.to_string(),
            e.split.to_string(),
            r.d.to_string(),
            r.s_raw.to_string(),
            r.s_sim.to_string(),
            r.sr.to_string(),
            r.tr.to_string(),
            r.f.to_string(),
            r.w_d.to_string(),
            r.w_s.to_string(),
            r.q_ds.to_string(),
            r.flags.join(";"),
        ]
    });
    let text = csv_text(std::iter::once(header).chain(rows), &format!("config_hash={}", rc.hash()))?;
    emit(out, &text, stdout)?;
    if scored.excluded > 0 {
        log::warn!("{} of {} pairs excluded", scored.excluded, scored.excluded + scored.rows.len());
    }
    Ok(())
}

fn default_sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn calibrate(
    manifest: &Path,
    out: &Path,
    curve: Option<&Path>,
    fixed_alpha: Option<f64>,
    fixed_gamma: Option<f64>,
    rc: &RunConfig,
    stdout: &mut dyn Write,
) -> Result<()> {
    let scored = score_manifest(manifest, Split::Train, rc)?;
    let samples: Vec<RatioSample> = scored
        .rows
        .iter()
        .map(|(e, r)| RatioSample { d: r.d, s_raw: r.s_raw, sr: r.sr, tr: r.tr, mos: e.mos })
        .collect();
    let mut opts = rc.srif.calibration.clone();
    if let Some(a) = fixed_alpha {
        opts.alpha_grid = vec![a];
    }
    if let Some(g) = fixed_gamma {
        opts.gamma_grid = vec![g];
    }
    let source = manifest.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let (mut table, trace) = calibrate_with_search(&samples, &opts, "", &source)?;
    let mut chosen = rc.srif.clone();
    chosen.alpha = table.alpha;
    chosen.sf.gamma = table.gamma;
    table.config_hash = chosen.hash();

    std::fs::write(out, table.to_text()).with_context(|| format!("writing {}", out.display()))?;
    let curve_path = curve.map(Path::to_path_buf).unwrap_or_else(|| default_sibling(out, ".curve.csv"));
    std::fs::write(&curve_path, table.curve_csv()).with_context(|| format!("writing {}", curve_path.display()))?;

    let mut s = String::new();
    let _ = writeln!(s, "samples = {}", samples.len());
    let _ = writeln!(s, "excluded = {}", scored.excluded);
    for p in &trace {
        let _ = writeln!(s, "srcc[alpha={},gamma={}] = {:.6}", p.alpha, p.gamma, p.srcc);
    }
    let _ = writeln!(s, "alpha = {}", table.alpha);
    let _ = writeln!(s, "gamma = {}", table.gamma);
    let _ = writeln!(s, "bins = {}", table.bins.len());
    let _ = writeln!(s, "table = {}", out.display());
    let _ = writeln!(s, "curve = {}", curve_path.display());
    let _ = writeln!(s, "config_hash = {}", table.config_hash);
    emit(None, &s, stdout)
}

pub fn evaluate_cmd(
    manifest: &Path,
    mode: CombineMode,
    split: Split,
    out: Option<&Path>,
    rc: &RunConfig,
    stdout: &mut dyn Write,
) -> Result<()> {
    if mode == CombineMode::Srif && rc.table.is_none() {
        log::warn!("evaluating mode srif without a calibration table: this is the equal-weight average");
    }
    let scored = score_manifest(manifest, split, rc)?;
    if scored.rows.is_empty() {
        bail!(SrifError::InsufficientData { needed: 5, got: 0 });
    }
    let q: Vec<f64> = scored.rows.iter().map(|(_, r)| r.quality(mode)).collect();
    let mos: Vec<f64> = scored.rows.iter().map(|(e, _)| e.mos).collect();
    let report = evaluate(&q, &mos)?;
    let text = format!(
        "mode = {mode}\n{}excluded = {}\nconfig_hash = {}\n",
        report.to_record(),
        scored.excluded,
        rc.hash()
    );
    emit(out, &text, stdout)
}

pub fn plot2d(
    manifest: &Path,
    split: Split,
    out: &Path,
    svg_out: Option<&Path>,
    rc: &RunConfig,
    stdout: &mut dyn Write,
) -> Result<()> {
    let scored = score_manifest(manifest, split, rc)?;
    let hash = rc.hash();
    let header = ["D", "S_sim", "algorithm", "scale"].iter().map(|s| s.to_string()).collect();
    let rows = scored
        .rows
        .iter()
        .map(|(e, r)| vec![r.d.to_string(), r.s_sim.to_string(), e.algorithm.clone(), e.scale.to_string()]);
    let text = csv_text(std::iter::once(header).chain(rows), &format!("config_hash={hash}"))?;
    emit(Some(out), &text, stdout)?;

    let svg_path = svg_out.map(Path::to_path_buf).unwrap_or_else(|| out.with_extension("svg"));
    let points: Vec<svg::Point<'_>> = scored
        .rows
        .iter()
        .map(|(e, r)| svg::Point { x: r.d, y: r.s_sim, group: &e.algorithm })
        .collect();
    let doc = svg::scatter(&points, "deterministic fidelity D", "statistical fidelity S_sim", &format!("config_hash={hash}"));
    std::fs::write(&svg_path, doc).with_context(|| format!("writing {}", svg_path.display()))?;
    let legend = points.iter().map(|p| p.group).collect::<std::collections::BTreeSet<_>>().len();
    emit(
        None,
        &format!("points = {}\nlegend = {legend}\ncsv = {}\nsvg = {}\n", points.len(), out.display(), svg_path.display()),
        stdout,
    )
}
