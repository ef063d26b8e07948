//! Synthetic labeled corpora for demos and tests.
//!
//! Every reference is a procedural texture; each test image applies one
//! degradation family at a severity indexed by a nominal scale factor. The
//! opinion scores come from a fixed model over the pipeline's own measures:
//! `MOS = 100 ((1 - λ(f)) D' + λ(f) S') + noise`, where `D'` and `S'` are the
//! two measures min-max scaled over the corpus and `λ` rises with the
//! assorted factor `f`. Labels are therefore synthetic and only suitable for
//! exercising calibration and evaluation, never for judging the index.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use srif_core::dataset::save_luminance_png;
use srif_core::filter::gaussian_blur;
use srif_core::synthetic::{add_noise, hallucinate_texture, interpolate_down_up, textured_image};
use srif_core::{score_pair, ImagePlane, SrifConfig};

pub const ALGORITHMS: [&str; 4] = ["bicubic", "blur", "texture", "noise"];
pub const SCALES: [u32; 3] = [2, 3, 4];

#[derive(Clone, Debug)]
pub struct SynthOptions {
    pub references: usize,
    pub size: usize,
    pub seed: u64,
    /// Standard deviation of the score noise, in MOS units.
    pub mos_noise: f64,
    /// Attach scores; otherwise every MOS is 0.
    pub labeled: bool,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self { references: 17, size: 96, seed: 1, mos_noise: 2.0, labeled: true }
    }
}

pub fn degrade(reference: &ImagePlane, algorithm: &str, scale: u32, seed: u64) -> ImagePlane {
    let s = scale as f64;
    match algorithm {
        "bicubic" => interpolate_down_up(reference, scale as usize - 1),
        "blur" => gaussian_blur(reference, 0.4 * s),
        "texture" => hallucinate_texture(&gaussian_blur(reference, 0.3 * s), 0.04 * s, seed),
        "noise" => add_noise(reference, 0.015 * s, seed),
        other => panic!("unknown synthetic degradation {other:?}"),
    }
}

/// Share of the statistical measure in the opinion model.
fn lambda(f: f64, pivot: f64, spread: f64) -> f64 {
    1.0 / (1.0 + (-2.0 * (f - pivot) / spread).exp())
}

fn unit_scaler(v: impl Iterator<Item = f64> + Clone) -> impl Fn(f64) -> f64 {
    let lo = v.clone().fold(f64::INFINITY, f64::min);
    let hi = v.fold(f64::NEG_INFINITY, f64::max);
    move |x| if hi > lo { (x - lo) / (hi - lo) } else { 0.5 }
}

struct Row {
    reference: String,
    test: String,
    algorithm: &'static str,
    scale: u32,
    split: &'static str,
    d: f64,
    s_sim: f64,
    f: f64,
}

/// Writes PNGs and `manifest.csv` under `dir`; returns the manifest path.
pub fn write_dataset(dir: &Path, opts: &SynthOptions) -> Result<PathBuf> {
    std::fs::create_dir_all(dir.join("ref")).context("creating dataset directories")?;
    std::fs::create_dir_all(dir.join("test"))?;
    let cfg = SrifConfig::default();
    let mut rows = Vec::new();
    for r in 0..opts.references {
        let seed = opts.seed.wrapping_mul(1_000_003).wrapping_add(r as u64);
        let reference = textured_image(opts.size, opts.size, seed);
        let ref_name = format!("ref/r{r:03}.png");
        save_luminance_png(&reference, &dir.join(&ref_name))?;
        // Score what was written so labels match the decoded files exactly.
        let reference = srif_core::dataset::load_luminance(&dir.join(&ref_name))?;
        let split = if r % 4 == 3 { "test" } else { "train" };
        for (a, algorithm) in ALGORITHMS.iter().enumerate() {
            for &scale in &SCALES {
                let test_name = format!("test/r{r:03}_{algorithm}_x{scale}.png");
                let path = dir.join(&test_name);
                save_luminance_png(&degrade(&reference, algorithm, scale, seed ^ (a as u64) << 8 ^ scale as u64), &path)?;
                let (d, s_sim, f) = if opts.labeled {
                    let test = srif_core::dataset::load_luminance(&path)?;
                    let rep = score_pair(&reference, &test, &cfg, None)?;
                    (rep.d, rep.s_sim, rep.f)
                } else {
                    (0.0, 0.0, 0.0)
                };
                rows.push(Row { reference: ref_name.clone(), test: test_name, algorithm, scale, split, d, s_sim, f });
            }
        }
    }

    let mut fs: Vec<f64> = rows.iter().map(|r| r.f).collect();
    fs.sort_by(f64::total_cmp);
    let pivot = fs.get(fs.len() / 2).copied().unwrap_or(0.0);
    let spread = (fs.get(3 * fs.len() / 4).copied().unwrap_or(0.0) - fs.get(fs.len() / 4).copied().unwrap_or(0.0))
        .max(1e-6);
    let scale_d = unit_scaler(rows.iter().map(|r| r.d));
    let scale_s = unit_scaler(rows.iter().map(|r| r.s_sim));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let noise = Normal::new(0.0, opts.mos_noise.max(0.0)).context("score noise")?;

    let mut text = String::from("# synthetic corpus; scores follow a fixed model, not human ratings\n");
    text.push_str("ref_path,test_path,mos,algorithm,scale,split\n");
    for row in &rows {
        let mos = if opts.labeled {
            let l = lambda(row.f, pivot, spread);
            100.0 * ((1.0 - l) * scale_d(row.d) + l * scale_s(row.s_sim)) + noise.sample(&mut rng)
        } else {
            0.0
        };
        let _ = writeln!(text, "{},{},{mos:.4},{},{},{}", row.reference, row.test, row.algorithm, row.scale, row.split);
    }
    let manifest = dir.join("manifest.csv");
    std::fs::write(&manifest, text).context("writing manifest")?;
    Ok(manifest)
}
