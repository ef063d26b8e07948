//! Statistical fidelity: divergence between the coefficient distributions of
//! locally normalized Laplacian bands of the reference and the test image.

use crate::deterministic::check_simplex;
use crate::error::{Result, SrifError};
use crate::filter::separable_same;
use crate::plane::ImagePlane;
use crate::pyramid::PyramidPair;

#[derive(Clone, Debug, PartialEq)]
pub struct SfConfig {
    /// Side of the box window for the local mean and deviation.
    pub norm_window: usize,
    /// Stabilizer added to the local deviation.
    pub c: f64,
    pub bins: usize,
    /// Histogram support is `[-range, range]`; outliers are clamped into it.
    pub range: f64,
    /// Pseudo-count added to every bin.
    pub eps: f64,
    /// Weights over Laplacian levels `L_1, L_2, ...`.
    pub level_weights: Vec<f64>,
    /// Rate of the similarity mapping `exp(-gamma * S_raw)`.
    pub gamma: f64,
}

impl Default for SfConfig {
    fn default() -> Self {
        Self {
            norm_window: 3,
            c: 1e-3,
            bins: 128,
            range: 4.0,
            eps: 1e-4,
            level_weights: vec![1.0 / 3.0; 3],
            gamma: 10.0,
        }
    }
}

impl SfConfig {
    pub fn validate(&self) -> Result<()> {
        if self.norm_window < 1 || self.norm_window % 2 == 0 {
            return Err(SrifError::InvalidConfig(format!(
                "SF normalization window must be odd, got {}",
                self.norm_window
            )));
        }
        if self.bins < 16 {
            return Err(SrifError::InvalidConfig(format!("SF needs >= 16 bins, got {}", self.bins)));
        }
        if !(self.range > 0.0 && self.eps > 0.0 && self.c > 0.0 && self.gamma > 0.0) {
            return Err(SrifError::InvalidConfig("SF range, eps, c and gamma must be positive".into()));
        }
        check_simplex("SF level weights", &self.level_weights, false)
    }
}

/// `(L - μ) / (σ + C)` with `μ`, `σ` over a box window and reflected borders.
pub fn normalize_band(band: &ImagePlane, cfg: &SfConfig) -> Result<ImagePlane> {
    band.ensure_min(cfg.norm_window, "band normalization window")?;
    let taps = vec![1.0 / cfg.norm_window as f64; cfg.norm_window];
    let mean = separable_same(band, &taps, &taps);
    let mean_sq = separable_same(&band.map(|v| v * v), &taps, &taps);
    let data = band
        .data()
        .iter()
        .zip(mean.data())
        .zip(mean_sq.data())
        .map(|((&v, &mu), &m2)| {
            let sd = (m2 - mu * mu).max(0.0).sqrt();
            (v - mu) / (sd + cfg.c)
        })
        .collect();
    Ok(ImagePlane::from_raw(band.width(), band.height(), data))
}

/// Smoothed fixed-bin histogram over `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandHistogram {
    pub lo: f64,
    pub hi: f64,
    pub probabilities: Vec<f64>,
    pub samples: usize,
}

impl BandHistogram {
    pub fn bins(&self) -> usize {
        self.probabilities.len()
    }

    /// The `bins + 1` bin edges.
    pub fn edges(&self) -> Vec<f64> {
        let n = self.bins();
        (0..=n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / n as f64)
            .collect()
    }
}

/// Index of the bin holding `v` (already clamped into `[lo, hi]`).
#[inline]
pub(crate) fn bin_index(v: f64, lo: f64, hi: f64, bins: usize) -> usize {
    let t = ((v - lo) / (hi - lo) * bins as f64).floor();
    (t.max(0.0) as usize).min(bins - 1)
}

pub fn band_histogram(band: &ImagePlane, cfg: &SfConfig) -> BandHistogram {
    let (lo, hi) = (-cfg.range, cfg.range);
    let mut counts = vec![0u64; cfg.bins];
    for &v in band.data() {
        counts[bin_index(v.clamp(lo, hi), lo, hi, cfg.bins)] += 1;
    }
    let n = band.data().len();
    let denom = n as f64 + cfg.bins as f64 * cfg.eps;
    BandHistogram {
        lo,
        hi,
        probabilities: counts.iter().map(|&c| (c as f64 + cfg.eps) / denom).collect(),
        samples: n,
    }
}

/// `Σ p ln(p / q)` in nats. `p` is the reference distribution.
pub fn kld(p: &BandHistogram, q: &BandHistogram) -> Result<f64> {
    if p.lo != q.lo || p.hi != q.hi || p.bins() != q.bins() {
        return Err(SrifError::EdgeMismatch);
    }
    Ok(p.probabilities
        .iter()
        .zip(&q.probabilities)
        .map(|(&a, &b)| if a > 0.0 { a * (a / b).ln() } else { 0.0 })
        .sum())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SfScore {
    /// Weighted divergence; lower is better.
    pub raw: f64,
    /// `exp(-gamma * raw)`; higher is better.
    pub sim: f64,
    pub levels: Vec<f64>,
}

pub fn similarity(raw: f64, gamma: f64) -> f64 {
    (-gamma * raw).exp()
}

pub fn sf_level(reference_band: &ImagePlane, test_band: &ImagePlane, cfg: &SfConfig) -> Result<f64> {
    reference_band.ensure_same_dims(test_band, "SF band pair")?;
    let p = band_histogram(&normalize_band(reference_band, cfg)?, cfg);
    let q = band_histogram(&normalize_band(test_band, cfg)?, cfg);
    kld(&p, &q)
}

pub fn sf_total(pair: &PyramidPair, cfg: &SfConfig) -> Result<SfScore> {
    cfg.validate()?;
    let n = cfg.level_weights.len();
    if pair.reference_bands.levels.len() < n {
        return Err(SrifError::InvalidConfig(format!(
            "SF uses {n} Laplacian levels but the pyramid has {}",
            pair.reference_bands.levels.len()
        )));
    }
    let levels = (0..n)
        .map(|l| sf_level(&pair.reference_bands.levels[l], &pair.test_bands.levels[l], cfg))
        .collect::<Result<Vec<_>>>()?;
    let raw = levels.iter().zip(&cfg.level_weights).map(|(s, w)| s * w).sum();
    Ok(SfScore { raw, sim: similarity(raw, cfg.gamma), levels })
}
