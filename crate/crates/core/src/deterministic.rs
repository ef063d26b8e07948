//! Deterministic fidelity: the structure term of SSIM evaluated with a
//! Gaussian window, pooled with information-content weights, combined across
//! scales with MS-SSIM exponents and summed across pyramid levels.

use crate::error::{Result, SrifError};
use crate::filter::{gaussian_kernel, separable_valid_raw};
use crate::plane::ImagePlane;
use crate::pyramid::{reduce, PyramidPair};

/// MS-SSIM scale exponents, finest scale first. As published they sum to
/// 1.0001; [`DfConfig::default`] rescales them onto the simplex.
pub const MS_SSIM_EXPONENTS: [f64; 5] = [0.0448, 0.2856, 0.3001, 0.2363, 0.1333];

fn normalized_ms_ssim_exponents() -> Vec<f64> {
    let sum: f64 = MS_SSIM_EXPONENTS.iter().sum();
    MS_SSIM_EXPONENTS.iter().map(|a| a / sum).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct DfConfig {
    /// Odd side length of the Gaussian window.
    pub window: usize,
    pub window_sigma: f64,
    /// Stabilizer of the structure term.
    pub c1: f64,
    /// Noise-variance constant of the information-content weight.
    pub cw: f64,
    /// Per-scale exponents; the length is the number of scales per level.
    pub alphas: Vec<f64>,
    /// Weights over Gaussian levels `G_1, G_2, ...`.
    pub level_weights: Vec<f64>,
    /// Pooled per-scale scores are clamped to at least this before the
    /// fractional powers are taken.
    pub clamp_floor: f64,
}

impl Default for DfConfig {
    fn default() -> Self {
        Self {
            window: 11,
            window_sigma: 1.5,
            c1: 0.03 * 0.03,
            cw: 0.03 * 0.03,
            alphas: normalized_ms_ssim_exponents(),
            level_weights: vec![1.0 / 3.0; 3],
            clamp_floor: 1e-4,
        }
    }
}

pub(crate) fn check_simplex(name: &str, v: &[f64], strictly_positive: bool) -> Result<()> {
    if v.is_empty() {
        return Err(SrifError::InvalidConfig(format!("{name} is empty")));
    }
    let bad = v
        .iter()
        .any(|&x| !x.is_finite() || x < 0.0 || (strictly_positive && x == 0.0));
    let sum: f64 = v.iter().sum();
    if bad || (sum - 1.0).abs() > 1e-9 {
        return Err(SrifError::InvalidConfig(format!("{name} must be a probability vector, got {v:?}")));
    }
    Ok(())
}

impl DfConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window < 3 || self.window % 2 == 0 {
            return Err(SrifError::InvalidConfig(format!("DF window must be odd and >= 3, got {}", self.window)));
        }
        if !(self.window_sigma > 0.0 && self.c1 > 0.0 && self.cw > 0.0 && self.clamp_floor > 0.0) {
            return Err(SrifError::InvalidConfig("DF sigma, c1, cw and clamp floor must be positive".into()));
        }
        check_simplex("DF alphas", &self.alphas, true)?;
        check_simplex("DF level weights", &self.level_weights, false)
    }
}

/// Per-pixel structure comparison and information-content weight over the
/// valid region of the window.
#[derive(Clone, Debug)]
pub struct DfMap {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

impl DfMap {
    /// Information-weighted mean of the local scores; falls back to the plain
    /// mean when every weight is zero (both patches flat everywhere).
    pub fn pooled(&self) -> f64 {
        let total_w: f64 = self.weights.iter().sum();
        if total_w > 0.0 {
            self.values.iter().zip(&self.weights).map(|(v, w)| v * w).sum::<f64>() / total_w
        } else {
            self.values.iter().sum::<f64>() / self.values.len() as f64
        }
    }
}

struct LocalMoments {
    width: usize,
    height: usize,
    var_x: Vec<f64>,
    var_y: Vec<f64>,
    cov: Vec<f64>,
}

fn local_moments(reference: &ImagePlane, test: &ImagePlane, cfg: &DfConfig) -> Result<LocalMoments> {
    reference.ensure_same_dims(test, "DF level pair")?;
    reference.ensure_min(cfg.window, "DF window")?;
    let (w, h) = reference.dims();
    let taps = gaussian_kernel(cfg.window, cfg.window_sigma);
    let x = reference.data();
    let y = test.data();
    let filt = |buf: Vec<f64>| separable_valid_raw(&buf, w, h, &taps);

    let (mu_x, ow, oh) = filt(x.to_vec());
    let (mu_y, _, _) = filt(y.to_vec());
    let (xx, _, _) = filt(x.iter().map(|v| v * v).collect());
    let (yy, _, _) = filt(y.iter().map(|v| v * v).collect());
    let (xy, _, _) = filt(x.iter().zip(y).map(|(a, b)| a * b).collect());

    let n = ow * oh;
    let mut var_x = Vec::with_capacity(n);
    let mut var_y = Vec::with_capacity(n);
    let mut cov = Vec::with_capacity(n);
    for i in 0..n {
        var_x.push((xx[i] - mu_x[i] * mu_x[i]).max(0.0));
        var_y.push((yy[i] - mu_y[i] * mu_y[i]).max(0.0));
        cov.push(xy[i] - mu_x[i] * mu_y[i]);
    }
    Ok(LocalMoments { width: ow, height: oh, var_x, var_y, cov })
}

#[inline]
fn info_weight(var_x: f64, var_y: f64, cw: f64) -> f64 {
    ((1.0 + var_x / cw) * (1.0 + var_y / cw)).log2()
}

/// Local structure scores `(σ_xy + C1) / (σ_x σ_y + C1)` and their
/// information-content weights.
pub fn structure_map(reference: &ImagePlane, test: &ImagePlane, cfg: &DfConfig) -> Result<DfMap> {
    let m = local_moments(reference, test, cfg)?;
    let values = (0..m.cov.len())
        .map(|i| (m.cov[i] + cfg.c1) / ((m.var_x[i] * m.var_y[i]).sqrt() + cfg.c1))
        .collect();
    let weights = m
        .var_x
        .iter()
        .zip(&m.var_y)
        .map(|(&vx, &vy)| info_weight(vx, vy, cfg.cw))
        .collect();
    Ok(DfMap { width: m.width, height: m.height, values, weights })
}

/// Gaussian-channel mutual-information weight `log2((1 + σx²/Cw)(1 + σy²/Cw))`.
/// Zero where both patches are flat, growing with local variance.
pub fn information_weights(reference: &ImagePlane, test: &ImagePlane, cfg: &DfConfig) -> Result<Vec<f64>> {
    let m = local_moments(reference, test, cfg)?;
    Ok(m.var_x
        .iter()
        .zip(&m.var_y)
        .map(|(&vx, &vy)| info_weight(vx, vy, cfg.cw))
        .collect())
}

/// Multi-scale score of one Gaussian level.
#[derive(Clone, Debug, PartialEq)]
pub struct DfLevelScore {
    /// Pooled score per scale before clamping.
    pub scale_scores: Vec<f64>,
    /// Exponents actually applied (renormalized if coarse scales were dropped).
    pub exponents: Vec<f64>,
    pub value: f64,
}

/// Product of clamped, pooled per-scale scores raised to their exponents.
/// Scales that no longer fit the window are dropped and the remaining
/// exponents renormalized.
pub fn df_level(reference: &ImagePlane, test: &ImagePlane, cfg: &DfConfig) -> Result<DfLevelScore> {
    reference.ensure_same_dims(test, "DF level pair")?;
    reference.ensure_min(cfg.window, "DF window")?;

    let mut x = reference.clone();
    let mut y = test.clone();
    let mut scale_scores = Vec::with_capacity(cfg.alphas.len());
    for j in 0..cfg.alphas.len() {
        if j > 0 {
            if x.width().div_ceil(2) < cfg.window || x.height().div_ceil(2) < cfg.window {
                break;
            }
            x = reduce(&x)?;
            y = reduce(&y)?;
        }
        scale_scores.push(structure_map(&x, &y, cfg)?.pooled());
    }

    let used: f64 = cfg.alphas[..scale_scores.len()].iter().sum();
    let exponents: Vec<f64> = cfg.alphas[..scale_scores.len()].iter().map(|a| a / used).collect();
    let value = scale_scores
        .iter()
        .zip(&exponents)
        .map(|(&d, &a)| d.max(cfg.clamp_floor).powf(a))
        .product();
    Ok(DfLevelScore { scale_scores, exponents, value })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DfScore {
    pub value: f64,
    pub levels: Vec<DfLevelScore>,
}

/// Weighted sum of level scores over the finest Gaussian levels.
pub fn df_total(pair: &PyramidPair, cfg: &DfConfig) -> Result<DfScore> {
    cfg.validate()?;
    let n = cfg.level_weights.len();
    if pair.depth() < n {
        return Err(SrifError::InvalidConfig(format!(
            "DF uses {n} Gaussian levels but the pyramid has {}",
            pair.depth()
        )));
    }
    let levels = (0..n)
        .map(|l| df_level(&pair.reference.levels[l], &pair.test.levels[l], cfg))
        .collect::<Result<Vec<_>>>()?;
    let value = levels.iter().zip(&cfg.level_weights).map(|(s, w)| w * s.value).sum();
    Ok(DfScore { value, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::textured_image;

    #[test]
    fn identical_images_score_one_everywhere() {
        let img = textured_image(48, 40, 3);
        let map = structure_map(&img, &img, &DfConfig::default()).unwrap();
        assert_eq!((map.width, map.height), (38, 30));
        assert!(map.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn flat_patches_score_one() {
        let a = ImagePlane::filled(16, 16, 0.2);
        let b = ImagePlane::filled(16, 16, 0.7);
        let cfg = DfConfig::default();
        let map = structure_map(&a, &b, &cfg).unwrap();
        assert!(map.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert!(map.weights.iter().all(|&w| w.abs() < 1e-12));
        assert!((map.pooled() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn step_edge_carries_more_weight_than_flat_area() {
        let step = ImagePlane::from_fn(40, 40, |x, _| if x < 20 { 0.2 } else { 0.8 });
        let weights = information_weights(&step, &step, &DfConfig::default()).unwrap();
        // Valid map is 30x30; column c corresponds to image column c + 5.
        let at = |c: usize| weights[10 * 30 + c];
        assert!(at(14) > at(0));
        assert!(at(14) > 0.0);
        assert_eq!(at(0), 0.0);
    }

    #[test]
    fn mismatched_dims_are_rejected() {
        let a = ImagePlane::filled(16, 16, 0.2);
        let b = ImagePlane::filled(16, 17, 0.2);
        assert!(matches!(
            structure_map(&a, &b, &DfConfig::default()),
            Err(SrifError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn level_drops_infeasible_scales() {
        let img = textured_image(40, 40, 1);
        let blurred = crate::filter::gaussian_blur(&img, 1.0);
        let s = df_level(&img, &blurred, &DfConfig::default()).unwrap();
        // 40 -> 20 -> 10: the third scale no longer fits an 11 px window.
        assert_eq!(s.scale_scores.len(), 2);
        assert!((s.exponents.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn level_too_small_errors() {
        let img = ImagePlane::filled(10, 10, 0.5);
        assert!(matches!(
            df_level(&img, &img, &DfConfig::default()),
            Err(SrifError::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let mut cfg = DfConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.alphas = vec![0.5, 0.6];
        assert!(cfg.validate().is_err());
        cfg = DfConfig { window: 10, ..DfConfig::default() };
        assert!(cfg.validate().is_err());
    }
}
