//! Local phase coherence sharpness index (LPC-SI).
//!
//! Complex log-Gabor responses at three scales per orientation are combined
//! through the cross-scale phase relation `φ1 - 3φ2 + 2φ3 ≈ 0`, which holds
//! at sharp features and degrades under blur. Per-pixel coherence is pooled
//! over orientations by fine-scale energy and over space by a rank-weighted
//! average that emphasizes the most coherent locations.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use sha2::{Digest, Sha256};

use crate::error::{Result, SrifError};
use crate::filter::reflect;
use crate::plane::ImagePlane;

#[derive(Clone, Debug, PartialEq)]
pub struct LpcConfig {
    /// Relative scale factors; center frequency at scale `s` is `ω1 / s`.
    pub scales: Vec<f64>,
    /// Phase-relation weights, one per scale. Must satisfy `Σ w = 0` and
    /// `Σ w / s = 0`.
    pub phase_weights: Vec<i32>,
    pub orientations: usize,
    /// Wavelength in pixels of the finest log-Gabor filter.
    pub finest_wavelength: f64,
    /// Ratio `σ / f0` of the log-radial Gaussian.
    pub radial_sigma_on_f: f64,
    /// Orientation spacing divided by the angular sigma.
    pub theta_spacing_on_sigma: f64,
    /// Magnitude stabilizer, in 8-bit intensity units.
    pub c: f64,
    /// Decay constant of the rank-weighted spatial pooling.
    pub beta_k: f64,
    /// Width in pixels of the raised-cosine taper at the padded canvas edge.
    pub taper: usize,
}

impl Default for LpcConfig {
    fn default() -> Self {
        Self {
            scales: vec![1.0, 1.5, 2.0],
            phase_weights: vec![1, -3, 2],
            orientations: 8,
            finest_wavelength: 3.0,
            radial_sigma_on_f: 0.55,
            theta_spacing_on_sigma: 1.2,
            c: 2.0,
            beta_k: 1e-4,
            taper: 8,
        }
    }
}

/// Smallest image side accepted by [`lpc_si`].
pub const LPC_MIN_SIZE: usize = 32;

impl LpcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scales.len() != 3 || self.phase_weights.len() != 3 {
            return Err(SrifError::InvalidConfig("LPC-SI uses exactly three scales".into()));
        }
        if self.orientations < 4 {
            return Err(SrifError::InvalidConfig(format!(
                "LPC-SI needs >= 4 orientations, got {}",
                self.orientations
            )));
        }
        let sum_w: i32 = self.phase_weights.iter().sum();
        let sum_ws: f64 = self
            .phase_weights
            .iter()
            .zip(&self.scales)
            .map(|(&w, &s)| w as f64 / s)
            .sum();
        if sum_w != 0 || sum_ws.abs() > 1e-12 {
            return Err(SrifError::InvalidConfig(
                "phase weights do not cancel linear phase across the configured scales".into(),
            ));
        }
        if !(self.finest_wavelength >= 2.0
            && self.radial_sigma_on_f > 0.0
            && self.radial_sigma_on_f < 1.0
            && self.theta_spacing_on_sigma > 0.0
            && self.c > 0.0
            && self.beta_k > 0.0)
        {
            return Err(SrifError::InvalidConfig("LPC-SI filter constants out of range".into()));
        }
        Ok(())
    }

    fn cache_key(&self) -> [u8; 32] {
        let canon = format!(
            "{:?}|{:?}|{}|{:.17e}|{:.17e}|{:.17e}",
            self.scales,
            self.phase_weights,
            self.orientations,
            self.finest_wavelength,
            self.radial_sigma_on_f,
            self.theta_spacing_on_sigma
        );
        Sha256::digest(canon.as_bytes()).into()
    }
}

/// Frequency-domain filters for one canvas size, indexed `[orientation][scale]`.
struct FilterBank {
    filters: Vec<Vec<Vec<f64>>>,
}

type BankKey = (usize, usize, [u8; 32]);

const BANK_CACHE_CAPACITY: usize = 8;

fn bank_cache() -> &'static RwLock<HashMap<BankKey, Arc<FilterBank>>> {
    static CACHE: OnceLock<RwLock<HashMap<BankKey, Arc<FilterBank>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn filter_bank(pw: usize, ph: usize, cfg: &LpcConfig) -> Arc<FilterBank> {
    let key = (pw, ph, cfg.cache_key());
    if let Some(bank) = bank_cache().read().expect("filter cache poisoned").get(&key) {
        return Arc::clone(bank);
    }
    let mut cache = bank_cache().write().expect("filter cache poisoned");
    if let Some(bank) = cache.get(&key) {
        return Arc::clone(bank);
    }
    if cache.len() >= BANK_CACHE_CAPACITY {
        cache.clear();
    }
    let bank = Arc::new(build_bank(pw, ph, cfg));
    cache.insert(key, Arc::clone(&bank));
    bank
}

#[inline]
fn signed_freq(i: usize, n: usize) -> f64 {
    let k = if i < n.div_ceil(2) { i as f64 } else { i as f64 - n as f64 };
    k / n as f64
}

fn build_bank(pw: usize, ph: usize, cfg: &LpcConfig) -> FilterBank {
    let omega1 = 2.0 * PI / cfg.finest_wavelength;
    let log_sigma = cfg.radial_sigma_on_f.ln();
    let radial_denom = 2.0 * log_sigma * log_sigma;
    let spacing = PI / cfg.orientations as f64;
    let theta_sigma = spacing / cfg.theta_spacing_on_sigma;
    let angular_denom = 2.0 * theta_sigma * theta_sigma;

    let mut radius = vec![0.0; pw * ph];
    let mut angle = vec![0.0; pw * ph];
    for y in 0..ph {
        let fy = signed_freq(y, ph);
        for x in 0..pw {
            let fx = signed_freq(x, pw);
            radius[y * pw + x] = 2.0 * PI * (fx * fx + fy * fy).sqrt();
            angle[y * pw + x] = fy.atan2(fx);
        }
    }

    let filters = (0..cfg.orientations)
        .map(|o| {
            let theta0 = o as f64 * spacing;
            let angular: Vec<f64> = angle
                .iter()
                .map(|&a| {
                    let d = (a - theta0 + PI).rem_euclid(2.0 * PI) - PI;
                    (-d * d / angular_denom).exp()
                })
                .collect();
            cfg.scales
                .iter()
                .map(|&s| {
                    let center = omega1 / s;
                    radius
                        .iter()
                        .zip(&angular)
                        .map(|(&r, &ang)| {
                            if r == 0.0 {
                                0.0
                            } else {
                                let l = (r / center).ln();
                                (-l * l / radial_denom).exp() * ang
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    FilterBank { filters }
}

fn fft2(buf: &mut [Complex<f64>], w: usize, h: usize, inverse: bool, planner: &mut FftPlanner<f64>) {
    let row_fft = if inverse { planner.plan_fft_inverse(w) } else { planner.plan_fft_forward(w) };
    row_fft.process(buf);
    let mut t = vec![Complex::new(0.0, 0.0); w * h];
    for y in 0..h {
        for x in 0..w {
            t[x * h + y] = buf[y * w + x];
        }
    }
    let col_fft = if inverse { planner.plan_fft_inverse(h) } else { planner.plan_fft_forward(h) };
    col_fft.process(&mut t);
    let scale = if inverse { 1.0 / (w * h) as f64 } else { 1.0 };
    for y in 0..h {
        for x in 0..w {
            buf[y * w + x] = t[x * h + y] * scale;
        }
    }
}

/// Reflect-pads to the next power of two (centered), removes the mean and
/// tapers the outermost `taper` pixels of the canvas with a raised cosine.
fn prepare_canvas(img: &ImagePlane, taper: usize) -> (Vec<f64>, usize, usize, usize, usize) {
    let (w, h) = img.dims();
    let pw = w.next_power_of_two();
    let ph = h.next_power_of_two();
    let left = (pw - w) / 2;
    let top = (ph - h) / 2;
    let mut canvas = vec![0.0; pw * ph];
    for y in 0..ph {
        let sy = reflect(y as isize - top as isize, h);
        for x in 0..pw {
            let sx = reflect(x as isize - left as isize, w);
            canvas[y * pw + x] = 255.0 * img.get(sx, sy);
        }
    }
    let mean = canvas.iter().sum::<f64>() / canvas.len() as f64;
    canvas.iter_mut().for_each(|v| *v -= mean);
    if taper > 0 {
        let ramp = |d: usize| -> f64 {
            if d >= taper {
                1.0
            } else {
                0.5 * (1.0 - (PI * (d as f64 + 0.5) / taper as f64).cos())
            }
        };
        for y in 0..ph {
            let ry = ramp(y.min(ph - 1 - y));
            for x in 0..pw {
                let rx = ramp(x.min(pw - 1 - x));
                canvas[y * pw + x] *= rx * ry;
            }
        }
    }
    (canvas, pw, ph, left, top)
}

/// Per-pixel, orientation-pooled phase coherence over the cropped image area
/// (a border of `min(w, h) / 16` pixels is excluded). Returns `None` when the
/// band-pass energy is zero.
pub fn lpc_map(img: &ImagePlane, cfg: &LpcConfig) -> Result<Option<ImagePlane>> {
    cfg.validate()?;
    img.ensure_min(LPC_MIN_SIZE, "LPC-SI filter support")?;
    let (w, h) = img.dims();
    let (canvas, pw, ph, left, top) = prepare_canvas(img, cfg.taper);
    let bank = filter_bank(pw, ph, cfg);

    let mut planner = FftPlanner::new();
    let mut spectrum: Vec<Complex<f64>> = canvas.iter().map(|&v| Complex::new(v, 0.0)).collect();
    fft2(&mut spectrum, pw, ph, false, &mut planner);

    let border = ((w.min(h) as f64) / 16.0).round() as usize;
    let cw = w - 2 * border;
    let ch = h - 2 * border;
    let n = cw * ch;

    let mut num = vec![0.0; n];
    let mut energy = vec![0.0; n];
    let mut total_magnitude = 0.0;
    let mut responses: Vec<Vec<Complex<f64>>> = vec![Vec::new(); cfg.scales.len()];
    for per_orientation in &bank.filters {
        for (resp, filt) in responses.iter_mut().zip(per_orientation) {
            let mut buf: Vec<Complex<f64>> = spectrum.iter().zip(filt).map(|(s, &f)| s * f).collect();
            fft2(&mut buf, pw, ph, true, &mut planner);
            *resp = Vec::with_capacity(n);
            for y in 0..ch {
                let row = (top + border + y) * pw + left + border;
                resp.extend_from_slice(&buf[row..row + cw]);
            }
        }
        for i in 0..n {
            let mut product = Complex::new(1.0, 0.0);
            let mut mag_product = 1.0;
            for (resp, &wgt) in responses.iter().zip(&cfg.phase_weights) {
                let c = resp[i];
                let term = if wgt >= 0 { c } else { c.conj() };
                product *= term.powu(wgt.unsigned_abs());
                mag_product *= c.norm().powi(wgt.abs());
            }
            let coherence = product.re / (mag_product + cfg.c);
            let m1 = responses[0][i].norm();
            num[i] += m1 * coherence;
            energy[i] += m1;
            total_magnitude += responses.iter().map(|r| r[i].norm()).sum::<f64>();
        }
    }
    if total_magnitude < 1e-12 {
        return Ok(None);
    }
    let data = num.iter().zip(&energy).map(|(s, e)| s / (e + cfg.c)).collect();
    Ok(Some(ImagePlane::from_raw(cw, ch, data)))
}

/// Rank-weighted pooling: values sorted in descending order get weights
/// `exp(-(k / (K - 1)) / β_k)`.
pub fn rank_pool(values: &[f64], beta_k: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let k = sorted.len();
    if k == 1 {
        return sorted[0];
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, v) in sorted.iter().enumerate() {
        let u = (-(i as f64 / (k - 1) as f64) / beta_k).exp();
        if u == 0.0 {
            break;
        }
        num += u * v;
        den += u;
    }
    num / den
}

/// Sharpness index in `[0, 1]`; flat images score 0.
pub fn lpc_si(img: &ImagePlane, cfg: &LpcConfig) -> Result<f64> {
    Ok(match lpc_map(img, cfg)? {
        Some(map) => rank_pool(map.data(), cfg.beta_k).clamp(0.0, 1.0),
        None => 0.0,
    })
}
