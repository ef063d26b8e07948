//! Numeric settings of the whole pipeline, their `key = value` text form and
//! the hash that identifies them in every output.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::deterministic::DfConfig;
use crate::error::{Result, SrifError};
use crate::lpc::LpcConfig;
use crate::pyramid::DEFAULT_DEPTH;
use crate::statistical::SfConfig;
use crate::uncertainty::CalibrationOptions;

#[derive(Clone, Debug, PartialEq)]
pub struct SrifConfig {
    /// Number of Gaussian levels.
    pub depth: usize,
    pub df: DfConfig,
    pub sf: SfConfig,
    pub lpc: LpcConfig,
    /// Exponent of the assorted factor.
    pub alpha: f64,
    pub calibration: CalibrationOptions,
}

impl Default for SrifConfig {
    fn default() -> Self {
        Self {
            depth: DEFAULT_DEPTH,
            df: DfConfig::default(),
            sf: SfConfig::default(),
            lpc: LpcConfig::default(),
            alpha: 1.0,
            calibration: CalibrationOptions::default(),
        }
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(",")
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| SrifError::InvalidConfig(format!("{key}: {e}"))))
        .collect()
}

impl SrifConfig {
    pub fn validate(&self) -> Result<()> {
        self.df.validate()?;
        self.sf.validate()?;
        self.lpc.validate()?;
        if self.depth < 3 {
            return Err(SrifError::InvalidConfig(format!(
                "depth must be >= 3 so that two Gaussian levels exist, got {}",
                self.depth
            )));
        }
        if self.df.level_weights.len() > self.depth || self.sf.level_weights.len() >= self.depth {
            return Err(SrifError::InvalidConfig("more level weights than pyramid levels".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(SrifError::InvalidConfig(format!("alpha must be positive, got {}", self.alpha)));
        }
        if self.calibration.bins == 0 || self.calibration.min_bin_count == 0 {
            return Err(SrifError::InvalidConfig("calibration bins and min_bin_count must be positive".into()));
        }
        Ok(())
    }

    /// Canonical `key = value` serialization: fixed key order, floats with
    /// 17 significant digits.
    pub fn to_kv_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("depth", self.depth.to_string());
        kv("df.window", self.df.window.to_string());
        kv("df.window_sigma", fmt_f64(self.df.window_sigma));
        kv("df.c1", fmt_f64(self.df.c1));
        kv("df.cw", fmt_f64(self.df.cw));
        kv("df.alphas", fmt_list(&self.df.alphas));
        kv("df.level_weights", fmt_list(&self.df.level_weights));
        kv("df.clamp_floor", fmt_f64(self.df.clamp_floor));
        kv("sf.norm_window", self.sf.norm_window.to_string());
        kv("sf.c", fmt_f64(self.sf.c));
        kv("sf.bins", self.sf.bins.to_string());
        kv("sf.range", fmt_f64(self.sf.range));
        kv("sf.eps", fmt_f64(self.sf.eps));
        kv("sf.level_weights", fmt_list(&self.sf.level_weights));
        kv("gamma", fmt_f64(self.sf.gamma));
        kv("lpc.scales", fmt_list(&self.lpc.scales));
        kv(
            "lpc.phase_weights",
            self.lpc.phase_weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(","),
        );
        kv("lpc.orientations", self.lpc.orientations.to_string());
        kv("lpc.finest_wavelength", fmt_f64(self.lpc.finest_wavelength));
        kv("lpc.radial_sigma_on_f", fmt_f64(self.lpc.radial_sigma_on_f));
        kv("lpc.theta_spacing_on_sigma", fmt_f64(self.lpc.theta_spacing_on_sigma));
        kv("lpc.c", fmt_f64(self.lpc.c));
        kv("lpc.beta_k", fmt_f64(self.lpc.beta_k));
        kv("lpc.taper", self.lpc.taper.to_string());
        kv("alpha", fmt_f64(self.alpha));
        kv("calibration.bins", self.calibration.bins.to_string());
        kv("calibration.min_bin_count", self.calibration.min_bin_count.to_string());
        kv("calibration.alpha_grid", fmt_list(&self.calibration.alpha_grid));
        kv("calibration.gamma_grid", fmt_list(&self.calibration.gamma_grid));
        s
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn std::fmt::Display| SrifError::InvalidConfig(format!("{key}: {e}"));
        let float = || value.parse::<f64>().map_err(|e| bad(&e));
        let int = || value.parse::<usize>().map_err(|e| bad(&e));
        match key {
            "depth" => self.depth = int()?,
            "df.window" => self.df.window = int()?,
            "df.window_sigma" => self.df.window_sigma = float()?,
            "df.c1" => self.df.c1 = float()?,
            "df.cw" => self.df.cw = float()?,
            "df.alphas" => self.df.alphas = parse_list(key, value)?,
            "df.level_weights" => self.df.level_weights = parse_list(key, value)?,
            "df.clamp_floor" => self.df.clamp_floor = float()?,
            "sf.norm_window" => self.sf.norm_window = int()?,
            "sf.c" => self.sf.c = float()?,
            "sf.bins" => self.sf.bins = int()?,
            "sf.range" => self.sf.range = float()?,
            "sf.eps" => self.sf.eps = float()?,
            "sf.level_weights" => self.sf.level_weights = parse_list(key, value)?,
            "gamma" | "sf.gamma" => self.sf.gamma = float()?,
            "lpc.scales" => self.lpc.scales = parse_list(key, value)?,
            "lpc.phase_weights" => {
                self.lpc.phase_weights = value
                    .split(',')
                    .map(|s| s.trim().parse::<i32>().map_err(|e| bad(&e)))
                    .collect::<Result<_>>()?
            }
            "lpc.orientations" => self.lpc.orientations = int()?,
            "lpc.finest_wavelength" => self.lpc.finest_wavelength = float()?,
            "lpc.radial_sigma_on_f" => self.lpc.radial_sigma_on_f = float()?,
            "lpc.theta_spacing_on_sigma" => self.lpc.theta_spacing_on_sigma = float()?,
            "lpc.c" => self.lpc.c = float()?,
            "lpc.beta_k" => self.lpc.beta_k = float()?,
            "lpc.taper" => self.lpc.taper = int()?,
            "alpha" => self.alpha = float()?,
            "calibration.bins" | "bins" => self.calibration.bins = int()?,
            "calibration.min_bin_count" => self.calibration.min_bin_count = int()?,
            "calibration.alpha_grid" => self.calibration.alpha_grid = parse_list(key, value)?,
            "calibration.gamma_grid" => self.calibration.gamma_grid = parse_list(key, value)?,
            _ => return Err(SrifError::InvalidConfig(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` document on top of `self`. Blank lines and
    /// `#` comments are ignored.
    pub fn apply_kv_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| SrifError::Parse {
                line: i + 1,
                message: format!("expected key = value, got {raw:?}"),
            })?;
            self.set(k.trim(), v.trim()).map_err(|e| SrifError::Parse { line: i + 1, message: e.to_string() })?;
        }
        Ok(())
    }

    pub fn from_kv_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_kv_text(text)?;
        Ok(cfg)
    }

    /// First 16 hex digits of the SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_kv_text().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}
