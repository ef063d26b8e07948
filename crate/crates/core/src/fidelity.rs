//! End-to-end scoring of one (reference, test) pair.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::config::SrifConfig;
use crate::deterministic::df_total;
use crate::error::{Result, SrifError};
use crate::plane::ImagePlane;
use crate::pyramid::PyramidPair;
use crate::statistical::sf_total;
use crate::uncertainty::{assorted_features, srif, CalibrationTable, Weights};

/// Everything computed for one pair. KLD values are in nats, entropies in bits.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityReport {
    pub d: f64,
    pub s_raw: f64,
    pub s_sim: f64,
    pub sr: f64,
    pub tr: f64,
    pub f: f64,
    pub w_d: f64,
    pub w_s: f64,
    pub q_ds: f64,
    pub df_levels: Vec<f64>,
    pub sf_levels: Vec<f64>,
    pub clamp_floor: f64,
    /// Guards that fired while scoring (degenerate reference, missing table).
    pub flags: Vec<&'static str>,
}

impl FidelityReport {
    /// `key = value` lines with 6 decimals, closed by the config hash.
    pub fn to_record(&self, config_hash: &str) -> String {
        let mut s = String::new();
        for (k, v) in [
            ("D", self.d),
            ("S_raw", self.s_raw),
            ("S_sim", self.s_sim),
            ("sr", self.sr),
            ("tr", self.tr),
            ("f", self.f),
            ("w_d", self.w_d),
            ("w_s", self.w_s),
            ("Q_ds", self.q_ds),
        ] {
            let _ = writeln!(s, "{k} = {v:.6}");
        }
        if !self.flags.is_empty() {
            let _ = writeln!(s, "flags = {}", self.flags.join(","));
        }
        let _ = writeln!(s, "config_hash = {config_hash}");
        s
    }

    pub fn quality(&self, mode: CombineMode) -> f64 {
        match mode {
            CombineMode::Srif => self.q_ds,
            CombineMode::DfOnly => self.d,
            CombineMode::SfOnly => self.s_sim,
            CombineMode::Average => 0.5 * (self.d + self.s_sim),
        }
    }
}

/// How the two measures are reduced to one prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Srif,
    DfOnly,
    SfOnly,
    Average,
}

impl FromStr for CombineMode {
    type Err = SrifError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "srif" => Ok(Self::Srif),
            "df_only" => Ok(Self::DfOnly),
            "sf_only" => Ok(Self::SfOnly),
            "avg" => Ok(Self::Average),
            other => Err(SrifError::InvalidConfig(format!("unknown mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for CombineMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Srif => "srif",
            Self::DfOnly => "df_only",
            Self::SfOnly => "sf_only",
            Self::Average => "avg",
        })
    }
}

/// Scores a pair. Without a calibration table the measures are combined with
/// equal weights and the report is flagged.
pub fn score_pair(
    reference: &ImagePlane,
    test: &ImagePlane,
    cfg: &SrifConfig,
    table: Option<&CalibrationTable>,
) -> Result<FidelityReport> {
    cfg.validate()?;
    let pair = PyramidPair::build(reference, test, cfg.depth)?;
    let df = df_total(&pair, &cfg.df)?;
    let sf = sf_total(&pair, &cfg.sf)?;
    let (features, mut flags) = assorted_features(&pair, &cfg.lpc, &cfg.sf, cfg.alpha)?;
    let weights = match table {
        Some(t) => t.lookup(features.f),
        None => {
            flags.push("uncalibrated_equal_weights");
            Weights::EQUAL
        }
    };
    let q_ds = srif(df.value, sf.sim, weights)?;
    Ok(FidelityReport {
        d: df.value,
        s_raw: sf.raw,
        s_sim: sf.sim,
        sr: features.sr,
        tr: features.tr,
        f: features.f,
        w_d: weights.w_d,
        w_s: weights.w_s,
        q_ds,
        df_levels: df.levels.iter().map(|l| l.value).collect(),
        sf_levels: sf.levels,
        clamp_floor: cfg.df.clamp_floor,
        flags,
    })
}

/// Adopts the exponent and similarity rate a table was calibrated with.
pub fn config_for_table(cfg: &SrifConfig, table: &CalibrationTable) -> SrifConfig {
    let mut out = cfg.clone();
    out.alpha = table.alpha;
    out.sf.gamma = table.gamma;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::textured_image;

    #[test]
    fn identical_pair_scores_one() {
        let img = textured_image(96, 80, 4);
        let r = score_pair(&img, &img, &SrifConfig::default(), None).unwrap();
        assert!((r.d - 1.0).abs() < 1e-9);
        assert!(r.s_raw.abs() < 1e-10);
        assert!((r.q_ds - 1.0).abs() < 1e-6);
        assert_eq!(r.flags, vec!["uncalibrated_equal_weights"]);
        let rec = r.to_record("0123");
        assert!(rec.contains("D = 1.000000\n"));
        assert!(rec.contains("S_raw = 0.000000\n"));
        assert!(rec.contains("Q_ds = 1.000000\n"));
        assert!(rec.ends_with("config_hash = 0123\n"));
    }

    #[test]
    fn flat_reference_is_guarded() {
        let flat = ImagePlane::filled(80, 80, 0.5);
        let test = textured_image(80, 80, 1);
        let r = score_pair(&flat, &test, &SrifConfig::default(), None).unwrap();
        assert!(r.flags.contains(&"degenerate_reference_sharpness"));
        assert!(r.flags.contains(&"degenerate_reference_texture"));
        assert_eq!((r.sr, r.tr), (1.0, 1.0));
    }

    #[test]
    fn modes_parse() {
        for m in ["srif", "df_only", "sf_only", "avg"] {
            assert_eq!(m.parse::<CombineMode>().unwrap().to_string(), m);
        }
        assert!("mean".parse::<CombineMode>().is_err());
    }
}
