//! Content-dependent uncertainty weighting of the two fidelity measures.
//!
//! A sharpness ratio and a texture-richness ratio are folded into an assorted
//! factor `f`. Labeled samples are binned along `f`; within each bin the
//! residual variances of the two measures (after logistic mapping onto MOS)
//! give inverse-variance weights `w_d = v_s / (v_d + v_s)`, `w_s = 1 - w_d`.

use std::fmt::Write as _;

use crate::error::{Result, SrifError};
use crate::eval::{fit_logistic, logistic, srcc};
use crate::lpc::{lpc_si, LpcConfig};
use crate::pyramid::PyramidPair;
use crate::statistical::{bin_index, normalize_band, similarity, SfConfig};

/// Denominators below this make a ratio degenerate.
pub const DEGENERATE_REFERENCE: f64 = 1e-9;

/// Histogram size for the entropy of the texture-richness ratio.
pub const ENTROPY_BINS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AssortedFeatures {
    pub sr: f64,
    pub tr: f64,
    pub f: f64,
}

/// `lpc_si(test G_1) / lpc_si(reference G_2)`.
pub fn sharpness_ratio(pair: &PyramidPair, lpc: &LpcConfig) -> Result<f64> {
    let reference = lpc_si(&pair.reference.levels[1], lpc)?;
    if reference < DEGENERATE_REFERENCE {
        return Err(SrifError::DegenerateReference("LPC-SI of reference level 2 is zero"));
    }
    Ok(lpc_si(&pair.test.levels[0], lpc)? / reference)
}

/// Shannon entropy in bits of `values` over `bins` equal bins on `[lo, hi]`
/// (values outside are clamped to the support).
pub fn entropy_bits(values: &[f64], lo: f64, hi: f64, bins: usize) -> f64 {
    let mut counts = vec![0u64; bins];
    for &v in values {
        counts[bin_index(v.clamp(lo, hi), lo, hi, bins)] += 1;
    }
    let n = values.len() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Entropy of the normalized test band `L_1` over `[-B, B]` divided by the
/// entropy of the reference Gaussian level `G_2` over `[0, 1]`.
pub fn texture_ratio(pair: &PyramidPair, sf: &SfConfig) -> Result<f64> {
    let reference = entropy_bits(pair.reference.levels[1].data(), 0.0, 1.0, ENTROPY_BINS);
    if reference < DEGENERATE_REFERENCE {
        return Err(SrifError::DegenerateReference("entropy of reference level 2 is zero"));
    }
    let band = normalize_band(&pair.test_bands.levels[0], sf)?;
    Ok(entropy_bits(band.data(), -sf.range, sf.range, ENTROPY_BINS) / reference)
}

/// `sr^α + tr^α`.
pub fn assorted_factor(sr: f64, tr: f64, alpha: f64) -> f64 {
    sr.powf(alpha) + tr.powf(alpha)
}

/// Convex pair of weights for DF and SF.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weights {
    pub w_d: f64,
    pub w_s: f64,
}

impl Weights {
    pub const EQUAL: Weights = Weights { w_d: 0.5, w_s: 0.5 };

    pub fn from_w_d(w_d: f64) -> Self {
        Self { w_d, w_s: 1.0 - w_d }
    }
}

/// Inverse-variance weights for one bin. The flag is set when both variances
/// are zero, in which case the weights are equal.
pub fn uncertainty_weights(v_d: f64, v_s: f64) -> (Weights, bool) {
    let total = v_d + v_s;
    if total > 0.0 {
        (Weights::from_w_d((v_s / total).clamp(0.0, 1.0)), false)
    } else {
        (Weights::EQUAL, true)
    }
}

/// `w_d D + w_s S_sim`.
pub fn srif(d: f64, s_sim: f64, weights: Weights) -> Result<f64> {
    let sum = weights.w_d + weights.w_s;
    if (sum - 1.0).abs() > 1e-9 {
        return Err(SrifError::WeightNormalization { sum });
    }
    Ok(weights.w_d * d + weights.w_s * s_sim)
}

/// One labeled observation used for calibration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CalibrationSample {
    pub d: f64,
    pub s_sim: f64,
    pub f: f64,
    pub mos: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationOptions {
    /// Number of quantile bins before merging.
    pub bins: usize,
    pub min_bin_count: usize,
    /// Candidate exponents for the assorted factor.
    pub alpha_grid: Vec<f64>,
    /// Candidate rates for the similarity mapping of the divergence.
    pub gamma_grid: Vec<f64>,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        Self {
            bins: 8,
            min_bin_count: 20,
            alpha_grid: vec![0.5, 1.0, 2.0, 3.0],
            gamma_grid: vec![0.3, 1.0, 3.0, 10.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationBin {
    /// Inclusive lower edge.
    pub lo: f64,
    /// Exclusive upper edge.
    pub hi: f64,
    pub v_d: f64,
    pub v_s: f64,
    pub w_d: f64,
    pub w_s: f64,
    pub count: usize,
}

impl CalibrationBin {
    pub fn degenerate(&self) -> bool {
        self.v_d + self.v_s == 0.0
    }

    pub fn weights(&self) -> Weights {
        Weights { w_d: self.w_d, w_s: self.w_s }
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationTable {
    pub bins: Vec<CalibrationBin>,
    pub alpha: f64,
    pub gamma: f64,
    pub config_hash: String,
    pub source: String,
}

pub const TABLE_MAGIC: &str = "SRIF-CALIBRATION";
pub const TABLE_VERSION: u32 = 1;

fn population_variance(v: &[f64]) -> f64 {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64
}

/// Splits `sorted_f` into at most `bins` runs of roughly equal size without
/// separating equal values. Returns run boundaries `[0, .., n]`.
fn quantile_bounds(sorted_f: &[f64], bins: usize) -> Vec<usize> {
    let n = sorted_f.len();
    let mut bounds = vec![0];
    for k in 1..bins {
        let mut b = (k * n + bins / 2) / bins;
        while b > 0 && b < n && sorted_f[b] == sorted_f[b - 1] {
            b += 1;
        }
        if b > *bounds.last().expect("nonempty") && b < n {
            bounds.push(b);
        }
    }
    bounds.push(n);
    bounds
}

/// Merges the smallest under-populated run into its smaller neighbour until
/// every run holds at least `min_count` samples or a single run remains.
fn merge_small(mut bounds: Vec<usize>, min_count: usize) -> Vec<usize> {
    loop {
        let sizes: Vec<usize> = bounds.windows(2).map(|w| w[1] - w[0]).collect();
        if sizes.len() <= 1 {
            return bounds;
        }
        let Some((idx, _)) = sizes
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < min_count)
            .min_by_key(|(i, &s)| (s, *i))
        else {
            return bounds;
        };
        let merge_left = if idx == 0 {
            false
        } else if idx == sizes.len() - 1 {
            true
        } else {
            sizes[idx - 1] <= sizes[idx + 1]
        };
        // Removing the boundary between run idx and its neighbour.
        let boundary = if merge_left { idx } else { idx + 1 };
        bounds.remove(boundary);
    }
}

/// Builds the bin table from labeled samples.
pub fn calibrate(
    samples: &[CalibrationSample],
    opts: &CalibrationOptions,
    alpha: f64,
    gamma: f64,
    config_hash: &str,
    source: &str,
) -> Result<CalibrationTable> {
    let needed = 10 * opts.bins.max(1);
    if samples.len() < needed {
        return Err(SrifError::InsufficientData { needed, got: samples.len() });
    }
    if opts.min_bin_count > samples.len() {
        return Err(SrifError::InsufficientData { needed: opts.min_bin_count, got: samples.len() });
    }
    if samples.iter().any(|s| !(s.mos.is_finite() && s.f.is_finite() && s.d.is_finite() && s.s_sim.is_finite())) {
        return Err(SrifError::DegenerateScores("non-finite calibration sample"));
    }

    let mos: Vec<f64> = samples.iter().map(|s| s.mos).collect();
    let d: Vec<f64> = samples.iter().map(|s| s.d).collect();
    let s_sim: Vec<f64> = samples.iter().map(|s| s.s_sim).collect();
    let pd = fit_logistic(&d, &mos)?;
    let ps = fit_logistic(&s_sim, &mos)?;

    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[a].f.total_cmp(&samples[b].f).then(a.cmp(&b)));
    let sorted_f: Vec<f64> = order.iter().map(|&i| samples[i].f).collect();
    let bounds = merge_small(quantile_bounds(&sorted_f, opts.bins), opts.min_bin_count);

    let last = bounds.len() - 2;
    let bins = bounds
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            let members = &order[w[0]..w[1]];
            let e_d: Vec<f64> = members.iter().map(|&i| logistic(d[i], &pd) - mos[i]).collect();
            let e_s: Vec<f64> = members.iter().map(|&i| logistic(s_sim[i], &ps) - mos[i]).collect();
            let v_d = population_variance(&e_d);
            let v_s = population_variance(&e_s);
            let (weights, degenerate) = uncertainty_weights(v_d, v_s);
            if degenerate {
                log::warn!("DegenerateBin: bin {k} has zero residual variance for both measures; using 0.5/0.5");
            }
            let hi = if k == last { sorted_f[w[1] - 1].next_up() } else { sorted_f[w[1]] };
            CalibrationBin {
                lo: sorted_f[w[0]],
                hi,
                v_d,
                v_s,
                w_d: weights.w_d,
                w_s: weights.w_s,
                count: members.len(),
            }
        })
        .collect();

    Ok(CalibrationTable {
        bins,
        alpha,
        gamma,
        config_hash: config_hash.to_string(),
        source: source.split_whitespace().collect::<Vec<_>>().join("_"),
    })
}

/// Labeled observation before the assorted factor and the similarity
/// mapping are formed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioSample {
    pub d: f64,
    pub s_raw: f64,
    pub sr: f64,
    pub tr: f64,
    pub mos: f64,
}

/// One grid point of [`calibrate_with_search`] and the SRCC its table reached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchPoint {
    pub alpha: f64,
    pub gamma: f64,
    pub srcc: f64,
}

/// Calibrates once per `(alpha, gamma)` candidate and keeps the table whose
/// SRIF predictions rank-correlate best with MOS. Ties keep the earlier
/// candidate. Returns the table and every candidate's SRCC.
pub fn calibrate_with_search(
    samples: &[RatioSample],
    opts: &CalibrationOptions,
    config_hash: &str,
    source: &str,
) -> Result<(CalibrationTable, Vec<SearchPoint>)> {
    if opts.alpha_grid.is_empty() || opts.gamma_grid.is_empty() {
        return Err(SrifError::InvalidConfig("empty alpha or gamma grid".into()));
    }
    let mos: Vec<f64> = samples.iter().map(|s| s.mos).collect();
    let mut best: Option<(CalibrationTable, f64)> = None;
    let mut trace = Vec::with_capacity(opts.alpha_grid.len() * opts.gamma_grid.len());
    for &gamma in &opts.gamma_grid {
        for &alpha in &opts.alpha_grid {
            let labeled: Vec<CalibrationSample> = samples
                .iter()
                .map(|s| CalibrationSample {
                    d: s.d,
                    s_sim: similarity(s.s_raw, gamma),
                    f: assorted_factor(s.sr, s.tr, alpha),
                    mos: s.mos,
                })
                .collect();
            let table = calibrate(&labeled, opts, alpha, gamma, config_hash, source)?;
            let q: Vec<f64> = labeled
                .iter()
                .map(|s| srif(s.d, s.s_sim, table.lookup(s.f)))
                .collect::<Result<_>>()?;
            let score = srcc(&q, &mos).unwrap_or(f64::NEG_INFINITY);
            trace.push(SearchPoint { alpha, gamma, srcc: score });
            if best.as_ref().is_none_or(|(_, b)| score > *b) {
                best = Some((table, score));
            }
        }
    }
    let (table, _) = best.expect("nonempty grid");
    Ok((table, trace))
}

impl CalibrationTable {
    /// Weights of the bin containing `f` (half-open `[lo, hi)`); values
    /// outside the calibrated range use the first or last bin.
    pub fn lookup(&self, f: f64) -> Weights {
        let idx = self.bins.partition_point(|b| b.lo <= f);
        self.bins[idx.saturating_sub(1)].weights()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins.is_empty() {
            return Err(SrifError::InvalidConfig("calibration table has no bins".into()));
        }
        for (k, b) in self.bins.iter().enumerate() {
            if !(b.lo < b.hi) {
                return Err(SrifError::InvalidConfig(format!("bin {k}: edges not increasing")));
            }
            if k > 0 && self.bins[k - 1].hi != b.lo {
                return Err(SrifError::InvalidConfig(format!("bin {k}: not contiguous with bin {}", k - 1)));
            }
            if !(0.0..=1.0).contains(&b.w_d) || !(0.0..=1.0).contains(&b.w_s) || (b.w_d + b.w_s - 1.0).abs() > 1e-12 {
                return Err(SrifError::InvalidConfig(format!("bin {k}: weights off the simplex")));
            }
        }
        Ok(())
    }

    /// Versioned plain-text form. Floats carry 17 significant digits, which
    /// round-trips every `f64` exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{TABLE_MAGIC} v{TABLE_VERSION} alpha={:.16e} gamma={:.16e} config_hash={} source={}\n",
            self.alpha, self.gamma, self.config_hash, self.source
        );
        out.push_str("# lo,hi,v_d,v_s,w_d,w_s,count\n");
        for b in &self.bins {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                b.lo, b.hi, b.v_d, b.v_s, b.w_d, b.w_s, b.count
            );
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| SrifError::Parse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (hline, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| parse_err(1, "empty calibration table".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some(TABLE_MAGIC) {
            return Err(parse_err(hline, format!("expected {TABLE_MAGIC} header")));
        }
        let version = fields.next().unwrap_or("");
        if version != format!("v{TABLE_VERSION}") {
            return Err(parse_err(hline, format!("unsupported table version {version:?}")));
        }
        let (mut alpha, mut gamma, mut config_hash, mut source) = (None, None, None, None);
        for kv in fields {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| parse_err(hline, format!("malformed header field {kv:?}")))?;
            let num = || v.parse::<f64>().map_err(|e| parse_err(hline, format!("{k}: {e}")));
            match k {
                "alpha" => alpha = Some(num()?),
                "gamma" => gamma = Some(num()?),
                "config_hash" => config_hash = Some(v.to_string()),
                "source" => source = Some(v.to_string()),
                _ => return Err(parse_err(hline, format!("unknown header field {k:?}"))),
            }
        }
        let missing = |name: &str| parse_err(hline, format!("header lacks {name}"));
        let mut bins = Vec::new();
        for (ln, line) in lines {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 7 {
                return Err(parse_err(ln, format!("expected 7 columns, got {}", cols.len())));
            }
            let f = |i: usize| cols[i].parse::<f64>().map_err(|e| parse_err(ln, format!("column {}: {e}", i + 1)));
            bins.push(CalibrationBin {
                lo: f(0)?,
                hi: f(1)?,
                v_d: f(2)?,
                v_s: f(3)?,
                w_d: f(4)?,
                w_s: f(5)?,
                count: cols[6].parse().map_err(|e| parse_err(ln, format!("count: {e}")))?,
            });
        }
        let table = Self {
            bins,
            alpha: alpha.ok_or_else(|| missing("alpha"))?,
            gamma: gamma.ok_or_else(|| missing("gamma"))?,
            config_hash: config_hash.ok_or_else(|| missing("config_hash"))?,
            source: source.ok_or_else(|| missing("source"))?,
        };
        table.validate()?;
        Ok(table)
    }

    /// `f_center,w_d,w_s,count` rows for plotting weights against the
    /// assorted factor.
    pub fn curve_csv(&self) -> String {
        let mut out = format!("# config_hash={}\nf_center,f_lo,f_hi,w_d,w_s,count\n", self.config_hash);
        for b in &self.bins {
            let _ = writeln!(out, "{},{},{},{},{},{}", b.center(), b.lo, b.hi, b.w_d, b.w_s, b.count);
        }
        out
    }
}

/// Reference-level features for one pair, with the degenerate-reference
/// guard applied (ratio set to 1 and flagged).
pub fn assorted_features(
    pair: &PyramidPair,
    lpc: &LpcConfig,
    sf: &SfConfig,
    alpha: f64,
) -> Result<(AssortedFeatures, Vec<&'static str>)> {
    let mut flags = Vec::new();
    let sr = match sharpness_ratio(pair, lpc) {
        Ok(v) => v,
        Err(SrifError::DegenerateReference(msg)) => {
            log::warn!("DegenerateReference: {msg}; sharpness ratio set to 1");
            flags.push("degenerate_reference_sharpness");
            1.0
        }
        Err(e) => return Err(e),
    };
    let tr = match texture_ratio(pair, sf) {
        Ok(v) => v,
        Err(SrifError::DegenerateReference(msg)) => {
            log::warn!("DegenerateReference: {msg}; texture ratio set to 1");
            flags.push("degenerate_reference_texture");
            1.0
        }
        Err(e) => return Err(e),
    };
    Ok((AssortedFeatures { sr, tr, f: assorted_factor(sr, tr, alpha) }, flags))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(edges: &[f64], w_d: &[f64]) -> CalibrationTable {
        CalibrationTable {
            bins: edges
                .windows(2)
                .zip(w_d)
                .map(|(e, &w)| CalibrationBin { lo: e[0], hi: e[1], v_d: 1.0, v_s: 1.0, w_d: w, w_s: 1.0 - w, count: 20 })
                .collect(),
            alpha: 1.0,
            gamma: 10.0,
            config_hash: "abc".into(),
            source: "unit".into(),
        }
    }

    #[test]
    fn assorted_factor_examples() {
        assert_eq!(assorted_factor(1.0, 1.0, 0.5), 2.0);
        assert_eq!(assorted_factor(0.0, 0.0, 2.0), 0.0);
        assert_eq!(assorted_factor(2.0, 0.5, 2.0), 4.25);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(uncertainty_weights(2.0, 2.0).0, Weights::EQUAL);
        assert_eq!(uncertainty_weights(1.0, 3.0).0, Weights { w_d: 0.75, w_s: 0.25 });
        assert_eq!(uncertainty_weights(0.0, 0.0), (Weights::EQUAL, true));
    }

    #[test]
    fn srif_examples() {
        let w = Weights { w_d: 0.75, w_s: 0.25 };
        assert!((srif(0.9, 0.7, w).unwrap() - 0.85).abs() < 1e-15);
        assert_eq!(srif(1.0, 1.0, Weights::from_w_d(0.3)).unwrap(), 1.0);
        assert_eq!(srif(0.42, 0.9, Weights::from_w_d(1.0)).unwrap(), 0.42);
        assert!(matches!(
            srif(0.5, 0.5, Weights { w_d: 0.6, w_s: 0.6 }),
            Err(SrifError::WeightNormalization { .. })
        ));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy_bits(&[0.3; 50], 0.0, 1.0, 256), 0.0);
        let uniform: Vec<f64> = (0..256).map(|i| (i as f64 + 0.5) / 256.0).collect();
        assert!((entropy_bits(&uniform, 0.0, 1.0, 256) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn lookup_is_half_open_and_clamped() {
        let t = table(&[0.0, 1.0, 2.0, 3.0], &[0.9, 0.6, 0.3]);
        assert_eq!(t.lookup(0.5).w_d, 0.9);
        assert_eq!(t.lookup(1.0).w_d, 0.6);
        assert_eq!(t.lookup(2.5).w_d, 0.3);
        assert_eq!(t.lookup(-1e300).w_d, 0.9);
        assert_eq!(t.lookup(f64::NEG_INFINITY).w_d, 0.9);
        assert_eq!(t.lookup(3.0).w_d, 0.3);
        assert_eq!(t.lookup(1e9).w_d, 0.3);
    }

    #[test]
    fn table_text_round_trip() {
        let mut t = table(&[0.1, 0.7, 1.9], &[0.123456789012345678, 1.0 / 3.0]);
        t.bins[0].v_d = std::f64::consts::PI;
        let text = t.to_text();
        assert!(text.starts_with("SRIF-CALIBRATION v1 "));
        assert_eq!(CalibrationTable::from_text(&text).unwrap(), t);
    }

    #[test]
    fn table_rejects_bad_input() {
        assert!(CalibrationTable::from_text("").is_err());
        assert!(CalibrationTable::from_text("SRIF-CALIBRATION v2 alpha=1 gamma=1 config_hash=a source=b\n").is_err());
        let text = "SRIF-CALIBRATION v1 alpha=1 gamma=1 config_hash=a source=b\n1,0,1,1,0.5,0.5,3\n";
        assert!(CalibrationTable::from_text(text).is_err());
        let text = "SRIF-CALIBRATION v1 alpha=1 gamma=1 config_hash=a source=b\n0,1,1,1,0.5,x,3\n";
        assert!(matches!(CalibrationTable::from_text(text), Err(SrifError::Parse { line: 2, .. })));
    }

    #[test]
    fn quantile_bounds_respect_ties_and_merge() {
        let f = [0.0, 0.0, 0.0, 0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_bounds(&f, 4), vec![0, 4, 6, 8]);
        assert_eq!(merge_small(vec![0, 4, 6, 8], 3), vec![0, 4, 8]);
        assert_eq!(merge_small(vec![0, 1, 10], 5), vec![0, 10]);
    }

    #[test]
    fn search_keeps_the_best_grid_point() {
        let samples: Vec<RatioSample> = (0..200)
            .map(|i| {
                let t = i as f64 / 200.0;
                let s_raw = 0.5 * ((i * 37 % 200) as f64 / 200.0);
                RatioSample { d: 1.0 - 0.1 * t, s_raw, sr: 0.5 + t, tr: 1.0, mos: 50.0 - 40.0 * s_raw + (i % 7) as f64 }
            })
            .collect();
        let opts = CalibrationOptions { alpha_grid: vec![1.0, 2.0], gamma_grid: vec![1.0, 10.0], ..Default::default() };
        let (table, trace) = calibrate_with_search(&samples, &opts, "h", "unit").unwrap();
        assert_eq!(trace.len(), 4);
        let best = trace.iter().map(|p| p.srcc).fold(f64::NEG_INFINITY, f64::max);
        let first = trace.iter().find(|p| p.srcc == best).unwrap();
        assert_eq!((table.alpha, table.gamma), (first.alpha, first.gamma));
    }

    #[test]
    fn calibrate_needs_enough_samples() {
        let s = vec![CalibrationSample { d: 0.5, s_sim: 0.5, f: 1.0, mos: 3.0 }; 79];
        assert!(matches!(
            calibrate(&s, &CalibrationOptions::default(), 1.0, 10.0, "h", "src"),
            Err(SrifError::InsufficientData { needed: 80, got: 79 })
        ));
    }
}
