//! Full-reference quality assessment for super-resolved images.
//!
//! A reference and a test image are decomposed into Gaussian and Laplacian
//! pyramids. The Gaussian levels feed a deterministic-fidelity measure `D`
//! (structure comparison with information-content pooling), the Laplacian
//! levels feed a statistical-fidelity measure `S` (divergence of normalized
//! band histograms). A calibrated, content-dependent weighting merges them
//! into the SRIF index `Q_ds = w_d D + w_s S_sim`.
//!
//! ```
//! use srif_core::{score_pair, synthetic, SrifConfig};
//!
//! let reference = synthetic::textured_image(96, 96, 7);
//! let test = srif_core::filter::gaussian_blur(&reference, 1.0);
//! let report = score_pair(&reference, &test, &SrifConfig::default(), None).unwrap();
//! assert!(report.d < 1.0 && report.s_raw > 0.0);
//! ```

pub mod config;
pub mod dataset;
pub mod deterministic;
pub mod error;
pub mod eval;
pub mod fidelity;
pub mod filter;
pub mod lpc;
pub mod plane;
pub mod pyramid;
pub mod statistical;
pub mod synthetic;
pub mod uncertainty;

pub use config::SrifConfig;
pub use dataset::{load_pair, parse_manifest, LoadedPair, ManifestEntry, Split};
pub use deterministic::{df_level, df_total, structure_map, DfConfig, DfMap};
pub use error::{Result, SrifError};
pub use eval::{evaluate, fit_logistic, krcc, logistic, plcc_rmse, srcc, EvaluationReport, LogisticParams};
pub use fidelity::{score_pair, CombineMode, FidelityReport};
pub use lpc::{lpc_si, LpcConfig};
pub use plane::ImagePlane;
pub use pyramid::{decompose, expand, reduce, GaussianPyramid, LaplacianPyramid, PyramidPair};
pub use statistical::{band_histogram, kld, normalize_band, sf_total, BandHistogram, SfConfig};
pub use uncertainty::{
    assorted_factor, calibrate, srif, AssortedFeatures, CalibrationOptions, CalibrationSample, CalibrationTable,
    Weights,
};
