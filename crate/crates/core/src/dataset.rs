//! Manifest ingestion and image loading.
//!
//! Manifests are UTF-8 CSV with the header
//! `ref_path,test_path,mos,algorithm,scale,split`; lines starting with `#`
//! are comments and relative paths resolve against the manifest's directory.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use image::DynamicImage;

use crate::error::{Result, SrifError};
use crate::plane::ImagePlane;

pub const MANIFEST_HEADER: [&str; 6] = ["ref_path", "test_path", "mos", "algorithm", "scale", "split"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Split {
    Train,
    Test,
    All,
}

impl Split {
    /// Whether an entry with this split belongs to the `wanted` subset.
    pub fn includes(self, wanted: Split) -> bool {
        wanted == Split::All || self == Split::All || self == wanted
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "train" => Ok(Self::Train),
            "test" => Ok(Self::Test),
            "all" | "" => Ok(Self::All),
            other => Err(format!("split must be train, test or all, got {other:?}")),
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Train => "train",
            Self::Test => "test",
            Self::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    /// Paths as written in the manifest.
    pub ref_path: String,
    pub test_path: String,
    /// Paths resolved against the manifest directory.
    pub ref_resolved: PathBuf,
    pub test_resolved: PathBuf,
    pub mos: f64,
    pub algorithm: String,
    pub scale: u32,
    pub split: Split,
    /// 1-based line in the manifest file.
    pub line: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    /// Non-fatal findings, e.g. duplicate pairs.
    pub warnings: Vec<String>,
}

pub fn parse_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new(""));
    parse_manifest_str(&text, base)
}

pub fn parse_manifest_str(text: &str, base: &Path) -> Result<Manifest> {
    // Line numbers are tracked here; the reader's own positions skip blank
    // and comment lines. Records are assumed not to span lines.
    let mut source_lines = Vec::new();
    let mut kept = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let t = l.trim();
        if !t.is_empty() && !t.starts_with('#') {
            source_lines.push(i + 1);
            kept.push(l);
        }
    }
    let cleaned = kept.join("\n");
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(cleaned.as_bytes());

    let header = reader.headers().map_err(|e| SrifError::Parse { line: 1, message: e.to_string() })?;
    if header.iter().ne(MANIFEST_HEADER) {
        if header.is_empty() {
            return Ok(Manifest::default());
        }
        let line = source_lines.first().copied().unwrap_or(1);
        return Err(SrifError::Parse {
            line,
            message: format!("expected header {:?}, got {:?}", MANIFEST_HEADER.join(","), header.iter().collect::<Vec<_>>()),
        });
    }

    let mut manifest = Manifest::default();
    let mut seen = HashSet::new();
    for (k, record) in reader.records().enumerate() {
        let line = source_lines.get(k + 1).copied().unwrap_or(0);
        let record = record.map_err(|e| SrifError::Parse { line, message: e.to_string() })?;
        let err = |message: String| SrifError::Parse { line, message };
        if record.len() != MANIFEST_HEADER.len() {
            return Err(err(format!("expected 6 fields, got {}", record.len())));
        }
        let ref_path = record[0].to_string();
        let test_path = record[1].to_string();
        if ref_path.is_empty() || test_path.is_empty() {
            return Err(err("empty image path".into()));
        }
        let mos: f64 = record[2].parse().map_err(|_| err(format!("mos is not a number: {:?}", &record[2])))?;
        if !mos.is_finite() {
            return Err(err(format!("mos must be finite, got {mos}")));
        }
        let scale: u32 = record[4].parse().map_err(|_| err(format!("scale is not an integer: {:?}", &record[4])))?;
        if scale < 1 {
            return Err(err("scale must be >= 1".into()));
        }
        let split: Split = record[5].parse().map_err(err)?;
        if !seen.insert((ref_path.clone(), test_path.clone())) {
            let msg = format!("DuplicatePair: line {line} repeats ({ref_path}, {test_path})");
            log::warn!("{msg}");
            manifest.warnings.push(msg);
        }
        manifest.entries.push(ManifestEntry {
            ref_resolved: base.join(&ref_path),
            test_resolved: base.join(&test_path),
            ref_path,
            test_path,
            mos,
            algorithm: record[3].to_string(),
            scale,
            split,
            line,
        });
    }
    Ok(manifest)
}

/// BT.601 luma of an 8- or 16-bit sample triple, normalized to `[0, 1]`.
#[inline]
fn bt601(r: f64, g: f64, b: f64, max: f64) -> f64 {
    (0.299 * r + 0.587 * g + 0.114 * b) / max
}

pub fn luminance(img: &DynamicImage) -> ImagePlane {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data: Vec<f64> = match img {
        DynamicImage::ImageLuma8(b) => b.pixels().map(|p| p[0] as f64 / 255.0).collect(),
        DynamicImage::ImageLumaA8(b) => b.pixels().map(|p| p[0] as f64 / 255.0).collect(),
        DynamicImage::ImageLuma16(b) => b.pixels().map(|p| p[0] as f64 / 65535.0).collect(),
        DynamicImage::ImageLumaA16(b) => b.pixels().map(|p| p[0] as f64 / 65535.0).collect(),
        DynamicImage::ImageRgb8(b) => b.pixels().map(|p| bt601(p[0] as f64, p[1] as f64, p[2] as f64, 255.0)).collect(),
        DynamicImage::ImageRgba8(b) => b.pixels().map(|p| bt601(p[0] as f64, p[1] as f64, p[2] as f64, 255.0)).collect(),
        DynamicImage::ImageRgb16(b) => b.pixels().map(|p| bt601(p[0] as f64, p[1] as f64, p[2] as f64, 65535.0)).collect(),
        DynamicImage::ImageRgba16(b) => {
            b.pixels().map(|p| bt601(p[0] as f64, p[1] as f64, p[2] as f64, 65535.0)).collect()
        }
        other => other
            .to_rgb32f()
            .pixels()
            .map(|p| bt601(p[0] as f64, p[1] as f64, p[2] as f64, 1.0))
            .collect(),
    };
    ImagePlane::new(w, h, data).expect("decoded buffer matches its dimensions")
}

pub fn load_luminance(path: &Path) -> Result<ImagePlane> {
    let img = image::ImageReader::open(path)
        .map_err(|e| SrifError::Decode { path: path.to_path_buf(), message: e.to_string() })?
        .with_guessed_format()
        .map_err(|e| SrifError::Decode { path: path.to_path_buf(), message: e.to_string() })?
        .decode()
        .map_err(|e| SrifError::Decode { path: path.to_path_buf(), message: e.to_string() })?;
    Ok(luminance(&img))
}

/// Writes a plane as an 8-bit grayscale PNG.
pub fn save_luminance_png(plane: &ImagePlane, path: &Path) -> Result<()> {
    let bytes: Vec<u8> = plane.data().iter().map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8).collect();
    image::save_buffer(path, &bytes, plane.width() as u32, plane.height() as u32, image::ColorType::L8)
        .map_err(|e| SrifError::Decode { path: path.to_path_buf(), message: e.to_string() })
}

#[derive(Clone, Debug)]
pub struct LoadedPair {
    pub reference: ImagePlane,
    pub test: ImagePlane,
    pub entry: ManifestEntry,
}

pub fn load_pair(entry: &ManifestEntry) -> Result<LoadedPair> {
    let reference = load_luminance(&entry.ref_resolved)?;
    let test = load_luminance(&entry.test_resolved)?;
    reference.ensure_same_dims(&test, "reference/test pair")?;
    Ok(LoadedPair { reference, test, entry: entry.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "ref_path,test_path,mos,algorithm,scale,split\n";

    #[test]
    fn header_only_is_empty() {
        let m = parse_manifest_str(HEADER, Path::new("/data")).unwrap();
        assert!(m.entries.is_empty());
        assert!(parse_manifest_str("", Path::new("/data")).unwrap().entries.is_empty());
    }

    #[test]
    fn one_row_with_comments() {
        let text = format!("# dataset\n{HEADER}# pair\nhr/a.png,sr/a_x2.png,3.25,bicubic,2,train\n");
        let m = parse_manifest_str(&text, Path::new("/data")).unwrap();
        assert_eq!(m.entries.len(), 1);
        let e = &m.entries[0];
        assert_eq!(e.ref_path, "hr/a.png");
        assert_eq!(e.test_resolved, PathBuf::from("/data/sr/a_x2.png"));
        assert_eq!((e.mos, e.algorithm.as_str(), e.scale, e.split), (3.25, "bicubic", 2, Split::Train));
        assert_eq!(e.line, 4);
    }

    #[test]
    fn non_numeric_mos_names_the_line() {
        let text = format!("{HEADER}a.png,b.png,1,x,2,all\na.png,c.png,good,x,2,all\n");
        match parse_manifest_str(&text, Path::new(".")) {
            Err(SrifError::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("mos"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_header_and_bad_fields() {
        assert!(parse_manifest_str("a,b,c\n", Path::new(".")).is_err());
        let text = format!("{HEADER}a.png,b.png,1,x,0,all\n");
        assert!(parse_manifest_str(&text, Path::new(".")).is_err());
        let text = format!("{HEADER}a.png,b.png,1,x,2,validation\n");
        assert!(parse_manifest_str(&text, Path::new(".")).is_err());
        let text = format!("{HEADER}a.png,b.png,inf,x,2,all\n");
        assert!(parse_manifest_str(&text, Path::new(".")).is_err());
    }

    #[test]
    fn duplicates_warn_but_parse() {
        let text = format!("{HEADER}a.png,b.png,1,x,2,all\na.png,b.png,2,x,2,all\n");
        let m = parse_manifest_str(&text, Path::new(".")).unwrap();
        assert_eq!(m.entries.len(), 2);
        assert_eq!(m.warnings.len(), 1);
        assert!(m.warnings[0].starts_with("DuplicatePair"));
    }

    #[test]
    fn luminance_conversion() {
        let gray = DynamicImage::ImageLuma8(image::GrayImage::from_pixel(1, 1, image::Luma([255])));
        assert_eq!(luminance(&gray).get(0, 0), 1.0);
        let red = DynamicImage::ImageRgb8(image::RgbImage::from_pixel(1, 1, image::Rgb([255, 0, 0])));
        assert!((luminance(&red).get(0, 0) - 0.299).abs() < 1e-15);
        let wide = DynamicImage::ImageLuma16(image::ImageBuffer::from_pixel(1, 1, image::Luma([65535u16])));
        assert_eq!(luminance(&wide).get(0, 0), 1.0);
    }

    #[test]
    fn load_pair_checks_files_and_dims() {
        let dir = tempfile::tempdir().unwrap();
        let a = ImagePlane::from_fn(8, 6, |x, y| (x + y) as f64 / 14.0);
        let b = ImagePlane::filled(6, 8, 0.5);
        save_luminance_png(&a, &dir.path().join("a.png")).unwrap();
        save_luminance_png(&b, &dir.path().join("b.png")).unwrap();
        let text = format!("{HEADER}a.png,a.png,1,x,1,all\na.png,b.png,1,x,1,all\na.png,missing.png,1,x,1,all\n");
        let m = parse_manifest_str(&text, dir.path()).unwrap();
        let ok = load_pair(&m.entries[0]).unwrap();
        assert_eq!(ok.reference, ok.test);
        assert_eq!(load_luminance(&dir.path().join("a.png")).unwrap(), ok.reference);
        assert!(matches!(load_pair(&m.entries[1]), Err(SrifError::DimensionMismatch { .. })));
        assert!(matches!(load_pair(&m.entries[2]), Err(SrifError::Decode { .. })));
    }
}
