#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use srif_cli::synth::degrade;
use srif_core::dataset::save_luminance_png;
use srif_core::synthetic::textured_image;

pub fn srif() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_srif"));
    c.env_remove("SRIF_TABLE").env("RUST_LOG", "warn");
    c
}

pub fn run_in(dir: &Path, args: &[&str]) -> Output {
    srif().current_dir(dir).args(args).output().expect("spawn srif")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Value of `key = value` in a record.
pub fn field(record: &str, key: &str) -> String {
    record
        .lines()
        .find_map(|l| l.split_once(" = ").filter(|(k, _)| *k == key).map(|(_, v)| v.to_string()))
        .unwrap_or_else(|| panic!("no {key} in\n{record}"))
}

pub struct PairSpec<'a> {
    pub reference: usize,
    pub algorithm: &'a str,
    pub scale: u32,
}

/// Writes references `ref/rNNN.png`, degraded tests and a manifest whose MOS
/// column comes from `mos(index, reference_path, test_path)`.
pub fn write_manifest(
    dir: &Path,
    size: usize,
    pairs: &[PairSpec<'_>],
    mut mos: impl FnMut(usize, &Path, &Path) -> f64,
) -> PathBuf {
    std::fs::create_dir_all(dir.join("ref")).unwrap();
    std::fs::create_dir_all(dir.join("test")).unwrap();
    let mut text = String::from("ref_path,test_path,mos,algorithm,scale,split\n");
    for (i, p) in pairs.iter().enumerate() {
        let ref_rel = format!("ref/r{:03}.png", p.reference);
        let ref_abs = dir.join(&ref_rel);
        let reference = textured_image(size, size, 500 + p.reference as u64);
        if !ref_abs.exists() {
            save_luminance_png(&reference, &ref_abs).unwrap();
        }
        let test_rel = format!("test/p{i:03}_{}_x{}.png", p.algorithm, p.scale);
        let test_abs = dir.join(&test_rel);
        if p.algorithm == "identity" {
            save_luminance_png(&reference, &test_abs).unwrap();
        } else {
            save_luminance_png(&degrade(&reference, p.algorithm, p.scale, i as u64), &test_abs).unwrap();
        }
        let split = if i % 3 == 2 { "test" } else { "train" };
        let m = mos(i, &ref_abs, &test_abs);
        text.push_str(&format!("{ref_rel},{test_rel},{m},{},{},{split}\n", p.algorithm, p.scale));
    }
    let path = dir.join("manifest.csv");
    std::fs::write(&path, text).unwrap();
    path
}

pub fn pairs_for(references: usize, algorithms: &[&'static str], scales: &[u32]) -> Vec<PairSpec<'static>> {
    let mut out = Vec::new();
    for r in 0..references {
        for a in algorithms {
            for &s in scales {
                out.push(PairSpec { reference: r, algorithm: a, scale: s });
            }
        }
    }
    out
}
