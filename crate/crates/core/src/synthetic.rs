//! Seeded synthetic test material: textured images with edges, gratings and
//! fine-grained noise, plus a few distortions that mimic SR artifacts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::filter::gaussian_blur;
use crate::plane::ImagePlane;
use crate::pyramid::{expand, reduce};

fn noise_field(w: usize, h: usize, sigma: f64, rng: &mut ChaCha8Rng) -> ImagePlane {
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let data = (0..w * h).map(|_| normal.sample(rng)).collect();
    gaussian_blur(&ImagePlane::from_raw(w, h, data), sigma)
}

/// Textured image: oriented gratings, a handful of hard-edged rectangles and
/// blurred noise around mid-gray. Deterministic in `seed`.
pub fn textured_image(w: usize, h: usize, seed: u64) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut img = ImagePlane::filled(w, h, 0.5);

    for _ in 0..4 {
        let freq = rng.random_range(0.04..0.3) * std::f64::consts::TAU;
        let theta = rng.random_range(0.0..std::f64::consts::PI);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let amp = rng.random_range(0.02..0.07);
        let (c, s) = (theta.cos(), theta.sin());
        for y in 0..h {
            for x in 0..w {
                let t = freq * (c * x as f64 + s * y as f64) + phase;
                img.set(x, y, img.get(x, y) + amp * t.sin());
            }
        }
    }

    for _ in 0..6 {
        let x0 = rng.random_range(0..w);
        let y0 = rng.random_range(0..h);
        let x1 = (x0 + rng.random_range(w / 8..w / 2 + 1)).min(w);
        let y1 = (y0 + rng.random_range(h / 8..h / 2 + 1)).min(h);
        let delta = rng.random_range(-0.18..0.18);
        for y in y0..y1 {
            for x in x0..x1 {
                img.set(x, y, img.get(x, y) + delta);
            }
        }
    }

    let grain = noise_field(w, h, 0.6, &mut rng);
    let coarse = noise_field(w, h, 3.0, &mut rng);
    let data = img
        .data()
        .iter()
        .zip(grain.data())
        .zip(coarse.data())
        .map(|((v, g), c)| (v + 0.08 * g + 0.25 * c).clamp(0.0, 1.0))
        .collect();
    ImagePlane::from_raw(w, h, data)
}

/// Smooth random image without hard edges.
pub fn smooth_image(w: usize, h: usize, seed: u64) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = noise_field(w, h, 2.0, &mut rng);
    field.map(|v| (0.5 + 0.4 * v).clamp(0.0, 1.0))
}

/// Down-then-up resampling through the pyramid kernel: a crude stand-in for
/// interpolation-based super-resolution at factor `2^steps`.
pub fn interpolate_down_up(img: &ImagePlane, steps: usize) -> ImagePlane {
    let mut chain = vec![img.clone()];
    for _ in 0..steps {
        let next = reduce(chain.last().expect("nonempty")).expect("image large enough");
        chain.push(next);
    }
    let mut acc = chain.pop().expect("nonempty");
    while let Some(finer) = chain.pop() {
        acc = expand(&acc, finer.width(), finer.height()).expect("recorded dims");
    }
    acc.map(|v| v.clamp(0.0, 1.0))
}

/// Replaces fine detail by fresh noise of comparable strength: a stand-in for
/// generative SR that hallucinates texture.
pub fn hallucinate_texture(img: &ImagePlane, strength: f64, seed: u64) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = gaussian_blur(img, 1.2);
    let detail = img - &base;
    let detail_sd = (detail.data().iter().map(|v| v * v).sum::<f64>() / detail.data().len() as f64).sqrt();
    let fresh = noise_field(img.width(), img.height(), 0.6, &mut rng);
    let fresh_sd = (fresh.data().iter().map(|v| v * v).sum::<f64>() / fresh.data().len() as f64)
        .sqrt()
        .max(1e-12);
    let data = base
        .data()
        .iter()
        .zip(detail.data())
        .zip(fresh.data())
        .map(|((b, d), f)| (b + (1.0 - strength) * d + strength * f * detail_sd / fresh_sd).clamp(0.0, 1.0))
        .collect();
    ImagePlane::from_raw(img.width(), img.height(), data)
}

/// Additive white Gaussian noise, clamped.
pub fn add_noise(img: &ImagePlane, sigma: f64, seed: u64) -> ImagePlane {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).expect("valid sigma");
    let data = img
        .data()
        .iter()
        .map(|v| (v + normal.sample(&mut rng)).clamp(0.0, 1.0))
        .collect();
    ImagePlane::from_raw(img.width(), img.height(), data)
}
