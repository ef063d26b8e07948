//! Burt–Adelson Gaussian/Laplacian pyramids.
//!
//! Both `reduce` and `expand` use the binomial kernel `(1, 4, 6, 4, 1) / 16`
//! with mirror-without-repeat borders. Odd sizes are halved with `ceil`, and
//! `expand` always targets the recorded size of the finer level, so
//! `G_l = L_l + expand(G_{l+1})` holds to rounding error.

use crate::error::{Result, SrifError};
use crate::filter::{reflect, separable_same};
use crate::plane::ImagePlane;

pub const BINOMIAL5: [f64; 5] = [1.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0, 4.0 / 16.0, 1.0 / 16.0];

/// Default number of Gaussian levels (three Laplacian bands).
pub const DEFAULT_DEPTH: usize = 4;

/// Low-pass filter and decimate by two along both axes.
pub fn reduce(img: &ImagePlane) -> Result<ImagePlane> {
    img.ensure_min(2, "reduce")?;
    let (w, h) = img.dims();
    let ow = w.div_ceil(2);
    let oh = h.div_ceil(2);

    // Horizontal pass only at even columns.
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let src = img.row(y);
        for ox in 0..ow {
            let x = (2 * ox) as isize;
            rows[y * ow + ox] = BINOMIAL5
                .iter()
                .enumerate()
                .map(|(k, t)| t * src[reflect(x + k as isize - 2, w)])
                .sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for oy in 0..oh {
        let y = (2 * oy) as isize;
        let dst = &mut out[oy * ow..(oy + 1) * ow];
        for (k, t) in BINOMIAL5.iter().enumerate() {
            let sy = reflect(y + k as isize - 2, h);
            for (d, s) in dst.iter_mut().zip(&rows[sy * ow..(sy + 1) * ow]) {
                *d += t * s;
            }
        }
    }
    Ok(ImagePlane::from_raw(ow, oh, out))
}

fn expand_target_ok(src: usize, target: usize) -> bool {
    target == 2 * src || target + 1 == 2 * src
}

/// Zero-insertion upsampling to `(target_w, target_h)` followed by the
/// reduce kernel with a gain of two per axis.
pub fn expand(img: &ImagePlane, target_w: usize, target_h: usize) -> Result<ImagePlane> {
    let (w, h) = img.dims();
    if w == 0 || h == 0 || !expand_target_ok(w, target_w) || !expand_target_ok(h, target_h) {
        return Err(SrifError::DimensionMismatch {
            what: "expand target",
            expected_w: 2 * w,
            expected_h: 2 * h,
            got_w: target_w,
            got_h: target_h,
        });
    }
    let mut up = ImagePlane::filled(target_w, target_h, 0.0);
    for y in 0..h {
        for x in 0..w {
            up.set(2 * x, 2 * y, img.get(x, y));
        }
    }
    let taps: Vec<f64> = BINOMIAL5.iter().map(|t| 2.0 * t).collect();
    Ok(separable_same(&up, &taps, &taps))
}

/// Successively reduced copies of an image, finest first.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPyramid {
    pub levels: Vec<ImagePlane>,
}

/// Band-pass residuals `L_l = G_l - expand(G_{l+1})`, finest first. Holds one
/// fewer level than the Gaussian pyramid it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianPyramid {
    pub levels: Vec<ImagePlane>,
}

impl GaussianPyramid {
    pub fn build(img: &ImagePlane, depth: usize) -> Result<Self> {
        if depth < 2 {
            return Err(SrifError::InvalidConfig(format!("pyramid depth must be >= 2, got {depth}")));
        }
        let mut levels = Vec::with_capacity(depth);
        levels.push(img.clone());
        for _ in 1..depth {
            let next = reduce(levels.last().expect("nonempty"))?;
            levels.push(next);
        }
        Ok(Self { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

impl LaplacianPyramid {
    pub fn from_gaussian(g: &GaussianPyramid) -> Result<Self> {
        let levels = g
            .levels
            .windows(2)
            .map(|pair| {
                let (w, h) = pair[0].dims();
                Ok(&pair[0] - &expand(&pair[1], w, h)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { levels })
    }

    /// Rebuilds the finest Gaussian level from the bands and the coarsest
    /// Gaussian level.
    pub fn reconstruct(&self, coarsest: &ImagePlane) -> Result<ImagePlane> {
        let mut acc = coarsest.clone();
        for band in self.levels.iter().rev() {
            let (w, h) = band.dims();
            acc = band + &expand(&acc, w, h)?;
        }
        Ok(acc)
    }
}

pub fn decompose(img: &ImagePlane, depth: usize) -> Result<(GaussianPyramid, LaplacianPyramid)> {
    let g = GaussianPyramid::build(img, depth)?;
    let l = LaplacianPyramid::from_gaussian(&g)?;
    Ok((g, l))
}

/// Aligned pyramids of a reference image and a test image.
#[derive(Clone, Debug)]
pub struct PyramidPair {
    pub reference: GaussianPyramid,
    pub reference_bands: LaplacianPyramid,
    pub test: GaussianPyramid,
    pub test_bands: LaplacianPyramid,
}

impl PyramidPair {
    pub fn build(reference: &ImagePlane, test: &ImagePlane, depth: usize) -> Result<Self> {
        reference.ensure_same_dims(test, "reference/test pair")?;
        let (g_ref, l_ref) = decompose(reference, depth)?;
        let (g_test, l_test) = decompose(test, depth)?;
        Ok(Self {
            reference: g_ref,
            reference_bands: l_ref,
            test: g_test,
            test_bands: l_test,
        })
    }

    pub fn depth(&self) -> usize {
        self.reference.depth()
    }
}
