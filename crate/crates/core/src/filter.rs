//! Separable filtering primitives shared by the pyramid, the windowed
//! statistics and the synthetic test material.

use crate::plane::ImagePlane;

/// Mirror-without-repeat index reflection: for `n = 5`, `-1 -> 1`, `5 -> 3`.
#[inline]
pub fn reflect(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let mut m = i.rem_euclid(period);
    if m >= n as isize {
        m = period - m;
    }
    m as usize
}

/// Normalized 1-D Gaussian taps of odd length `size`.
pub fn gaussian_kernel(size: usize, sigma: f64) -> Vec<f64> {
    assert!(size % 2 == 1, "kernel length must be odd");
    let half = (size / 2) as isize;
    let mut taps: Vec<f64> = (-half..=half)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= sum);
    taps
}

fn convolve_rows_same(src: &[f64], w: usize, h: usize, taps: &[f64]) -> Vec<f64> {
    let half = (taps.len() / 2) as isize;
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        let dst = &mut out[y * w..(y + 1) * w];
        for (x, d) in dst.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &t) in taps.iter().enumerate() {
                let xi = reflect(x as isize + k as isize - half, w);
                acc += t * row[xi];
            }
            *d = acc;
        }
    }
    out
}

fn convolve_cols_same(src: &[f64], w: usize, h: usize, taps: &[f64]) -> Vec<f64> {
    let half = (taps.len() / 2) as isize;
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let dst = &mut out[y * w..(y + 1) * w];
        for (k, &t) in taps.iter().enumerate() {
            let yi = reflect(y as isize + k as isize - half, h);
            let src_row = &src[yi * w..(yi + 1) * w];
            for (d, &s) in dst.iter_mut().zip(src_row) {
                *d += t * s;
            }
        }
    }
    out
}

/// Separable convolution with reflected borders; output has the input's size.
pub fn separable_same(img: &ImagePlane, row_taps: &[f64], col_taps: &[f64]) -> ImagePlane {
    let (w, h) = img.dims();
    let tmp = convolve_rows_same(img.data(), w, h, row_taps);
    ImagePlane::from_raw(w, h, convolve_cols_same(&tmp, w, h, col_taps))
}

/// Separable "valid" correlation over a raw buffer: only positions where the
/// whole window fits. Output is `(w - k + 1) x (h - k + 1)`.
pub fn separable_valid_raw(src: &[f64], w: usize, h: usize, taps: &[f64]) -> (Vec<f64>, usize, usize) {
    let k = taps.len();
    let ow = w + 1 - k;
    let oh = h + 1 - k;
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        let dst = &mut rows[y * ow..(y + 1) * ow];
        for (x, d) in dst.iter_mut().enumerate() {
            *d = taps.iter().zip(&row[x..x + k]).map(|(t, s)| t * s).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        let dst = &mut out[y * ow..(y + 1) * ow];
        for (j, &t) in taps.iter().enumerate() {
            let src_row = &rows[(y + j) * ow..(y + j + 1) * ow];
            for (d, &s) in dst.iter_mut().zip(src_row) {
                *d += t * s;
            }
        }
    }
    (out, ow, oh)
}

/// Gaussian blur with reflected borders. The kernel spans `±ceil(4σ)`.
pub fn gaussian_blur(img: &ImagePlane, sigma: f64) -> ImagePlane {
    if sigma <= 0.0 {
        return img.clone();
    }
    let half = (4.0 * sigma).ceil() as usize;
    let taps = gaussian_kernel(2 * half + 1, sigma);
    separable_same(img, &taps, &taps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflect_mirrors_without_repeating_the_edge() {
        let got: Vec<usize> = (-3..8).map(|i| reflect(i, 5)).collect();
        assert_eq!(got, vec![3, 2, 1, 0, 1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(reflect(-7, 1), 0);
        assert_eq!(reflect(-2, 2), 0);
        assert_eq!(reflect(3, 2), 1);
    }

    #[test]
    fn gaussian_taps_sum_to_one_and_are_symmetric() {
        let k = gaussian_kernel(11, 1.5);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for i in 0..5 {
            assert_eq!(k[i], k[10 - i]);
        }
    }

    #[test]
    fn valid_window_of_constant_is_constant() {
        let taps = gaussian_kernel(5, 1.0);
        let (out, ow, oh) = separable_valid_raw(&vec![0.3; 64], 8, 8, &taps);
        assert_eq!((ow, oh), (4, 4));
        assert!(out.iter().all(|v| (v - 0.3).abs() < 1e-15));
    }

    #[test]
    fn blur_preserves_constant() {
        let p = ImagePlane::filled(9, 7, 0.42);
        let b = gaussian_blur(&p, 2.0);
        assert!(b.data().iter().all(|v| (v - 0.42).abs() < 1e-14));
    }
}
