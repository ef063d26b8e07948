//! Brute-force reference implementations. Deliberately naive: dense 2-D
//! kernels, explicit window loops, O(n²) pair enumeration. They share no code
//! with the library beyond the `ImagePlane` container.
#![allow(dead_code)]

use srif_core::ImagePlane;

/// Mirror-without-repeat reflection by repeated folding.
pub fn fold(mut i: i64, n: usize) -> usize {
    let n = n as i64;
    if n == 1 {
        return 0;
    }
    loop {
        if i < 0 {
            i = -i;
        } else if i >= n {
            i = 2 * (n - 1) - i;
        } else {
            return i as usize;
        }
    }
}

pub fn binomial_2d() -> [[f64; 5]; 5] {
    let b = [1.0, 4.0, 6.0, 4.0, 1.0];
    let mut k = [[0.0; 5]; 5];
    for (i, row) in k.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = b[i] * b[j] / 256.0;
        }
    }
    k
}

pub fn dense_convolve(img: &ImagePlane, kernel: &[[f64; 5]; 5]) -> ImagePlane {
    let (w, h) = img.dims();
    ImagePlane::from_fn(w, h, |x, y| {
        let mut acc = 0.0;
        for (dy, row) in kernel.iter().enumerate() {
            for (dx, k) in row.iter().enumerate() {
                let sx = fold(x as i64 + dx as i64 - 2, w);
                let sy = fold(y as i64 + dy as i64 - 2, h);
                acc += k * img.get(sx, sy);
            }
        }
        acc
    })
}

pub fn reduce(img: &ImagePlane) -> ImagePlane {
    let full = dense_convolve(img, &binomial_2d());
    let (w, h) = img.dims();
    ImagePlane::from_fn(w.div_ceil(2), h.div_ceil(2), |x, y| full.get(2 * x, 2 * y))
}

pub fn expand(img: &ImagePlane, tw: usize, th: usize) -> ImagePlane {
    let up = ImagePlane::from_fn(tw, th, |x, y| {
        if x % 2 == 0 && y % 2 == 0 {
            img.get(x / 2, y / 2)
        } else {
            0.0
        }
    });
    let mut k = binomial_2d();
    k.iter_mut().flatten().for_each(|v| *v *= 4.0);
    dense_convolve(&up, &k)
}

/// Local structure term and information weight at every valid position,
/// from explicit window sums with a 2-D Gaussian.
pub fn structure_map(x: &ImagePlane, y: &ImagePlane, win: usize, sigma: f64, c1: f64, cw: f64) -> (Vec<f64>, Vec<f64>) {
    let half = (win / 2) as f64;
    let mut g = vec![vec![0.0; win]; win];
    let mut total = 0.0;
    for (i, row) in g.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (di, dj) = (i as f64 - half, j as f64 - half);
            *v = (-(di * di + dj * dj) / (2.0 * sigma * sigma)).exp();
            total += *v;
        }
    }
    let (w, h) = x.dims();
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for oy in 0..=h - win {
        for ox in 0..=w - win {
            let (mut mx, mut my) = (0.0, 0.0);
            for (i, row) in g.iter().enumerate() {
                for (j, gv) in row.iter().enumerate() {
                    mx += gv / total * x.get(ox + j, oy + i);
                    my += gv / total * y.get(ox + j, oy + i);
                }
            }
            let (mut vx, mut vy, mut cxy) = (0.0, 0.0, 0.0);
            for (i, row) in g.iter().enumerate() {
                for (j, gv) in row.iter().enumerate() {
                    let dx = x.get(ox + j, oy + i) - mx;
                    let dy = y.get(ox + j, oy + i) - my;
                    vx += gv / total * dx * dx;
                    vy += gv / total * dy * dy;
                    cxy += gv / total * dx * dy;
                }
            }
            values.push((cxy + c1) / (vx.sqrt() * vy.sqrt() + c1));
            weights.push(((1.0 + vx / cw) * (1.0 + vy / cw)).log2());
        }
    }
    (values, weights)
}

pub fn pooled(values: &[f64], weights: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..values.len() {
        num += weights[i] * values[i];
        den += weights[i];
    }
    if den > 0.0 {
        num / den
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Straight-line multi-scale DF of one level.
pub fn df_level(x: &ImagePlane, y: &ImagePlane, alphas: &[f64], win: usize, sigma: f64, c1: f64, cw: f64, floor: f64) -> f64 {
    let mut xs = vec![x.clone()];
    let mut ys = vec![y.clone()];
    while xs.len() < alphas.len() {
        let last = xs.last().unwrap();
        if last.width().div_ceil(2) < win || last.height().div_ceil(2) < win {
            break;
        }
        let nx = reduce(last);
        let ny = reduce(ys.last().unwrap());
        xs.push(nx);
        ys.push(ny);
    }
    let used: f64 = alphas[..xs.len()].iter().sum();
    let mut prod = 1.0;
    for j in 0..xs.len() {
        let (v, w) = structure_map(&xs[j], &ys[j], win, sigma, c1, cw);
        prod *= pooled(&v, &w).max(floor).powf(alphas[j] / used);
    }
    prod
}

pub fn normalize_band(band: &ImagePlane, win: usize, c: f64) -> ImagePlane {
    let (w, h) = band.dims();
    let r = (win / 2) as i64;
    ImagePlane::from_fn(w, h, |x, y| {
        let mut vals = Vec::new();
        for dy in -r..=r {
            for dx in -r..=r {
                vals.push(band.get(fold(x as i64 + dx, w), fold(y as i64 + dy, h)));
            }
        }
        let n = vals.len() as f64;
        let mu = vals.iter().sum::<f64>() / n;
        let sd = (vals.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / n).sqrt();
        (band.get(x, y) - mu) / (sd + c)
    })
}

/// Histogram by scanning bin edges.
pub fn histogram(values: &[f64], range: f64, bins: usize, eps: f64) -> Vec<f64> {
    let mut counts = vec![0.0; bins];
    let width = 2.0 * range / bins as f64;
    for &v in values {
        let v = v.clamp(-range, range);
        let mut idx = bins - 1;
        for b in 0..bins {
            let hi = -range + (b + 1) as f64 * width;
            if v < hi {
                idx = b;
                break;
            }
        }
        counts[idx] += 1.0;
    }
    let total: f64 = counts.iter().sum::<f64>() + bins as f64 * eps;
    counts.iter().map(|c| (c + eps) / total).collect()
}

pub fn kld(p: &[f64], q: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..p.len() {
        if p[i] > 0.0 {
            s += p[i] * (p[i].ln() - q[i].ln());
        }
    }
    s
}

/// Rank by counting: `#less + (#equal + 1) / 2`.
pub fn ranks(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&x| {
            let less = v.iter().filter(|&&y| y < x).count() as f64;
            let equal = v.iter().filter(|&&y| y == x).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let cov: f64 = a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va.sqrt() * vb.sqrt())
}

pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    pearson(&ranks(a), &ranks(b))
}

/// Tau-b over all pairs.
pub fn kendall(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let (mut conc, mut disc, mut tie_a, mut tie_b) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let da = (a[i] - a[j]).signum() as i64 * ((a[i] != a[j]) as i64);
            let db = (b[i] - b[j]).signum() as i64 * ((b[i] != b[j]) as i64);
            if da == 0 && db == 0 {
                continue;
            } else if da == 0 {
                tie_a += 1;
            } else if db == 0 {
                tie_b += 1;
            } else if da == db {
                conc += 1;
            } else {
                disc += 1;
            }
        }
    }
    let p = (conc + disc) as f64;
    (conc - disc) as f64 / ((p + tie_a as f64) * (p + tie_b as f64)).sqrt()
}

pub fn logistic(x: f64, b: [f64; 5]) -> f64 {
    b[0] * (0.5 - 1.0 / (1.0 + (b[1] * (x - b[2])).exp())) + b[3] * x + b[4]
}

pub fn plcc_rmse(scores: &[f64], mos: &[f64], b: [f64; 5]) -> (f64, f64) {
    let mapped: Vec<f64> = scores.iter().map(|&x| logistic(x, b)).collect();
    let n = mos.len() as f64;
    let rmse = (mapped.iter().zip(mos).map(|(g, m)| (g - m) * (g - m)).sum::<f64>() / n).sqrt();
    (pearson(&mapped, mos), rmse)
}

/// Ordinary least-squares line `a + b x`; returns its RMSE.
pub fn ols_rmse(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    (x.iter().zip(y).map(|(a, b)| (icpt + slope * a - b).powi(2)).sum::<f64>() / n).sqrt()
}

/// Deterministic xorshift stream for oracle inputs.
pub struct Xorshift(pub u64);

impl Xorshift {
    pub fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize
    }

    pub fn plane(&mut self, w: usize, h: usize) -> ImagePlane {
        ImagePlane::from_fn(w, h, |_, _| self.next_f64())
    }

    pub fn signed_plane(&mut self, w: usize, h: usize, amp: f64) -> ImagePlane {
        ImagePlane::from_fn(w, h, |_, _| amp * (2.0 * self.next_f64() - 1.0))
    }
}
