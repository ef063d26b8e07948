//! Prediction-performance protocol: five-parameter logistic mapping onto
//! subjective scores, then SRCC/KRCC (monotonicity) and PLCC/RMSE (accuracy).

use std::cmp::Ordering;

use crate::error::{Result, SrifError};

/// Parameters of `g(x) = β1 (1/2 - 1/(1 + e^{β2 (x - β3)})) + β4 x + β5`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogisticParams {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    pub b5: f64,
}

/// `1/2 - 1/(1 + e^z)` without overflow.
#[inline]
fn centered_sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        let e = (-z).exp();
        0.5 - e / (1.0 + e)
    } else {
        0.5 - 1.0 / (1.0 + z.exp())
    }
}

pub fn logistic(x: f64, p: &LogisticParams) -> f64 {
    p.b1 * centered_sigmoid(p.b2 * (x - p.b3)) + p.b4 * x + p.b5
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn std_dev(v: &[f64]) -> f64 {
    let m = mean(v);
    (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64).sqrt()
}

fn check_pair(a: &[f64], b: &[f64], min_len: usize) -> Result<()> {
    if a.len() != b.len() {
        return Err(SrifError::InsufficientData { needed: a.len(), got: b.len() });
    }
    if a.len() < min_len {
        return Err(SrifError::InsufficientData { needed: min_len, got: a.len() });
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(SrifError::DegenerateScores("non-finite value"));
    }
    Ok(())
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&x| x == v[0])
}

/// Least squares for `y ≈ Σ c_k col_k` by modified Gram–Schmidt. Columns that
/// are numerically dependent on earlier ones get a zero coefficient.
fn least_squares(cols: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let k = cols.len();
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r = vec![vec![0.0; k]; k];
    let mut active = vec![false; k];
    for j in 0..k {
        let mut v = cols[j].clone();
        let orig = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (i, qi) in q.iter().enumerate() {
            if !active[i] {
                continue;
            }
            let d: f64 = qi.iter().zip(&v).map(|(a, b)| a * b).sum();
            r[i][j] = d;
            v.iter_mut().zip(qi).for_each(|(x, qv)| *x -= d * qv);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if orig > 0.0 && norm > 1e-9 * orig {
            active[j] = true;
            r[j][j] = norm;
            v.iter_mut().for_each(|x| *x /= norm);
        }
        q.push(v);
    }
    let mut qty = vec![0.0; k];
    let mut resid = y.to_vec();
    for j in 0..k {
        if active[j] {
            qty[j] = q[j].iter().zip(y).map(|(a, b)| a * b).sum();
            resid.iter_mut().zip(&q[j]).for_each(|(e, qv)| *e -= qty[j] * qv);
        }
    }
    let mut coef = vec![0.0; k];
    for j in (0..k).rev() {
        if !active[j] {
            continue;
        }
        let mut s = qty[j];
        for m in j + 1..k {
            if active[m] {
                s -= r[j][m] * coef[m];
            }
        }
        coef[j] = s / r[j][j];
    }
    (coef, resid.iter().map(|e| e * e).sum())
}

/// Optimal linear parameters `(β1, β4, β5)` for a fixed sigmoid shape.
fn profile(scores: &[f64], mos: &[f64], b2: f64, b3: f64) -> (LogisticParams, f64) {
    let ones = vec![1.0; scores.len()];
    let sig: Vec<f64> = scores.iter().map(|&x| centered_sigmoid(b2 * (x - b3))).collect();
    let (c, sse) = least_squares(&[ones, scores.to_vec(), sig], mos);
    (LogisticParams { b1: c[2], b2, b3, b4: c[1], b5: c[0] }, sse)
}

pub const NM_MAX_ITERATIONS: usize = 5000;
pub const NM_DIAMETER_TOL: f64 = 1e-10;

/// Outcome of a Nelder–Mead run.
#[derive(Clone, Debug)]
pub struct SimplexResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Nelder–Mead minimization with standard coefficients (1, 2, 0.5, 0.5).
/// Stops when the largest vertex distance from the best vertex falls below
/// `diameter_tol` or after `max_iter` iterations. The start point is a
/// vertex, so the result is never worse than `f(start)`.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    steps: &[f64],
    max_iter: usize,
    diameter_tol: f64,
) -> SimplexResult {
    let n = start.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += steps[i];
        let v = eval(&x);
        simplex.push((x, v));
    }

    let mut iterations = 0;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
        let best = simplex[0].0.clone();
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if diameter < diameter_tol {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|(x, _)| x[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect()
        };

        let reflected = along(1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(2.0);
            let fe = eval(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let c = along(0.5);
            let v = eval(&c);
            (c, v)
        } else {
            let c = along(-0.5);
            let v = eval(&c);
            (c, v)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
            let v = eval(&x);
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal));
    let (point, value) = simplex.swap_remove(0);
    SimplexResult { point, value, iterations }
}

/// Deterministic starting point `(range(mos), 1/std(scores), mean(scores), 0, mean(mos))`.
pub fn initial_params(scores: &[f64], mos: &[f64]) -> LogisticParams {
    let (lo, hi) = mos.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    LogisticParams {
        b1: hi - lo,
        b2: 1.0 / std_dev(scores),
        b3: mean(scores),
        b4: 0.0,
        b5: mean(mos),
    }
}

fn sse(scores: &[f64], mos: &[f64], p: &LogisticParams) -> f64 {
    scores.iter().zip(mos).map(|(&x, &m)| (logistic(x, p) - m).powi(2)).sum()
}

/// Least-squares fit of the logistic mapping.
///
/// The simplex searches the sigmoid shape `(ln β2, β3)`, starting from the
/// shape of [`initial_params`]; for every shape the linear parameters
/// `(β1, β4, β5)` are solved exactly. Restarts from the incumbent until a
/// restart no longer improves the objective.
pub fn fit_logistic(scores: &[f64], mos: &[f64]) -> Result<LogisticParams> {
    check_pair(scores, mos, 5)?;
    if is_constant(scores) {
        return Err(SrifError::DegenerateScores("score variance is zero"));
    }
    let init = initial_params(scores, mos);
    let sd = std_dev(scores);
    let objective = |v: &[f64]| profile(scores, mos, v[0].exp(), v[1]).1;

    let mut start = vec![init.b2.ln(), init.b3];
    let steps = [0.5, 0.5 * sd];
    let mut budget = NM_MAX_ITERATIONS;
    let mut best = objective(&start);
    loop {
        let run = nelder_mead(objective, &start, &steps, budget, NM_DIAMETER_TOL);
        budget = budget.saturating_sub(run.iterations.max(1));
        let improved = run.value < best * (1.0 - 1e-12);
        if run.value <= best {
            best = run.value;
            start = run.point;
        }
        if !improved || budget == 0 {
            break;
        }
    }
    let (params, _) = profile(scores, mos, start[0].exp(), start[1]);
    if ![params.b1, params.b2, params.b3, params.b4, params.b5].iter().all(|v| v.is_finite()) {
        return Err(SrifError::DegenerateScores("logistic fit diverged"));
    }
    debug_assert!(sse(scores, mos, &params) <= sse(scores, mos, &init) * (1.0 + 1e-12) + 1e-300);
    Ok(params)
}

/// Average ranks (1-based); tied values share the mean of their positions.
pub fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && v[idx[j]] == v[idx[i]] {
            j += 1;
        }
        let r = (i + j + 1) as f64 / 2.0;
        for &k in &idx[i..j] {
            ranks[k] = r;
        }
        i = j;
    }
    ranks
}

/// Pearson correlation.
pub fn pearson(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b, 2)?;
    if is_constant(a) || is_constant(b) {
        return Err(SrifError::DegenerateScores("constant input to correlation"));
    }
    let ma = mean(a);
    let mb = mean(b);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    Ok((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation: Pearson over average ranks.
pub fn srcc(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b, 2)?;
    pearson(&average_ranks(a), &average_ranks(b))
}

fn tied_pairs(sorted: &[f64]) -> u64 {
    let mut total = 0u64;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

fn merge_count(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut v[..mid], &mut buf[..mid]) + merge_count(&mut v[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

/// Kendall tau-b, `O(n log n)` (Knight's algorithm).
pub fn krcc(a: &[f64], b: &[f64]) -> Result<f64> {
    check_pair(a, b, 2)?;
    if is_constant(a) || is_constant(b) {
        return Err(SrifError::DegenerateScores("constant input to correlation"));
    }
    let n = a.len() as u64;
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));

    let n0 = n * (n - 1) / 2;
    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let n1 = tied_pairs(&xs);
    let mut joint = 0u64;
    let mut run = 1u64;
    for w in pairs.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            joint += run * (run - 1) / 2;
            run = 1;
        }
    }
    joint += run * (run - 1) / 2;

    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = vec![0.0; ys.len()];
    let swaps = merge_count(&mut ys, &mut buf);
    let n2 = tied_pairs(&ys);

    let concordant_minus_discordant = n0 as f64 - n1 as f64 - n2 as f64 + joint as f64 - 2.0 * swaps as f64;
    let denom = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    Ok((concordant_minus_discordant / denom).clamp(-1.0, 1.0))
}

/// PLCC and RMSE between the mapped scores `g(scores)` and `mos`.
pub fn plcc_rmse(scores: &[f64], mos: &[f64], p: &LogisticParams) -> Result<(f64, f64)> {
    check_pair(scores, mos, 2)?;
    let mapped: Vec<f64> = scores.iter().map(|&x| logistic(x, p)).collect();
    let rmse = (mapped.iter().zip(mos).map(|(g, m)| (g - m).powi(2)).sum::<f64>() / mos.len() as f64).sqrt();
    let plcc = if mapped.iter().zip(mos).all(|(g, m)| g == m) && !is_constant(mos) {
        1.0
    } else {
        pearson(&mapped, mos)?
    };
    Ok((plcc, rmse))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport {
    pub srcc: f64,
    pub krcc: f64,
    pub plcc: f64,
    pub rmse: f64,
    pub params: LogisticParams,
    pub n: usize,
}

impl EvaluationReport {
    /// `key = value` lines.
    pub fn to_record(&self) -> String {
        let p = &self.params;
        format!(
            "n = {}\nsrcc = {:.6}\nkrcc = {:.6}\nplcc = {:.6}\nrmse = {:.6}\nbeta1 = {:e}\nbeta2 = {:e}\nbeta3 = {:e}\nbeta4 = {:e}\nbeta5 = {:e}\n",
            self.n, self.srcc, self.krcc, self.plcc, self.rmse, p.b1, p.b2, p.b3, p.b4, p.b5
        )
    }
}

/// Runs the full protocol on predicted scores against subjective scores.
pub fn evaluate(scores: &[f64], mos: &[f64]) -> Result<EvaluationReport> {
    check_pair(scores, mos, 5)?;
    let params = fit_logistic(scores, mos)?;
    let (plcc, rmse) = plcc_rmse(scores, mos, &params)?;
    Ok(EvaluationReport {
        srcc: srcc(scores, mos)?,
        krcc: krcc(scores, mos)?,
        plcc,
        rmse,
        params,
        n: scores.len(),
    })
}
