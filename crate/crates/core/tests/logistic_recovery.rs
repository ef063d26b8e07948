mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use srif_core::eval::{fit_logistic, initial_params, logistic, plcc_rmse, LogisticParams};
use support::oracles;

const TRUTH: LogisticParams = LogisticParams { b1: 60.0, b2: 9.0, b3: 0.55, b4: 8.0, b5: 45.0 };

fn rmse(scores: &[f64], mos: &[f64], p: &LogisticParams) -> f64 {
    plcc_rmse(scores, mos, p).unwrap().1
}

#[test]
fn noiseless_data_is_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let scores: Vec<f64> = (0..120).map(|_| rng.random_range(0.1..1.0)).collect();
    let mos: Vec<f64> = scores.iter().map(|&s| logistic(s, &TRUTH)).collect();
    let fit = fit_logistic(&scores, &mos).unwrap();
    assert!(rmse(&scores, &mos, &fit) < 1e-6);
}

#[test]
fn noisy_fits_track_the_noise_level() {
    let sigma = 2.5;
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let noise = Normal::new(0.0, sigma).unwrap();
        let scores: Vec<f64> = (0..200).map(|_| rng.random_range(0.1..1.0)).collect();
        let mos: Vec<f64> = scores.iter().map(|&s| logistic(s, &TRUTH) + noise.sample(&mut rng)).collect();
        let fit = fit_logistic(&scores, &mos).unwrap();
        let r = rmse(&scores, &mos, &fit);
        assert!((0.8 * sigma..=1.3 * sigma).contains(&r), "seed {seed}: rmse {r}");
    }
}

#[test]
fn linear_data_is_no_worse_than_ordinary_least_squares() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let scores: Vec<f64> = (0..80).map(|_| rng.random_range(0.0..1.0)).collect();
    let mos: Vec<f64> = scores.iter().map(|&s| 20.0 + 55.0 * s + rng.random_range(-2.0..2.0)).collect();
    let fit = fit_logistic(&scores, &mos).unwrap();
    assert!(rmse(&scores, &mos, &fit) <= oracles::ols_rmse(&scores, &mos) + 1e-9);
}

#[test]
fn fit_never_loses_to_its_starting_point() {
    for seed in 0..10 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scores: Vec<f64> = (0..40).map(|_| rng.random_range(0.0..1.0)).collect();
        let mos: Vec<f64> = scores.iter().map(|&s| 100.0 * s * s + rng.random_range(-10.0..10.0)).collect();
        let fit = fit_logistic(&scores, &mos).unwrap();
        let start = initial_params(&scores, &mos);
        assert!(rmse(&scores, &mos, &fit) <= rmse(&scores, &mos, &start) + 1e-12);
        assert!(fit.b2 > 0.0);
    }
}

#[test]
fn constant_scores_are_rejected() {
    let err = fit_logistic(&[0.5; 6], &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap_err();
    assert!(err.to_string().starts_with("DegenerateScores"));
}
