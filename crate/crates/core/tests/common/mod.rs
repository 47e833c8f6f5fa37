//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use extremefim::distributions::{DistributionModel, Exponential};

/// `n×k` exponential samples from one seeded stream.
pub fn sample_matrix(theta: f64, n: usize, k: usize, seed: u64) -> Vec<Vec<f64>> {
    let flat = Exponential.sample(theta, n * k, seed).unwrap();
    flat.chunks(k).map(<[f64]>::to_vec).collect()
}

/// Log-likelihood of maxima written straight from the product of densities.
pub fn naive_loglik_max(maxima: &[f64], k: usize, theta: f64) -> f64 {
    maxima
        .iter()
        .map(|&y| {
            let f = k as f64 / theta * (-y / theta).exp() * (1.0 - (-y / theta).exp()).powi(k as i32 - 1);
            f.ln()
        })
        .sum()
}

/// Log-likelihood of `(min, max)` pairs from the product of joint densities.
pub fn naive_loglik_mix(pairs: &[(f64, f64)], k: usize, theta: f64) -> f64 {
    let kf = k as f64;
    pairs
        .iter()
        .map(|&(a, b)| {
            let f = kf * (kf - 1.0) / (theta * theta)
                * (-a / theta).exp()
                * (-b / theta).exp()
                * ((-a / theta).exp() - (-b / theta).exp()).powi(k as i32 - 2);
            f.ln()
        })
        .sum()
}

/// Maximiser of `f` on `[lo, hi]` by log-spaced grids, each refined around the
/// previous best point. Three rounds of 2001 points resolve θ to about 1e-8.
pub fn grid_argmax(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let points = 2001;
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut best = lo;
    for _ in 0..3 {
        let step = (b - a) / (points - 1) as f64;
        let mut best_v = f64::NEG_INFINITY;
        let mut best_i = 0;
        for i in 0..points {
            let v = f((a + i as f64 * step).exp());
            if v > best_v {
                best_v = v;
                best_i = i;
            }
        }
        let centre = a + best_i as f64 * step;
        best = centre.exp();
        a = centre - 2.0 * step;
        b = centre + 2.0 * step;
    }
    best
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Composite Simpson rule with `intervals` (made even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let m = intervals + intervals % 2;
    let h = (b - a) / m as f64;
    let inner: f64 = (1..m).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + inner + f(b)) * h / 3.0
}
