//! Maximum-likelihood estimators of the exponential mean θ.
//!
//! Full and partial samples, and minima, have closed forms. Maxima and the
//! min/max pair are estimated by maximising the log-likelihood with Brent's
//! method on a data-driven bracket.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremes::{check_matrix, ExtremeDataset};
use crate::fim::Variant;
use crate::optimize::brent_minimize;

/// Relative tolerance on θ for the numeric estimators.
pub const OPT_REL_TOL: f64 = 1e-10;
/// Iteration cap for one Brent run.
pub const OPT_MAX_ITER: usize = 500;
/// Times the bracket is widened by 10× when the optimum sits on an endpoint.
pub const BRACKET_EXPANSIONS: usize = 3;

/// Diagnostics of a numeric maximisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerTrace {
    pub iterations: usize,
    /// Final search bracket on θ.
    pub bracket: (f64, f64),
    pub converged: bool,
    pub loglik_at_opt: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub variant: Variant,
    pub theta_hat: f64,
    /// Present for the numeric variants (max, mix).
    pub optimizer: Option<OptimizerTrace>,
    /// Mean of the minima without the `K` factor; min variant only.
    pub uncorrected_min_mean: Option<f64>,
}

impl Estimate {
    fn closed(variant: Variant, theta_hat: f64) -> Self {
        Self { variant, theta_hat, optimizer: None, uncorrected_min_mean: None }
    }
}

fn positive_mean(sum: f64, count: usize, what: &str) -> Result<f64> {
    let mean = sum / count as f64;
    if mean > 0.0 {
        Ok(mean)
    } else {
        Err(Error::DegenerateData(format!("all {what} are zero; θ̂ = 0 is outside the parameter space")))
    }
}

fn check_nonnegative<R: AsRef<[f64]>>(samples: &[R]) -> Result<()> {
    match samples.iter().position(|row| row.as_ref().iter().any(|&x| x < 0.0)) {
        Some(i) => Err(Error::Domain(format!("row {i} contains a negative sample"))),
        None => Ok(()),
    }
}

/// Grand mean of an `N×K` sample matrix.
pub fn estimate_opt<R: AsRef<[f64]>>(samples: &[R]) -> Result<Estimate> {
    let k = check_matrix(samples)?;
    check_nonnegative(samples)?;
    let sum: f64 = samples.iter().flat_map(|r| r.as_ref().iter()).sum();
    Ok(Estimate::closed(Variant::Opt, positive_mean(sum, samples.len() * k, "samples")?))
}

/// Mean of the first `l` entries of each row.
pub fn estimate_partial<R: AsRef<[f64]>>(samples: &[R], l: usize) -> Result<Estimate> {
    let k = check_matrix(samples)?;
    if !(1..=k).contains(&l) {
        return Err(Error::Parameter(format!("retained count L must lie in [1, {k}], got {l}")));
    }
    check_nonnegative(samples)?;
    let sum: f64 = samples.iter().flat_map(|r| r.as_ref()[..l].iter()).sum();
    Ok(Estimate::closed(Variant::Partial(l), positive_mean(sum, samples.len() * l, "samples")?))
}

fn check_dataset(data: &ExtremeDataset) -> Result<()> {
    if data.is_empty() {
        return Err(Error::Shape("extreme dataset has no intervals".into()));
    }
    if let Some(i) = data.minima().position(|y| y < 0.0) {
        return Err(Error::Domain(format!("interval {i} has a negative minimum")));
    }
    Ok(())
}

/// `K · mean(y_min)`.
///
/// Minima of `K` exponentials are exponential with mean `θ/K`, so this is the
/// MLE and is unbiased. The plain mean of the minima is kept in
/// `uncorrected_min_mean`.
pub fn estimate_min(data: &ExtremeDataset) -> Result<Estimate> {
    check_dataset(data)?;
    let mean = positive_mean(data.minima().sum(), data.n(), "minima")?;
    Ok(Estimate {
        variant: Variant::Min,
        theta_hat: data.k() as f64 * mean,
        optimizer: None,
        uncorrected_min_mean: Some(mean),
    })
}

/// Log-likelihood of the maxima:
/// `Σ [ln K - ln θ - y/θ + (K-1)·ln(1 - e^{-y/θ})]`.
pub fn loglik_max(data: &ExtremeDataset, theta: f64) -> f64 {
    let k = data.k() as f64;
    let n = data.n() as f64;
    let body: f64 = data
        .maxima()
        .map(|y| {
            let z = y / theta;
            let tail = if k > 1.0 { (k - 1.0) * (-(-z).exp_m1()).ln() } else { 0.0 };
            tail - z
        })
        .sum();
    n * (k.ln() - theta.ln()) + body
}

/// Log-likelihood of the `(min, max)` pairs:
/// `Σ [ln K(K-1) - 2 ln θ - (a+b)/θ + (K-2)·ln(e^{-a/θ} - e^{-b/θ})]`,
/// with the difference evaluated as `e^{-a/θ}·(1 - e^{-(b-a)/θ})`.
pub fn loglik_mix(data: &ExtremeDataset, theta: f64) -> f64 {
    let k = data.k() as f64;
    let n = data.n() as f64;
    let body: f64 = data
        .intervals()
        .iter()
        .map(|iv| {
            let a = iv.y_min / theta;
            let b = iv.y_max / theta;
            let spread = if k > 2.0 { (k - 2.0) * (-a + (-(-(b - a)).exp_m1()).ln()) } else { 0.0 };
            spread - a - b
        })
        .sum();
    n * ((k * (k - 1.0)).ln() - 2.0 * theta.ln()) + body
}

/// Initial bracket `[m / (10·max(ln K, ln 2)), 10·m]` with `m = mean(y_max)`.
pub fn initial_bracket(data: &ExtremeDataset) -> (f64, f64) {
    let m = data.maxima().sum::<f64>() / data.n() as f64;
    let div = (data.k() as f64).ln().max(std::f64::consts::LN_2);
    (m / (10.0 * div), 10.0 * m)
}

fn maximize<F>(loglik: F, bracket: (f64, f64)) -> Result<(f64, OptimizerTrace)>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = bracket;
    let mut iterations = 0;
    for attempt in 0..=BRACKET_EXPANSIONS {
        let m = brent_minimize(
            |t| {
                let v = loglik(t);
                if v.is_nan() {
                    f64::INFINITY
                } else {
                    -v
                }
            },
            lo,
            hi,
            OPT_REL_TOL,
            OPT_MAX_ITER,
        );
        iterations += m.iterations;
        if !m.converged {
            return Err(Error::Optimizer { message: "iteration cap reached".into(), iterations, lower: lo, upper: hi });
        }
        let edge = 1e-6 * (hi - lo);
        let at_lo = m.x - lo <= edge;
        let at_hi = hi - m.x <= edge;
        if !(at_lo || at_hi) {
            let trace = OptimizerTrace { iterations, bracket: (lo, hi), converged: true, loglik_at_opt: -m.fx };
            return Ok((m.x, trace));
        }
        if attempt == BRACKET_EXPANSIONS {
            break;
        }
        if at_lo {
            lo /= 10.0;
        }
        if at_hi {
            hi *= 10.0;
        }
    }
    Err(Error::Optimizer {
        message: "maximum stays on the bracket edge after widening".into(),
        iterations,
        lower: lo,
        upper: hi,
    })
}

/// Numeric MLE of θ from the maxima.
pub fn estimate_max(data: &ExtremeDataset) -> Result<Estimate> {
    check_dataset(data)?;
    if let Some(i) = data.maxima().position(|y| y <= 0.0) {
        return Err(Error::Domain(format!("interval {i} has a non-positive maximum")));
    }
    let (theta_hat, trace) = maximize(|t| loglik_max(data, t), initial_bracket(data))?;
    Ok(Estimate { variant: Variant::Max, theta_hat, optimizer: Some(trace), uncorrected_min_mean: None })
}

/// Numeric MLE of θ from the `(min, max)` pairs.
pub fn estimate_mix(data: &ExtremeDataset) -> Result<Estimate> {
    check_dataset(data)?;
    if data.k() < 2 {
        return Err(Error::Parameter(format!("the pair likelihood needs K ≥ 2, got {}", data.k())));
    }
    if data.k() >= 3 {
        if let Some(i) = data.intervals().iter().position(|iv| iv.y_min >= iv.y_max) {
            return Err(Error::DegenerateData(format!(
                "interval {i} has y_min = y_max, so the likelihood vanishes for K ≥ 3"
            )));
        }
    }
    if data.maxima().all(|y| y <= 0.0) {
        return Err(Error::DegenerateData("all maxima are zero".into()));
    }
    let (theta_hat, trace) = maximize(|t| loglik_mix(data, t), initial_bracket(data))?;
    Ok(Estimate { variant: Variant::Mix, theta_hat, optimizer: Some(trace), uncorrected_min_mean: None })
}

/// Dispatches on `variant`; `opt` and `partial` need the raw samples.
pub fn estimate_extreme(data: &ExtremeDataset, variant: Variant) -> Result<Estimate> {
    match variant {
        Variant::Min => estimate_min(data),
        Variant::Max => estimate_max(data),
        Variant::Mix => estimate_mix(data),
        Variant::Opt | Variant::Partial(_) => {
            Err(Error::Unsupported(format!("variant {variant} needs the full samples, not extremes")))
        }
    }
}
