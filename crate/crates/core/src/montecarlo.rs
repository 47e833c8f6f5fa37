//! Seeded simulation studies: draw `N×K` samples, reduce them to extremes,
//! estimate θ with each variant, and compare the empirical variance with the
//! Cramer-Rao bounds.
//!
//! Every trial draws from its own stream, seeded by a fixed 64-bit mix of
//! `(base_seed, K, trial_index)`. Results therefore do not depend on thread
//! scheduling, and aggregation runs in trial-index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionModel, Family};
use crate::error::{check_theta, Error, Result};
use crate::estimators::{estimate_extreme, estimate_opt, estimate_partial};
use crate::extremes::reduce_intervals;
use crate::fim::{fim_min_exact, fim_opt, fim_partial, fim_plugin, fim_quadrature, Extreme, FimValue, Variant};

pub const DEFAULT_K_LIST: [usize; 10] = [5, 10, 15, 20, 25, 30, 40, 50, 75, 100];
pub const DEFAULT_TRIALS: usize = 10_000;
pub const DEFAULT_N: usize = 100;
pub const DEFAULT_VARIANTS: [Variant; 4] = [Variant::Min, Variant::Max, Variant::Mix, Variant::Opt];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub theta: f64,
    pub n: usize,
    pub k_list: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub family: Family,
    pub variants: Vec<Variant>,
}

impl StudyConfig {
    /// Exponential study with the default `K` list, trial count and variants.
    pub fn new(theta: f64, n: usize, base_seed: u64) -> Self {
        Self {
            theta,
            n,
            k_list: DEFAULT_K_LIST.to_vec(),
            trials: DEFAULT_TRIALS,
            base_seed,
            family: Family::Exponential,
            variants: DEFAULT_VARIANTS.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_theta(self.theta)?;
        if self.n == 0 {
            return Err(Error::Parameter("interval count N must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Parameter("trial count must be at least 1".into()));
        }
        if self.k_list.is_empty() {
            return Err(Error::Parameter("K list is empty".into()));
        }
        if let Some(k) = self.k_list.iter().find(|&&k| k < 2) {
            return Err(Error::Parameter(format!("every K must be at least 2, got {k}")));
        }
        if self.variants.is_empty() {
            return Err(Error::Parameter("no variants requested".into()));
        }
        for v in &self.variants {
            if let Variant::Partial(l) = *v {
                if let Some(k) = self.k_list.iter().find(|&&k| l == 0 || l > k) {
                    return Err(Error::Parameter(format!("partial:{l} does not fit K = {k}")));
                }
            }
        }
        if self.family != Family::Exponential {
            return Err(Error::Unsupported(format!(
                "estimators are only available for the exponential family, not {}",
                self.family
            )));
        }
        Ok(())
    }
}

fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial_index` at group size `k`.
pub fn trial_seed(base_seed: u64, k: usize, trial_index: usize) -> u64 {
    mix64(mix64(mix64(base_seed) ^ k as u64) ^ trial_index as u64)
}

/// θ̂ for every requested variant of one trial, in request order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub k: usize,
    pub trial_index: usize,
    pub estimates: Vec<(Variant, f64)>,
}

impl TrialRecord {
    pub fn get(&self, variant: Variant) -> Option<f64> {
        self.estimates.iter().find(|(v, _)| *v == variant).map(|&(_, t)| t)
    }
}

fn trial_inner(config: &StudyConfig, k: usize, trial_index: usize) -> Result<TrialRecord> {
    let model = config.family.model();
    let flat = model.sample(config.theta, config.n * k, trial_seed(config.base_seed, k, trial_index))?;
    let rows: Vec<&[f64]> = flat.chunks(k).collect();
    let data = reduce_intervals(&rows)?;
    let estimates = config
        .variants
        .iter()
        .map(|&v| {
            let e = match v {
                Variant::Opt => estimate_opt(&rows)?,
                Variant::Partial(l) => estimate_partial(&rows, l)?,
                _ => estimate_extreme(&data, v)?,
            };
            Ok((v, e.theta_hat))
        })
        .collect::<Result<_>>()?;
    Ok(TrialRecord { k, trial_index, estimates })
}

/// One synthetic `N×K` dataset, reduced and estimated. Deterministic in its arguments.
pub fn run_trial(config: &StudyConfig, k: usize, trial_index: usize) -> Result<TrialRecord> {
    StudyConfig { k_list: vec![k], ..config.clone() }.validate()?;
    trial_inner(config, k, trial_index).map_err(|e| Error::Trial {
        k,
        trial_index,
        completed_k: vec![],
        source: Box::new(e),
    })
}

/// Cramer-Rao bounds `1/J` for a variant, by evaluation route; `None` where undefined.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CrlbOverlay {
    pub closed_form: Option<f64>,
    pub plug_in: Option<f64>,
    pub quadrature: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub k: usize,
    pub variant: Variant,
    pub trials: usize,
    pub mean_theta_hat: f64,
    /// Unbiased sample variance over trials.
    pub var_theta_hat: f64,
    pub bias: f64,
    /// `θ²/(N·var)`, comparable with L-equivalent information.
    pub inv_var_normalized: f64,
    pub crlb: CrlbOverlay,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub config: StudyConfig,
    pub rows: Vec<StudyRow>,
}

impl StudyReport {
    pub fn row(&self, k: usize, variant: Variant) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.k == k && r.variant == variant)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Serial,
}

fn bound(fim: Result<FimValue>) -> Result<Option<f64>> {
    match fim {
        Ok(j) => Ok(j.crlb().ok()),
        Err(Error::Parameter(_) | Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Bounds for one `(K, variant)` cell.
pub fn crlb_overlay<M>(model: &M, variant: Variant, theta: f64, n: usize, k: usize) -> Result<CrlbOverlay>
where
    M: DistributionModel + ?Sized,
{
    let extreme = |e: Extreme| -> Result<CrlbOverlay> {
        Ok(CrlbOverlay {
            closed_form: None,
            plug_in: bound(fim_plugin(model, e, theta, n, k))?,
            quadrature: bound(fim_quadrature(model, e, theta, n, k))?,
        })
    };
    Ok(match variant {
        Variant::Opt => CrlbOverlay { closed_form: bound(fim_opt(model, theta, n, k))?, ..Default::default() },
        Variant::Partial(l) => {
            CrlbOverlay { closed_form: bound(fim_partial(model, theta, n, k, l))?, ..Default::default() }
        }
        Variant::Min => {
            CrlbOverlay { closed_form: bound(fim_min_exact(model, theta, n, k))?, ..extreme(Extreme::Min)? }
        }
        Variant::Max => extreme(Extreme::Max)?,
        Variant::Mix => extreme(Extreme::Mix)?,
    })
}

fn summarise(theta: f64, n: usize, k: usize, variant: Variant, est: &[f64], crlb: CrlbOverlay) -> StudyRow {
    let count = est.len() as f64;
    let mean = est.iter().sum::<f64>() / count;
    let var = if est.len() > 1 { est.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (count - 1.0) } else { 0.0 };
    StudyRow {
        k,
        variant,
        trials: est.len(),
        mean_theta_hat: mean,
        var_theta_hat: var,
        bias: mean - theta,
        inv_var_normalized: theta * theta / (n as f64 * var),
        crlb,
    }
}

/// Runs every trial at every `K` and aggregates per `(K, variant)`.
pub fn run_study(config: &StudyConfig) -> Result<StudyReport> {
    run_study_with(config, Execution::Parallel)
}

pub fn run_study_with(config: &StudyConfig, execution: Execution) -> Result<StudyReport> {
    config.validate()?;
    let model = config.family.model();
    let mut rows = Vec::with_capacity(config.k_list.len() * config.variants.len());
    let mut completed_k = Vec::new();

    for &k in &config.k_list {
        let run = |i| trial_inner(config, k, i);
        let outcomes: Vec<Result<TrialRecord>> = match execution {
            Execution::Parallel => (0..config.trials).into_par_iter().map(run).collect(),
            Execution::Serial => (0..config.trials).map(run).collect(),
        };
        let mut records = Vec::with_capacity(outcomes.len());
        for (i, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Ok(r) => records.push(r),
                Err(e) => {
                    return Err(Error::Trial { k, trial_index: i, completed_k, source: Box::new(e) });
                }
            }
        }
        for (slot, &variant) in config.variants.iter().enumerate() {
            let est: Vec<f64> = records.iter().map(|r| r.estimates[slot].1).collect();
            let crlb = crlb_overlay(model, variant, config.theta, config.n, k)?;
            rows.push(summarise(config.theta, config.n, k, variant, &est, crlb));
        }
        completed_k.push(k);
    }
    Ok(StudyReport { config: config.clone(), rows })
}

/// Empirical behaviour of the largest of `k` draws as `k` grows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub k: usize,
    pub var_y_max: f64,
    /// Mean of `Y_max / Ê[Y_max]`, with `Ê` from an independent half of the replicates.
    pub mean_ratio: f64,
    pub ratio_sd: f64,
}

pub const MIN_PROBE_REPLICATES: usize = 1000;

/// Samples `replicates` maxima of `k` draws at θ = 1 for each `k`.
///
/// Each maximum is drawn exactly from its law `F^k` by inverting
/// `P{Y_max > y} = 1 - V^{1/k}`, one uniform `V` per replicate. The ratio
/// statistics split the replicates in half: the first half estimates
/// `E[Y_max]`, the second half is divided by it, so the ratio is not
/// identically one.
pub fn convergence_probe<M>(model: &M, k_list: &[usize], replicates: usize, seed: u64) -> Result<Vec<ProbeRow>>
where
    M: DistributionModel + ?Sized,
{
    if replicates < MIN_PROBE_REPLICATES {
        return Err(Error::Parameter(format!(
            "convergence probe needs at least {MIN_PROBE_REPLICATES} replicates, got {replicates}"
        )));
    }
    if let Some(k) = k_list.iter().find(|&&k| k == 0) {
        return Err(Error::Parameter(format!("group size K must be at least 1, got {k}")));
    }
    k_list
        .par_iter()
        .map(|&k| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, k, 0));
            let inv_k = 1.0 / k as f64;
            let maxima: Vec<f64> = (0..replicates)
                .map(|_| {
                    let v: f64 = rng.random();
                    model.survival_quantile(-(inv_k * v.ln()).exp_m1(), 1.0)
                })
                .collect::<Result<_>>()?;

            let all = maxima.len() as f64;
            let mean_all = maxima.iter().sum::<f64>() / all;
            let var_y_max = maxima.iter().map(|y| (y - mean_all).powi(2)).sum::<f64>() / (all - 1.0);

            let (pilot, held) = maxima.split_at(replicates / 2);
            let expected = pilot.iter().sum::<f64>() / pilot.len() as f64;
            let ratios: Vec<f64> = held.iter().map(|y| y / expected).collect();
            let h = ratios.len() as f64;
            let mean_ratio = ratios.iter().sum::<f64>() / h;
            let ratio_sd = (ratios.iter().map(|r| (r - mean_ratio).powi(2)).sum::<f64>() / (h - 1.0)).sqrt();
            Ok(ProbeRow { k, var_y_max, mean_ratio, ratio_sd })
        })
        .collect()
}
