//! Densities of per-interval extremes, characteristic extreme values, and
//! reduction of raw `N×K` sample matrices to `(y_min, y_max)` pairs.
//!
//! For `K` iid draws with CDF `F` and density `f`:
//!
//! ```text
//! f_min(y)      = K [1 - F(y)]^(K-1) f(y)
//! f_max(y)      = K  F(y)^(K-1)      f(y)
//! f_joint(a, b) = K (K-1) [F(b) - F(a)]^(K-2) f(a) f(b),   a ≤ b
//! ```
//!
//! The characteristic smallest value `μ₁` solves `F(μ₁) = 1/K` and the
//! characteristic largest value `μ_K` solves `F(μ_K) = 1 - 1/K`.

use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionModel, Family};
use crate::error::{check_group_size, check_theta, Error, Result};

/// Where to evaluate an extreme-value density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtremePoint {
    Min(f64),
    Max(f64),
    Joint { y_min: f64, y_max: f64 },
}

/// Density of the minimum, the maximum, or the `(min, max)` pair of `k` iid draws.
///
/// For `k ≥ 3` the joint density vanishes on the diagonal `y_min = y_max`;
/// for `k = 2` the middle factor has exponent zero and the literal value
/// `2 f(y) f(y)` is returned there.
pub fn extreme_pdf<M>(model: &M, point: ExtremePoint, theta: f64, k: usize) -> Result<f64>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    let kf = k as f64;
    match point {
        ExtremePoint::Min(y) => {
            check_group_size(k, 1)?;
            let f = model.pdf(y, theta)?;
            if f == 0.0 {
                return Ok(0.0);
            }
            Ok(kf * model.sf(y, theta)?.powi(k as i32 - 1) * f)
        }
        ExtremePoint::Max(y) => {
            check_group_size(k, 1)?;
            let f = model.pdf(y, theta)?;
            if f == 0.0 {
                return Ok(0.0);
            }
            Ok(kf * model.cdf(y, theta)?.powi(k as i32 - 1) * f)
        }
        ExtremePoint::Joint { y_min, y_max } => {
            check_group_size(k, 2)?;
            if y_min > y_max {
                return Err(Error::Domain(format!("joint density needs y_min ≤ y_max, got ({y_min}, {y_max})")));
            }
            let fa = model.pdf(y_min, theta)?;
            let fb = model.pdf(y_max, theta)?;
            if fa == 0.0 || fb == 0.0 {
                return Ok(0.0);
            }
            let between = model.mass_between(y_min, y_max, theta)?;
            Ok(kf * (kf - 1.0) * between.powi(k as i32 - 2) * fa * fb)
        }
    }
}

/// Characteristic smallest and largest values for group size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicValues {
    pub mu1: f64,
    pub mu_k: f64,
    pub k: usize,
    pub theta: f64,
}

/// `(μ₁, μ_K)`, from a closed form when the family has one, otherwise by root search.
pub fn characteristic_values<M>(model: &M, theta: f64, k: usize) -> Result<CharacteristicValues>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_group_size(k, 2)?;
    let kf = k as f64;
    let closed = match model.family() {
        Some(Family::Exponential) => Some((theta * (kf / (kf - 1.0)).ln(), theta * kf.ln())),
        Some(Family::Uniform) => Some((theta / kf, theta * (1.0 - 1.0 / kf))),
        Some(Family::SymmetricUniform) => Some((theta * (2.0 / kf - 1.0), theta * (1.0 - 2.0 / kf))),
        None => None,
    };
    match closed {
        Some((mu1, mu_k)) => Ok(CharacteristicValues { mu1, mu_k, k, theta }),
        None => characteristic_values_by_root(model, theta, k),
    }
}

/// `(μ₁, μ_K)` by bracketing root search, ignoring any closed form.
///
/// `μ₁` is solved on the CDF and `μ_K` on the survival function, so both
/// targets are small probabilities resolved to `1e-12` absolute, followed by
/// one secant step on the final bracket.
pub fn characteristic_values_by_root<M>(model: &M, theta: f64, k: usize) -> Result<CharacteristicValues>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_group_size(k, 2)?;
    let p = 1.0 / k as f64;
    let mu1 = solve_increasing(model, theta, |x| Ok(model.cdf(x, theta)? - p))?;
    let mu_k = solve_increasing(model, theta, |x| Ok(p - model.sf(x, theta)?))?;
    Ok(CharacteristicValues { mu1, mu_k, k, theta })
}

const ROOT_TOL: f64 = 1e-12;
const MAX_EXPANSIONS: usize = 1100;
const MAX_BISECTIONS: usize = 400;

fn solve_increasing<M, G>(model: &M, theta: f64, residual: G) -> Result<f64>
where
    M: DistributionModel + ?Sized,
    G: Fn(f64) -> Result<f64>,
{
    let support = model.support(theta);
    let scale = theta.max(1.0);
    let eps = 1e-300_f64.max(f64::EPSILON * scale);

    let mut lo = if support.lower.is_finite() { support.lower + eps } else { -scale };
    let mut hi = if support.upper.is_finite() { support.upper - eps } else { scale };
    if support.lower.is_finite() && !support.upper.is_finite() {
        hi = hi.max(lo + scale);
    }
    if support.upper.is_finite() && !support.lower.is_finite() {
        lo = lo.min(hi - scale);
    }

    let mut step = scale;
    let mut expansions = 0;
    while residual(lo)? > 0.0 {
        if support.lower.is_finite() || expansions >= MAX_EXPANSIONS {
            return Err(Error::Solver { message: "root not bracketed below".into(), lower: lo, upper: hi });
        }
        hi = lo;
        step *= 2.0;
        lo -= step;
        expansions += 1;
    }
    step = scale;
    while residual(hi)? < 0.0 {
        if support.upper.is_finite() || expansions >= MAX_EXPANSIONS {
            return Err(Error::Solver { message: "root not bracketed above".into(), lower: lo, upper: hi });
        }
        lo = hi;
        step *= 2.0;
        hi += step;
        expansions += 1;
    }

    let mut r_lo = residual(lo)?;
    let mut r_hi = residual(hi)?;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let r_mid = residual(mid)?;
        if r_mid < 0.0 {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
            r_hi = r_mid;
        }
        if r_mid.abs() <= ROOT_TOL || hi - lo <= f64::EPSILON * mid.abs() {
            break;
        }
    }

    let best = if r_lo.abs() < r_hi.abs() { (lo, r_lo) } else { (hi, r_hi) };
    if best.1.abs() > ROOT_TOL && hi - lo > 4.0 * f64::EPSILON * best.0.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Solver { message: "bisection did not reach tolerance".into(), lower: lo, upper: hi });
    }
    if r_hi != r_lo {
        let secant = lo - r_lo * (hi - lo) / (r_hi - r_lo);
        if (lo..=hi).contains(&secant) && residual(secant)?.abs() <= best.1.abs() {
            return Ok(secant);
        }
    }
    Ok(best.0)
}

/// One interval's extremes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub y_min: f64,
    pub y_max: f64,
}

/// `N` intervals of `(y_min, y_max)` drawn from groups of `k` samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeDataset {
    k: usize,
    intervals: Vec<Interval>,
}

impl ExtremeDataset {
    /// Validates `y_min ≤ y_max` and finiteness for every interval.
    ///
    /// `k = 1` is accepted (min and max coincide); estimators that need the
    /// joint density check for `k ≥ 2` themselves.
    pub fn new(k: usize, intervals: Vec<Interval>) -> Result<Self> {
        check_group_size(k, 1)?;
        for (i, iv) in intervals.iter().enumerate() {
            if !(iv.y_min.is_finite() && iv.y_max.is_finite()) {
                return Err(Error::Domain(format!("interval {i} has a non-finite value")));
            }
            if iv.y_min > iv.y_max {
                return Err(Error::Domain(format!("interval {i} has y_min {} > y_max {}", iv.y_min, iv.y_max)));
            }
        }
        Ok(Self { k, intervals })
    }

    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        Self::new(k, pairs.into_iter().map(|(y_min, y_max)| Interval { y_min, y_max }).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn minima(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals.iter().map(|iv| iv.y_min)
    }

    pub fn maxima(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals.iter().map(|iv| iv.y_max)
    }

    /// Multiplies every value by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Parameter(format!("scale factor must be positive, got {c}")));
        }
        Ok(Self {
            k: self.k,
            intervals: self.intervals.iter().map(|iv| Interval { y_min: c * iv.y_min, y_max: c * iv.y_max }).collect(),
        })
    }

    /// Checks that every value lies in the model's support at `theta`.
    pub fn check_support<M>(&self, model: &M, theta: f64) -> Result<()>
    where
        M: DistributionModel + ?Sized,
    {
        let support = model.support(theta);
        match self.intervals.iter().position(|iv| !support.contains(iv.y_min) || !support.contains(iv.y_max)) {
            Some(i) => Err(Error::Domain(format!("interval {i} lies outside the {} support", model.name()))),
            None => Ok(()),
        }
    }
}

/// Reduces each row of an `N×K` matrix to its minimum and maximum.
pub fn reduce_intervals<R: AsRef<[f64]>>(samples: &[R]) -> Result<ExtremeDataset> {
    let k = check_matrix(samples)?;
    check_group_size(k, 2)?;
    let intervals = samples
        .iter()
        .map(|row| {
            let (y_min, y_max) =
                row.as_ref().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
            Interval { y_min, y_max }
        })
        .collect();
    ExtremeDataset::new(k, intervals)
}

/// Returns the common row length; rejects empty, ragged or non-finite input.
pub(crate) fn check_matrix<R: AsRef<[f64]>>(samples: &[R]) -> Result<usize> {
    let first = samples.first().ok_or_else(|| Error::Shape("sample matrix has no rows".into()))?;
    let k = first.as_ref().len();
    if k == 0 {
        return Err(Error::Shape("sample matrix has empty rows".into()));
    }
    for (i, row) in samples.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != k {
            return Err(Error::Shape(format!("row {i} has {} entries, expected {k}", row.len())));
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("row {i} contains a non-finite value")));
        }
    }
    Ok(k)
}
