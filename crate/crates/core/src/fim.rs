//! Fisher information and Cramer-Rao bounds for estimators built from full
//! samples, partial samples, minima, maxima, or both extremes.
//!
//! Three evaluation routes are available:
//!
//! * **closed form**: exact expressions for the exponential family
//!   (`J_opt = N·K/θ²`, `J_L = N·L/θ²`, `J_min = N/θ²`);
//! * **plug-in approximation**: the expectation `E[-∂²log f_extreme/∂θ²]` is
//!   replaced by the integrand evaluated at the characteristic values
//!   (`μ₁` for the minimum, `μ_K` for the maximum, `(μ₁, μ_K)` for both);
//! * **quadrature**: the expectation is integrated numerically against the
//!   extreme-value density. This is exact up to the quadrature tolerance and
//!   serves as the oracle for the approximation.
//!
//! All information values are scalars for a single parameter θ and scale as
//! `1/θ²` for the exponential family. [`l_equivalent`] normalises by `N/θ²`,
//! giving the number of raw samples per interval that would carry the same
//! information.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionModel, Family};
use crate::error::{check_group_size, check_theta, Error, Result};
use crate::extremes::{characteristic_values, extreme_pdf, ExtremePoint};
use crate::quadrature::integrate;

/// Which estimator an information value (or estimate) refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Variant {
    Opt,
    /// `L` randomly retained samples per interval.
    Partial(usize),
    Min,
    Max,
    Mix,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Opt => f.write_str("opt"),
            Variant::Partial(l) => write!(f, "partial:{l}"),
            Variant::Min => f.write_str("min"),
            Variant::Max => f.write_str("max"),
            Variant::Mix => f.write_str("mix"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "opt" => Ok(Variant::Opt),
            "min" => Ok(Variant::Min),
            "max" => Ok(Variant::Max),
            "mix" => Ok(Variant::Mix),
            _ => s.strip_prefix("partial:").and_then(|l| l.parse().ok()).map(Variant::Partial).ok_or_else(|| {
                Error::Parameter(format!("unknown variant '{s}' (expected opt, min, max, mix or partial:L)"))
            }),
        }
    }
}

impl From<Variant> for String {
    fn from(v: Variant) -> Self {
        v.to_string()
    }
}

impl TryFrom<String> for Variant {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The extreme statistic an information value is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    Min,
    Max,
    /// Minimum and maximum together, through their joint density.
    Mix,
}

impl Extreme {
    pub fn min_group_size(self) -> usize {
        match self {
            Extreme::Min | Extreme::Max => 2,
            Extreme::Mix => 3,
        }
    }
}

impl From<Extreme> for Variant {
    fn from(e: Extreme) -> Self {
        match e {
            Extreme::Min => Variant::Min,
            Extreme::Max => Variant::Max,
            Extreme::Mix => Variant::Mix,
        }
    }
}

/// How an information value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    PlugInApprox,
    Quadrature,
}

/// Plug-in approximations below this group size are tagged `low_accuracy`.
pub const LOW_ACCURACY_K: usize = 15;

/// A scalar Fisher information for `n` intervals of `k` samples at `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FimValue {
    pub variant: Variant,
    pub method: Method,
    pub value: f64,
    pub n: usize,
    pub k: usize,
    pub theta: f64,
    /// Plug-in value at small `k`, where the approximation is coarse.
    pub low_accuracy: bool,
    /// Quadrature error bound, when `method` is quadrature.
    pub error_bound: Option<f64>,
}

impl FimValue {
    /// A plug-in evaluation came out non-positive, so the approximation has broken down.
    pub fn is_breakdown(&self) -> bool {
        self.value <= 0.0
    }

    pub fn crlb(&self) -> Result<f64> {
        crlb(self)
    }

    pub fn l_equivalent(&self) -> f64 {
        l_equivalent(self)
    }
}

/// Cramer-Rao lower bound `1/J`.
pub fn crlb(fim: &FimValue) -> Result<f64> {
    if fim.value > 0.0 && fim.value.is_finite() {
        Ok(1.0 / fim.value)
    } else {
        Err(Error::UndefinedBound(fim.value))
    }
}

/// `J·θ²/N`: raw samples per interval carrying the same information.
pub fn l_equivalent(fim: &FimValue) -> f64 {
    fim.value * fim.theta * fim.theta / fim.n as f64
}

fn check_count(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::Parameter("interval count N must be at least 1".into()))
    }
}

fn is_exponential<M: DistributionModel + ?Sized>(model: &M) -> bool {
    model.family() == Some(Family::Exponential)
}

// ---------------------------------------------------------------------------
// Log-density curvature in θ
// ---------------------------------------------------------------------------

/// `∂² log f(x; θ) / ∂θ²` for the base density.
pub fn d2_log_pdf<M>(model: &M, x: f64, theta: f64) -> Result<f64>
where
    M: DistributionModel + ?Sized,
{
    let d = model.theta_derivatives(x, theta)?;
    let f = model.pdf(x, theta)?;
    let s = d.pdf_d1 / f;
    Ok(d.pdf_d2 / f - s * s)
}

/// `∂² log f_extreme / ∂θ²` for the minimum, maximum or `(min, max)` pair of `k` draws.
pub fn d2_log_extreme<M>(model: &M, point: ExtremePoint, theta: f64, k: usize) -> Result<f64>
where
    M: DistributionModel + ?Sized,
{
    let km1 = k as f64 - 1.0;
    match point {
        ExtremePoint::Min(y) => {
            let d = model.theta_derivatives(y, theta)?;
            let surv = model.sf(y, theta)?;
            let s = d.cdf_d1 / surv;
            // log(1 - F) has θ-curvature -F''/(1-F) - (F'/(1-F))²
            Ok(km1 * (-d.cdf_d2 / surv - s * s) + d2_log_pdf(model, y, theta)?)
        }
        ExtremePoint::Max(y) => {
            let d = model.theta_derivatives(y, theta)?;
            let cdf = model.cdf(y, theta)?;
            let s = d.cdf_d1 / cdf;
            Ok(km1 * (d.cdf_d2 / cdf - s * s) + d2_log_pdf(model, y, theta)?)
        }
        ExtremePoint::Joint { y_min, y_max } => {
            let mut total = d2_log_pdf(model, y_min, theta)? + d2_log_pdf(model, y_max, theta)?;
            if k > 2 {
                let da = model.theta_derivatives(y_min, theta)?;
                let db = model.theta_derivatives(y_max, theta)?;
                let mass = model.mass_between(y_min, y_max, theta)?;
                let s = (db.cdf_d1 - da.cdf_d1) / mass;
                total += (k as f64 - 2.0) * ((db.cdf_d2 - da.cdf_d2) / mass - s * s);
            }
            Ok(total)
        }
    }
}

// ---------------------------------------------------------------------------
// Full and partial samples
// ---------------------------------------------------------------------------

const TAIL: f64 = 1e-14;
const REL_TOL_1D: f64 = 1e-8;
const REL_TOL_2D: f64 = 1e-6;
const MAX_INTERVALS: usize = 4000;

/// Information of one raw sample, `E[-∂²log f/∂θ²]`, by quadrature.
fn unit_information_quadrature<M>(model: &M, theta: f64) -> Result<(f64, f64)>
where
    M: DistributionModel + ?Sized,
{
    let lo = model.quantile(TAIL, theta)?;
    let hi = model.survival_quantile(TAIL, theta)?;
    let r = integrate(
        |x| Ok(-d2_log_pdf(model, x, theta)? * model.pdf(x, theta)?),
        lo,
        hi,
        REL_TOL_1D,
        1e-300,
        MAX_INTERVALS,
    )?;
    Ok((r.value, r.error))
}

fn unit_information<M>(model: &M, theta: f64) -> Result<(f64, Method, Option<f64>)>
where
    M: DistributionModel + ?Sized,
{
    if is_exponential(model) {
        Ok((1.0 / (theta * theta), Method::ClosedForm, None))
    } else {
        let (v, e) = unit_information_quadrature(model, theta)?;
        Ok((v, Method::Quadrature, Some(e * v.signum().abs())))
    }
}

/// Information of all `n·k` raw samples.
pub fn fim_opt<M>(model: &M, theta: f64, n: usize, k: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_count(n)?;
    check_group_size(k, 1)?;
    let (unit, method, err) = unit_information(model, theta)?;
    let scale = (n * k) as f64;
    Ok(FimValue {
        variant: Variant::Opt,
        method,
        value: scale * unit,
        n,
        k,
        theta,
        low_accuracy: false,
        error_bound: err.map(|e| scale * e),
    })
}

/// Information of all `n·k` raw samples, always by quadrature.
pub fn fim_opt_quadrature<M>(model: &M, theta: f64, n: usize, k: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_count(n)?;
    check_group_size(k, 1)?;
    let (unit, err) = unit_information_quadrature(model, theta)?;
    let scale = (n * k) as f64;
    Ok(FimValue {
        variant: Variant::Opt,
        method: Method::Quadrature,
        value: scale * unit,
        n,
        k,
        theta,
        low_accuracy: false,
        error_bound: Some(scale * err),
    })
}

/// Information of `l` retained samples from each of `n` intervals.
pub fn fim_partial<M>(model: &M, theta: f64, n: usize, k: usize, l: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_count(n)?;
    if !(1..=k).contains(&l) {
        return Err(Error::Parameter(format!("retained count L must lie in [1, {k}], got {l}")));
    }
    let (unit, method, err) = unit_information(model, theta)?;
    let scale = (n * l) as f64;
    Ok(FimValue {
        variant: Variant::Partial(l),
        method,
        value: scale * unit,
        n,
        k,
        theta,
        low_accuracy: false,
        error_bound: err.map(|e| scale * e),
    })
}

/// Exact minimum-based information for the exponential family, `N/θ²`.
///
/// Exponential minima are themselves exponential with mean `θ/K`, so one
/// minimum per interval is worth exactly one raw sample whatever `K` is.
pub fn fim_min_exact<M>(model: &M, theta: f64, n: usize, k: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_count(n)?;
    check_group_size(k, 1)?;
    if !is_exponential(model) {
        return Err(Error::Unsupported(format!(
            "closed-form minimum information is only available for the exponential family, not {}",
            model.name()
        )));
    }
    Ok(FimValue {
        variant: Variant::Min,
        method: Method::ClosedForm,
        value: n as f64 / (theta * theta),
        n,
        k,
        theta,
        low_accuracy: false,
        error_bound: None,
    })
}

// ---------------------------------------------------------------------------
// Characteristic-value plug-in approximations
// ---------------------------------------------------------------------------

/// Per-interval plug-in information for the exponential family, in units of `1/θ²`.
fn exponential_plugin_unit(kind: Extreme, k: usize) -> f64 {
    let kf = k as f64;
    let ln_k = kf.ln();
    // ln(K/(K-1)) without cancellation
    let ln_ratio = -(-1.0 / kf).ln_1p();
    match kind {
        Extreme::Min => 2.0 * kf * ln_ratio - 1.0,
        Extreme::Max => kf * ln_k * ln_k / (kf - 1.0) - 1.0,
        Extreme::Mix => {
            let spread = ln_k - ln_ratio;
            2.0 * ((kf - 1.0) * spread * spread / (2.0 * (kf - 2.0)) + kf * ln_ratio - 1.0)
        }
    }
}

fn plugin_point<M>(model: &M, kind: Extreme, theta: f64, k: usize) -> Result<ExtremePoint>
where
    M: DistributionModel + ?Sized,
{
    let cv = characteristic_values(model, theta, k)?;
    Ok(match kind {
        Extreme::Min => ExtremePoint::Min(cv.mu1),
        Extreme::Max => ExtremePoint::Max(cv.mu_k),
        Extreme::Mix => ExtremePoint::Joint { y_min: cv.mu1, y_max: cv.mu_k },
    })
}

fn plugin_value(kind: Extreme, value: f64, theta: f64, n: usize, k: usize) -> FimValue {
    FimValue {
        variant: kind.into(),
        method: Method::PlugInApprox,
        value,
        n,
        k,
        theta,
        low_accuracy: k < LOW_ACCURACY_K,
        error_bound: None,
    }
}

fn check_plugin_args(kind: Extreme, theta: f64, n: usize, k: usize) -> Result<()> {
    check_theta(theta)?;
    check_count(n)?;
    check_group_size(k, kind.min_group_size())
}

/// Plug-in approximation `N·g(μ, θ)` with `g = -∂²log f_extreme/∂θ²`.
///
/// Uses the exponential closed forms when available. A non-positive result is
/// returned as-is; check [`FimValue::is_breakdown`].
pub fn fim_plugin<M>(model: &M, kind: Extreme, theta: f64, n: usize, k: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_plugin_args(kind, theta, n, k)?;
    if is_exponential(model) {
        let value = n as f64 * exponential_plugin_unit(kind, k) / (theta * theta);
        return Ok(plugin_value(kind, value, theta, n, k));
    }
    fim_plugin_generic(model, kind, theta, n, k)
}

/// Plug-in approximation through θ-derivatives of the model, ignoring closed forms.
pub fn fim_plugin_generic<M>(model: &M, kind: Extreme, theta: f64, n: usize, k: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_plugin_args(kind, theta, n, k)?;
    let point = plugin_point(model, kind, theta, k)?;
    let value = -(n as f64) * d2_log_extreme(model, point, theta, k)?;
    Ok(plugin_value(kind, value, theta, n, k))
}

// ---------------------------------------------------------------------------
// Quadrature (exact up to tolerance)
// ---------------------------------------------------------------------------

/// Truncation window `[lo, hi]` holding all but `2·TAIL` of an extreme's mass.
fn extreme_window<M>(model: &M, max: bool, theta: f64, k: usize) -> Result<(f64, f64)>
where
    M: DistributionModel + ?Sized,
{
    let inv_k = 1.0 / k as f64;
    // P{all K draws ≤ x} = F^K and P{all K draws > x} = (1-F)^K
    let tiny = TAIL.powf(inv_k);
    let near_one = -(inv_k * (-TAIL).ln_1p()).exp_m1();
    if max {
        Ok((model.quantile(tiny, theta)?, model.survival_quantile(near_one, theta)?))
    } else {
        Ok((model.quantile(near_one, theta)?, model.survival_quantile(tiny, theta)?))
    }
}

/// Exact information `N·E[-∂²log f_extreme/∂θ²]` by numerical integration.
///
/// One-dimensional for the minimum and maximum (relative tolerance `1e-8`);
/// iterated over `{y_min < y_max}` for the pair, integrating `y_max` from
/// `y_min` upward inside each outer `y_min` node (relative tolerance `1e-6`).
pub fn fim_quadrature<M>(model: &M, kind: Extreme, theta: f64, n: usize, k: usize) -> Result<FimValue>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_count(n)?;
    check_group_size(k, 2)?;

    let r = match kind {
        Extreme::Min | Extreme::Max => {
            let max = kind == Extreme::Max;
            let (lo, hi) = extreme_window(model, max, theta, k)?;
            let point = |y| if max { ExtremePoint::Max(y) } else { ExtremePoint::Min(y) };
            integrate(
                |y| {
                    let p = point(y);
                    let dens = extreme_pdf(model, p, theta, k)?;
                    if dens == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(-d2_log_extreme(model, p, theta, k)? * dens)
                },
                lo,
                hi,
                REL_TOL_1D,
                1e-300,
                MAX_INTERVALS,
            )?
        }
        Extreme::Mix => {
            let (min_lo, min_hi) = extreme_window(model, false, theta, k)?;
            let (_, max_hi) = extreme_window(model, true, theta, k)?;
            integrate(
                |a| {
                    if a >= max_hi {
                        return Ok(0.0);
                    }
                    let inner = integrate(
                        |b| {
                            let p = ExtremePoint::Joint { y_min: a, y_max: b };
                            let dens = extreme_pdf(model, p, theta, k)?;
                            if dens == 0.0 {
                                return Ok(0.0);
                            }
                            Ok(-d2_log_extreme(model, p, theta, k)? * dens)
                        },
                        a,
                        max_hi,
                        0.01 * REL_TOL_1D,
                        1e-300,
                        MAX_INTERVALS,
                    )?;
                    Ok(inner.value)
                },
                min_lo,
                min_hi,
                REL_TOL_2D,
                1e-300,
                MAX_INTERVALS,
            )?
        }
    };

    let scale = n as f64;
    Ok(FimValue {
        variant: kind.into(),
        method: Method::Quadrature,
        value: scale * r.value,
        n,
        k,
        theta,
        low_accuracy: false,
        error_bound: Some(scale * r.error),
    })
}

// ---------------------------------------------------------------------------
// A-statistic
// ---------------------------------------------------------------------------

/// Which extreme carries more plug-in information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    MaxFavored,
    MinFavored,
    Balanced,
}

/// Per-interval difference of plug-in informations, max minus min.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AStatistic {
    pub value: f64,
    pub sign_class: SignClass,
    pub k: usize,
    pub theta: f64,
    /// Per-interval plug-in informations the sign is compared against.
    pub j_plugin_min: f64,
    pub j_plugin_max: f64,
}

/// Relative tolerance under which `A` counts as zero.
pub const BALANCE_TOL: f64 = 1e-9;

/// Evaluates `A` from the CDF, density and their θ-derivatives at `μ₁` and `μ_K`.
///
/// With `F_m, f_m` taken at `μ₁` and `F_M, f_M` at `μ_K` (primes are θ-derivatives):
///
/// ```text
/// A = (K-1)·[ -F_m'²/(1-F_m)² - F_m''/(1-F_m) + F_M'²/F_M² - F_M''/F_M ]
///     + f_m''/f_m - f_M''/f_M + f_M'²/f_M² - f_m'²/f_m²
/// ```
///
/// `A > 0` means the maxima are the more informative extreme.
pub fn a_statistic<M>(model: &M, theta: f64, k: usize) -> Result<AStatistic>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    check_group_size(k, 2)?;
    let cv = characteristic_values(model, theta, k)?;

    let dm = model.theta_derivatives(cv.mu1, theta)?;
    let dmx = model.theta_derivatives(cv.mu_k, theta)?;
    let surv_m = model.sf(cv.mu1, theta)?;
    let cdf_big = model.cdf(cv.mu_k, theta)?;
    let f_m = model.pdf(cv.mu1, theta)?;
    let f_big = model.pdf(cv.mu_k, theta)?;

    let cdf_terms =
        -(dm.cdf_d1 / surv_m).powi(2) - dm.cdf_d2 / surv_m + (dmx.cdf_d1 / cdf_big).powi(2) - dmx.cdf_d2 / cdf_big;
    let pdf_terms = dm.pdf_d2 / f_m - dmx.pdf_d2 / f_big + (dmx.pdf_d1 / f_big).powi(2) - (dm.pdf_d1 / f_m).powi(2);
    let value = (k as f64 - 1.0) * cdf_terms + pdf_terms;

    let j_min = fim_plugin(model, Extreme::Min, theta, 1, k)?.value;
    let j_max = fim_plugin(model, Extreme::Max, theta, 1, k)?.value;
    let tol = BALANCE_TOL * (1.0 + (j_max - j_min).abs());
    let sign_class = if value.abs() < tol {
        SignClass::Balanced
    } else if value > 0.0 {
        SignClass::MaxFavored
    } else {
        SignClass::MinFavored
    };

    Ok(AStatistic { value, sign_class, k, theta, j_plugin_min: j_min, j_plugin_max: j_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Exponential, SymmetricUniform, Uniform};

    const TABLE_K: [usize; 6] = [5, 10, 25, 50, 100, 1000];

    #[test]
    fn opt_and_partial_examples() {
        assert_eq!(fim_opt(&Exponential, 1.0, 100, 25).unwrap().value, 2500.0);
        assert_eq!(fim_opt(&Exponential, 2.0, 1, 1).unwrap().value, 0.25);
        assert_eq!(fim_partial(&Exponential, 1.0, 100, 25, 1).unwrap().value, 100.0);
        assert!((fim_partial(&Exponential, 0.5, 10, 3, 3).unwrap().value - 120.0).abs() < 1e-12);
        let opt = fim_opt(&Exponential, 1.7, 13, 9).unwrap();
        let full = fim_partial(&Exponential, 1.7, 13, 9, 9).unwrap();
        assert_eq!(opt.value, full.value);
        assert!(matches!(fim_partial(&Exponential, 1.0, 1, 5, 0), Err(Error::Parameter(_))));
        assert!(matches!(fim_partial(&Exponential, 1.0, 1, 5, 6), Err(Error::Parameter(_))));
    }

    #[test]
    fn opt_quadrature_matches_closed_form() {
        for theta in [0.1, 1.0, 10.0] {
            let q = fim_opt_quadrature(&Exponential, theta, 3, 7).unwrap();
            let c = fim_opt(&Exponential, theta, 3, 7).unwrap();
            assert_eq!(q.method, Method::Quadrature);
            assert!((q.value / c.value - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn min_exact_examples() {
        for k in [1, 2, 10, 1000] {
            assert_eq!(fim_min_exact(&Exponential, 1.0, 100, k).unwrap().value, 100.0);
        }
        assert!((fim_min_exact(&Exponential, 10.0, 1, 5).unwrap().value - 0.01).abs() < 1e-18);
        for (theta, n) in [(0.3, 4), (2.0, 100), (9.0, 1)] {
            let m = fim_min_exact(&Exponential, theta, n, 25).unwrap().value;
            let l1 = fim_partial(&Exponential, theta, n, 25, 1).unwrap().value;
            assert_eq!(m, l1);
        }
        assert!(matches!(fim_min_exact(&Uniform, 1.0, 1, 5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn plugin_table_values() {
        let max = [2.238, 4.891, 9.793, 14.616, 20.422, 46.765];
        let mix = [2.794, 5.539, 10.580, 15.482, 21.341, 47.752];
        for (i, &k) in TABLE_K.iter().enumerate() {
            let jmax = fim_plugin(&Exponential, Extreme::Max, 1.0, 1, k).unwrap();
            let jmix = fim_plugin(&Exponential, Extreme::Mix, 1.0, 1, k).unwrap();
            assert!((jmax.l_equivalent() - max[i]).abs() < 0.001, "K={k}");
            assert!((jmix.l_equivalent() - mix[i]).abs() < 0.001, "K={k}");
            assert_eq!(jmax.low_accuracy, k < 15);
        }
    }

    #[test]
    fn plugin_min_exponential() {
        let j = fim_plugin(&Exponential, Extreme::Min, 1.0, 1, 10).unwrap().value;
        assert!((j - (20.0 * (10.0f64 / 9.0).ln() - 1.0)).abs() < 1e-12);
        assert!((j - 1.1072).abs() < 1e-4);
        // finite differences of the minimum's log-density at μ₁
        let mu1 = (10.0f64 / 9.0).ln();
        let logf = |t: f64| extreme_pdf(&Exponential, ExtremePoint::Min(mu1), t, 10).unwrap().ln();
        let h = 1e-4;
        let fd = -(logf(1.0 + h) - 2.0 * logf(1.0) + logf(1.0 - h)) / (h * h);
        assert!((fd - j).abs() < 1e-5);
    }

    #[test]
    fn generic_plugin_reproduces_closed_forms() {
        for k in 5..=1000 {
            for kind in [Extreme::Min, Extreme::Max, Extreme::Mix] {
                let c = fim_plugin(&Exponential, kind, 1.0, 1, k).unwrap().value;
                let g = fim_plugin_generic(&Exponential, kind, 1.0, 1, k).unwrap().value;
                assert!((c - g).abs() <= 1e-9 * c.abs().max(1.0), "{kind:?} K={k}: {c} vs {g}");
            }
        }
    }

    #[test]
    fn plugin_group_size_limits() {
        assert!(matches!(fim_plugin(&Exponential, Extreme::Max, 1.0, 1, 1), Err(Error::Parameter(_))));
        assert!(matches!(fim_plugin(&Exponential, Extreme::Mix, 1.0, 1, 2), Err(Error::Parameter(_))));
        assert!(fim_plugin(&Exponential, Extreme::Mix, 1.0, 1, 3).is_ok());
    }

    #[test]
    fn plugin_breakdown_is_flagged() {
        // U(0, θ): log f_max = const - K log θ, so the plug-in "information" is -K/θ²
        let j = fim_plugin(&Uniform, Extreme::Max, 1.0, 1, 4).unwrap();
        assert!((j.value + 4.0).abs() < 1e-12);
        assert!(j.is_breakdown());
        assert!(matches!(j.crlb(), Err(Error::UndefinedBound(_))));
    }

    #[test]
    fn quadrature_examples() {
        let j5 = fim_quadrature(&Exponential, Extreme::Max, 1.0, 1, 5).unwrap().value;
        let j100 = fim_quadrature(&Exponential, Extreme::Max, 1.0, 1, 100).unwrap().value;
        // frozen from an independent mpmath quadrature (30 digits)
        assert!((j5 - 3.662037037).abs() < 1e-7, "{j5}");
        assert!((j100 - 19.45445594).abs() < 1e-6, "{j100}");
        let jmin = fim_quadrature(&Exponential, Extreme::Min, 1.0, 1, 25).unwrap().value;
        assert!((jmin - 1.0).abs() < 1e-6);
    }

    #[test]
    fn quadrature_mix_reference_values() {
        // frozen from scipy dblquad on the explicit exponential integrand
        for (k, expect) in [(3, 2.8082276126), (5, 4.1111111111), (10, 6.4722995627), (25, 10.8131680292)] {
            let j = fim_quadrature(&Exponential, Extreme::Mix, 1.0, 1, k).unwrap();
            assert!((j.value / expect - 1.0).abs() < 1e-6, "K={k}: {}", j.value);
        }
        // K = 2: the pair is the whole sample
        let j2 = fim_quadrature(&Exponential, Extreme::Mix, 1.0, 1, 2).unwrap().value;
        assert!((j2 - 2.0).abs() < 1e-6);
    }

    #[test]
    fn quadrature_gap_to_plugin_narrows() {
        let gap = |k| {
            let q = fim_quadrature(&Exponential, Extreme::Max, 1.0, 1, k).unwrap().value;
            let p = fim_plugin(&Exponential, Extreme::Max, 1.0, 1, k).unwrap().value;
            ((q - p) / q).abs()
        };
        assert!(gap(30) < gap(20) && gap(20) < gap(10));
    }

    #[test]
    fn crlb_and_l_equivalent() {
        let j = FimValue {
            variant: Variant::Opt,
            method: Method::ClosedForm,
            value: 100.0,
            n: 1,
            k: 1,
            theta: 1.0,
            low_accuracy: false,
            error_bound: None,
        };
        assert_eq!(crlb(&j).unwrap(), 0.01);
        assert_eq!(crlb(&FimValue { value: 0.0, ..j }), Err(Error::UndefinedBound(0.0)));
        assert_eq!(fim_min_exact(&Exponential, 1.0, 100, 25).unwrap().crlb().unwrap(), 1e-2);
        assert_eq!(fim_opt(&Exponential, 1.0, 1, 1000).unwrap().l_equivalent(), 1000.0);
        let d = fim_plugin(&Exponential, Extreme::Mix, 1.0, 1, 10).unwrap().l_equivalent()
            - fim_plugin(&Exponential, Extreme::Max, 1.0, 1, 10).unwrap().l_equivalent();
        assert!((d - 0.648).abs() < 0.001);
        assert!((fim_plugin(&Exponential, Extreme::Max, 1.0, 1, 50).unwrap().l_equivalent() - 14.616).abs() < 0.001);
    }

    #[test]
    fn crlb_ordering_at_k25() {
        let e = &Exponential;
        let opt = fim_opt(e, 1.0, 100, 25).unwrap().crlb().unwrap();
        let mix = fim_plugin(e, Extreme::Mix, 1.0, 100, 25).unwrap().crlb().unwrap();
        let max = fim_plugin(e, Extreme::Max, 1.0, 100, 25).unwrap().crlb().unwrap();
        let min = fim_min_exact(e, 1.0, 100, 25).unwrap().crlb().unwrap();
        assert!(opt < mix && mix < max && max < min);
    }

    #[test]
    fn information_ordering_and_delta_bound() {
        let e = &Exponential;
        let mut prev_delta = 0.0;
        let mut prev_max = 0.0;
        for k in 5..=1000 {
            let min = fim_min_exact(e, 1.0, 1, k).unwrap().value;
            let max = fim_plugin(e, Extreme::Max, 1.0, 1, k).unwrap().value;
            let mix = fim_plugin(e, Extreme::Mix, 1.0, 1, k).unwrap().value;
            let opt = fim_opt(e, 1.0, 1, k).unwrap().value;
            assert!(min <= max && max <= mix && mix <= opt, "K={k}");
            assert!(max > prev_max);
            let delta = mix - max;
            assert!(delta <= 1.0);
            if TABLE_K.contains(&k) {
                assert!(delta >= prev_delta);
                prev_delta = delta;
            }
            prev_max = max;
        }
        for k in 3..5 {
            let d = fim_plugin(e, Extreme::Mix, 1.0, 1, k).unwrap().value
                - fim_plugin(e, Extreme::Max, 1.0, 1, k).unwrap().value;
            assert!(d <= 1.0);
        }
    }

    #[test]
    fn exponential_scale_law() {
        let e = &Exponential;
        let k = 25;
        let at = |theta: f64| -> Vec<f64> {
            vec![
                fim_opt(e, theta, 7, k).unwrap().value,
                fim_partial(e, theta, 7, k, 3).unwrap().value,
                fim_min_exact(e, theta, 7, k).unwrap().value,
                fim_plugin(e, Extreme::Min, theta, 7, k).unwrap().value,
                fim_plugin(e, Extreme::Max, theta, 7, k).unwrap().value,
                fim_plugin(e, Extreme::Mix, theta, 7, k).unwrap().value,
                fim_plugin_generic(e, Extreme::Max, theta, 7, k).unwrap().value,
            ]
        };
        let base = at(1.0);
        for theta in [0.1, 10.0] {
            for (a, b) in at(theta).iter().zip(&base) {
                assert!((a * theta * theta - b).abs() <= 1e-12 * b.abs(), "θ={theta}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn a_statistic_equals_plugin_difference() {
        // independent route: closed-form plug-ins, not the derivative assembly
        for model in [&Exponential as &dyn DistributionModel, &Uniform, &SymmetricUniform] {
            for k in 3..=100 {
                for theta in [0.5, 1.0, 4.0] {
                    let a = a_statistic(model, theta, k).unwrap();
                    let diff = fim_plugin(model, Extreme::Max, theta, 1, k).unwrap().value
                        - fim_plugin(model, Extreme::Min, theta, 1, k).unwrap().value;
                    assert!((a.value - diff).abs() <= 1e-9 * diff.abs().max(1.0), "{} K={k}", model.name());
                    let expected = match a.sign_class {
                        SignClass::MaxFavored => 1.0,
                        SignClass::MinFavored => -1.0,
                        SignClass::Balanced => 0.0,
                    };
                    if expected != 0.0 {
                        assert_eq!(diff.signum(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn a_statistic_exponential_values() {
        // frozen from sympy: symbolic -∂²log f_max at μ_K minus -∂²log f_min at μ₁
        let a10 = a_statistic(&Exponential, 1.0, 10).unwrap();
        assert!((a10.value - 3.78378758737503).abs() < 1e-12);
        assert_eq!(a10.sign_class, SignClass::MaxFavored);
        let a100 = a_statistic(&Exponential, 1.0, 100).unwrap();
        assert!((a100.value - 19.4117433766872).abs() < 1e-11);
        assert_eq!(a100.sign_class, SignClass::MaxFavored);
        // at K = 3 the plug-in favours the minimum
        let a3 = a_statistic(&Exponential, 1.0, 3).unwrap();
        assert!((a3.value + 0.622367207430113).abs() < 1e-12);
        assert_eq!(a3.sign_class, SignClass::MinFavored);
    }

    #[test]
    fn a_statistic_uniform_families() {
        for k in [2, 3, 4, 10, 100, 1000] {
            for theta in [0.5, 1.0, 3.0] {
                let sym = a_statistic(&SymmetricUniform, theta, k).unwrap();
                assert_eq!(sym.sign_class, SignClass::Balanced, "K={k}");
                assert!(sym.value.abs() < 1e-9);
            }
            // U(0, θ): the symmetry centre θ/2 moves with θ, so A ≠ 0
            let a = a_statistic(&Uniform, 1.0, k).unwrap();
            let kf = k as f64;
            let expected = if k == 2 { -3.0 - 1.0 } else { -(kf + 1.0 + 1.0 / (kf - 1.0)) };
            assert!((a.value - expected).abs() < 1e-9 * kf, "K={k}: {}", a.value);
            assert_eq!(a.sign_class, SignClass::MinFavored);
        }
    }

    #[test]
    fn variant_round_trip() {
        for v in [Variant::Opt, Variant::Partial(3), Variant::Min, Variant::Max, Variant::Mix] {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert!("partial:x".parse::<Variant>().is_err());
    }
}
