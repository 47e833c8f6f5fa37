//! Scalar-parameter distribution families.
//!
//! Every family is indexed by a single positive parameter θ. The exponential
//! family is parameterised by its **mean** θ (rate = 1/θ):
//!
//! ```text
//! f(x; θ) = (1/θ) · exp(-x/θ),   F(x; θ) = 1 - exp(-x/θ),   x ≥ 0
//! ```
//!
//! Two uniform families are provided. [`Uniform`] lives on `[0, θ]`, whose
//! symmetry centre θ/2 moves with the parameter. [`SymmetricUniform`] lives
//! on `[-θ, θ]` and is symmetric about a fixed centre, which is the setting in
//! which minima and maxima carry identical information.
//!
//! Sampling is inverse-CDF only, driven by a ChaCha8 stream seeded from a
//! `u64`, so `(seed, θ, n)` fully determines the output on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_theta, Error, Result};

/// Closed support interval; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }
}

/// First and second θ-partials of the CDF and density at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaDerivatives {
    pub cdf_d1: f64,
    pub cdf_d2: f64,
    pub pdf_d1: f64,
    pub pdf_d2: f64,
    /// `false` when the values come from the finite-difference fallback.
    pub analytic: bool,
}

/// A family of distributions indexed by one positive parameter θ.
///
/// Implementors must supply density, CDF and quantile. The remaining methods
/// have generic defaults; override them when a family has a numerically
/// better closed form (e.g. the exponential survival function).
pub trait DistributionModel: fmt::Debug + Send + Sync {
    fn name(&self) -> &'static str;

    /// Identifies the built-in families so closed forms can be selected.
    fn family(&self) -> Option<Family> {
        None
    }

    fn support(&self, theta: f64) -> Support;

    /// Whether the family's extremes are attracted to a GEV law with shape
    /// below one half.
    fn mda_shape_ok(&self) -> bool;

    fn pdf(&self, x: f64, theta: f64) -> Result<f64>;

    fn cdf(&self, x: f64, theta: f64) -> Result<f64>;

    /// `P{X > x}`.
    fn sf(&self, x: f64, theta: f64) -> Result<f64> {
        Ok((1.0 - self.cdf(x, theta)?).clamp(0.0, 1.0))
    }

    /// `F(b) - F(a)` for `a ≤ b`.
    fn mass_between(&self, a: f64, b: f64, theta: f64) -> Result<f64> {
        Ok((self.cdf(b, theta)? - self.cdf(a, theta)?).max(0.0))
    }

    /// Inverse CDF on `[0, 1]`.
    fn quantile(&self, p: f64, theta: f64) -> Result<f64>;

    /// The `x` with `P{X > x} = q`. Accurate for small `q` when overridden.
    fn survival_quantile(&self, q: f64, theta: f64) -> Result<f64> {
        self.quantile(1.0 - q, theta)
    }

    /// θ-derivatives of CDF and density. The default is a central finite
    /// difference and is tagged `analytic: false`.
    fn theta_derivatives(&self, x: f64, theta: f64) -> Result<ThetaDerivatives> {
        finite_difference_derivatives(self, x, theta)
    }

    /// `n` iid draws by inverse-CDF transform of a seeded uniform stream.
    fn sample(&self, theta: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
        check_theta(theta)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| self.quantile(rng.random::<f64>(), theta)).collect()
    }
}

/// Central finite differences of `cdf` and `pdf` in θ.
///
/// First derivatives use `h = cbrt(ε)·max(1, θ)`; second derivatives use the
/// larger `h = ε^(1/4)·max(1, θ)`, which balances truncation against the
/// `ε/h²` rounding term of the three-point stencil.
pub fn finite_difference_derivatives<M>(model: &M, x: f64, theta: f64) -> Result<ThetaDerivatives>
where
    M: DistributionModel + ?Sized,
{
    check_theta(theta)?;
    let scale = theta.abs().max(1.0);
    // keep θ - h inside the parameter space
    let h1 = (f64::EPSILON.cbrt() * scale).min(0.5 * theta);
    let h2 = (f64::EPSILON.sqrt().sqrt() * scale).min(0.5 * theta);

    let d1 = |g: &dyn Fn(f64) -> Result<f64>| -> Result<f64> { Ok((g(theta + h1)? - g(theta - h1)?) / (2.0 * h1)) };
    let d2 = |g: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
        Ok((g(theta + h2)? - 2.0 * g(theta)? + g(theta - h2)?) / (h2 * h2))
    };
    let cdf = |t: f64| model.cdf(x, t);
    let pdf = |t: f64| model.pdf(x, t);

    Ok(ThetaDerivatives { cdf_d1: d1(&cdf)?, cdf_d2: d2(&cdf)?, pdf_d1: d1(&pdf)?, pdf_d2: d2(&pdf)?, analytic: false })
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("probability must lie in [0, 1], got {p}")))
    }
}

fn check_interior(support: Support, x: f64) -> Result<()> {
    if support.contains_interior(x) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "θ-derivatives need x in the support interior ({}, {}), got {x}",
            support.lower, support.upper
        )))
    }
}

/// Exponential distribution with mean θ (rate 1/θ).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Exponential;

impl DistributionModel for Exponential {
    fn name(&self) -> &'static str {
        "exponential"
    }

    fn family(&self) -> Option<Family> {
        Some(Family::Exponential)
    }

    fn support(&self, _theta: f64) -> Support {
        Support { lower: 0.0, upper: f64::INFINITY }
    }

    fn mda_shape_ok(&self) -> bool {
        // Gumbel domain, shape 0
        true
    }

    fn pdf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(if x < 0.0 { 0.0 } else { (-x / theta).exp() / theta })
    }

    fn cdf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(if x <= 0.0 { 0.0 } else { -(-x / theta).exp_m1() })
    }

    fn sf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(if x <= 0.0 { 1.0 } else { (-x / theta).exp() })
    }

    fn mass_between(&self, a: f64, b: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        let (a, b) = (a.max(0.0), b.max(0.0));
        if b <= a {
            return Ok(0.0);
        }
        // e^{-a/θ} - e^{-b/θ} without cancellation
        Ok((-a / theta).exp() * -(-(b - a) / theta).exp_m1())
    }

    fn quantile(&self, p: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        check_probability(p)?;
        Ok(-theta * (-p).ln_1p())
    }

    fn survival_quantile(&self, q: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        check_probability(q)?;
        Ok(-theta * q.ln())
    }

    fn theta_derivatives(&self, x: f64, theta: f64) -> Result<ThetaDerivatives> {
        check_theta(theta)?;
        check_interior(self.support(theta), x)?;
        let e = (-x / theta).exp();
        let t2 = theta * theta;
        let t3 = t2 * theta;
        let t4 = t2 * t2;
        let f = e / theta;
        Ok(ThetaDerivatives {
            cdf_d1: -x / t2 * e,
            cdf_d2: e * (2.0 * x / t3 - x * x / t4),
            pdf_d1: e * (x - theta) / t3,
            pdf_d2: f * ((x - theta).powi(2) / t4 + (theta - 2.0 * x) / t3),
            analytic: true,
        })
    }
}

/// Uniform distribution on `[0, θ]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Uniform;

impl DistributionModel for Uniform {
    fn name(&self) -> &'static str {
        "uniform"
    }

    fn family(&self) -> Option<Family> {
        Some(Family::Uniform)
    }

    fn support(&self, theta: f64) -> Support {
        Support { lower: 0.0, upper: theta }
    }

    fn mda_shape_ok(&self) -> bool {
        // Weibull domain, shape -1
        true
    }

    fn pdf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(if (0.0..=theta).contains(&x) { 1.0 / theta } else { 0.0 })
    }

    fn cdf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok((x / theta).clamp(0.0, 1.0))
    }

    fn sf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(((theta - x) / theta).clamp(0.0, 1.0))
    }

    fn quantile(&self, p: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        check_probability(p)?;
        Ok(p * theta)
    }

    fn survival_quantile(&self, q: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        check_probability(q)?;
        Ok((1.0 - q) * theta)
    }

    fn theta_derivatives(&self, x: f64, theta: f64) -> Result<ThetaDerivatives> {
        check_theta(theta)?;
        check_interior(self.support(theta), x)?;
        let t2 = theta * theta;
        let t3 = t2 * theta;
        Ok(ThetaDerivatives {
            cdf_d1: -x / t2,
            cdf_d2: 2.0 * x / t3,
            pdf_d1: -1.0 / t2,
            pdf_d2: 2.0 / t3,
            analytic: true,
        })
    }
}

/// Uniform distribution on `[-θ, θ]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SymmetricUniform;

impl DistributionModel for SymmetricUniform {
    fn name(&self) -> &'static str {
        "symmetric-uniform"
    }

    fn family(&self) -> Option<Family> {
        Some(Family::SymmetricUniform)
    }

    fn support(&self, theta: f64) -> Support {
        Support { lower: -theta, upper: theta }
    }

    fn mda_shape_ok(&self) -> bool {
        true
    }

    fn pdf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(if (-theta..=theta).contains(&x) { 0.5 / theta } else { 0.0 })
    }

    fn cdf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(((x + theta) / (2.0 * theta)).clamp(0.0, 1.0))
    }

    fn sf(&self, x: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(((theta - x) / (2.0 * theta)).clamp(0.0, 1.0))
    }

    fn quantile(&self, p: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        check_probability(p)?;
        Ok(theta * (2.0 * p - 1.0))
    }

    fn survival_quantile(&self, q: f64, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        check_probability(q)?;
        Ok(theta * (1.0 - 2.0 * q))
    }

    fn theta_derivatives(&self, x: f64, theta: f64) -> Result<ThetaDerivatives> {
        check_theta(theta)?;
        check_interior(self.support(theta), x)?;
        let t2 = theta * theta;
        let t3 = t2 * theta;
        Ok(ThetaDerivatives {
            cdf_d1: -x / (2.0 * t2),
            cdf_d2: x / t3,
            pdf_d1: -0.5 / t2,
            pdf_d2: 1.0 / t3,
            analytic: true,
        })
    }
}

/// The built-in families, addressable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Exponential,
    Uniform,
    SymmetricUniform,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Exponential, Family::Uniform, Family::SymmetricUniform];

    pub fn model(self) -> &'static dyn DistributionModel {
        match self {
            Family::Exponential => &Exponential,
            Family::Uniform => &Uniform,
            Family::SymmetricUniform => &SymmetricUniform,
        }
    }

    pub fn name(self) -> &'static str {
        self.model().name()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|fam| fam.name().eq_ignore_ascii_case(s)).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            Error::Unsupported(format!("unknown distribution '{s}', supported: {}", names.join(", ")))
        })
    }
}
