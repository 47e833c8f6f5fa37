//! Fisher information, Cramer-Rao bounds and maximum-likelihood estimation
//! for data reduced to per-interval minima and maxima.
//!
//! Each of `N` intervals holds `K` iid draws from a one-parameter family. The
//! crate measures how much information about θ survives when only the
//! smallest and/or largest draw of each interval is kept.
//!
//! ```
//! use extremefim::distributions::Exponential;
//! use extremefim::fim::{fim_min_exact, fim_opt, fim_plugin, Extreme};
//!
//! let (theta, n, k) = (1.0, 100, 25);
//! let full = fim_opt(&Exponential, theta, n, k)?;
//! let max = fim_plugin(&Exponential, Extreme::Max, theta, n, k)?;
//! let min = fim_min_exact(&Exponential, theta, n, k)?;
//! assert!(min.value < max.value && max.value < full.value);
//! # Ok::<(), extremefim::Error>(())
//! ```
//!
//! Modules, bottom up:
//!
//! * [`distributions`]: the model trait and built-in families
//! * [`extremes`]: extreme-value densities, characteristic values, data reduction
//! * [`fim`]: information by closed form, plug-in approximation or quadrature
//! * [`estimators`]: maximum-likelihood estimators of the exponential mean
//! * [`montecarlo`]: seeded simulation studies
//!
//! [`quadrature`] and [`optimize`] hold the numerical kernels.

pub mod distributions;
pub mod error;
pub mod estimators;
pub mod extremes;
pub mod fim;
pub mod montecarlo;
pub mod optimize;
pub mod quadrature;

pub use error::{Error, Result};

// Compile and run the guide's code blocks as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/distributions.md")]
    mod distributions {}
    #[doc = include_str!("../../../book/src/extremes.md")]
    mod extremes {}
    #[doc = include_str!("../../../book/src/information.md")]
    mod information {}
    #[doc = include_str!("../../../book/src/estimators.md")]
    mod estimators {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
