use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution or model parameter is outside its domain (θ ≤ 0, K = 0, L > K, ...).
    #[error("parameter out of domain: {0}")]
    Parameter(String),

    /// A point argument is outside the region where the quantity is defined.
    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Input data has the wrong shape (empty, ragged, mismatched lengths).
    #[error("shape error: {0}")]
    Shape(String),

    /// Data is valid in shape but yields a degenerate likelihood.
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// The requested computation is not available for this model.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Root search for a characteristic value failed.
    #[error("root solver failed: {message} (bracket [{lower}, {upper}])")]
    Solver { message: String, lower: f64, upper: f64 },

    /// Adaptive quadrature did not reach its tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}, target {target}")]
    Quadrature { estimate: f64, error_bound: f64, target: f64 },

    /// The one-dimensional likelihood maximiser failed.
    #[error("optimizer failed after {iterations} iterations: {message} (bracket [{lower}, {upper}])")]
    Optimizer { message: String, iterations: usize, lower: f64, upper: f64 },

    /// Information is zero or negative, so the Cramer-Rao bound does not exist.
    #[error("Cramer-Rao bound undefined: information is {0}")]
    UndefinedBound(f64),

    /// A Monte-Carlo trial failed; `completed_k` lists group sizes finished before the failure.
    #[error("trial {trial_index} at K={k} failed: {source}")]
    Trial {
        k: usize,
        trial_index: usize,
        completed_k: Vec<usize>,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("theta must be positive and finite, got {theta}")))
    }
}

pub(crate) fn check_group_size(k: usize, min: usize) -> Result<()> {
    if k >= min {
        Ok(())
    } else {
        Err(Error::Parameter(format!("group size K must be at least {min}, got {k}")))
    }
}
