use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("gamma function pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("strip violation: evaluation needs half-width {required}, function is analytic only in |Im z| <= {available}")]
    StripViolation { required: f64, available: f64 },

    #[error("argument {re} + {im}i is a branch point")]
    BranchPoint { re: f64, im: f64 },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("quadrature did not converge: refinement changed the result by {change:e}, allowed {allowed:e}")]
    NonConvergence { change: f64, allowed: f64 },

    #[error("evaluation point {re} + {im}i is too close to the real axis (need |Im z| >= {guard})")]
    NearAxis { re: f64, im: f64, guard: f64 },

    #[error("degree {requested} exceeds the supported maximum {max}")]
    DegreeCap { requested: usize, max: usize },

    #[error("recurrence unstable: {digits_lost:.1} digits lost by degree {degree}")]
    Instability { degree: usize, digits_lost: f64 },
}

impl Error {
    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::Instability { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
