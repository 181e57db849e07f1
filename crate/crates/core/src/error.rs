use core::fmt;

use crate::quadrature::IntegrationResult;
use crate::solver::RootResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    Domain {
        operation: &'static str,
        requirement: &'static str,
        value: f64,
    },
    /// The quadrature evaluation budget ran out before the tolerance was met.
    BudgetExceeded { partial: IntegrationResult },
    /// The integrand produced a non-finite value at an interior node.
    NonFiniteIntegrand { at: f64 },
    /// `f(lo)` and `f(hi)` do not have opposite signs.
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// Bracket expansion did not find a sign change.
    BracketNotFound { steps: u32 },
    /// Root iteration hit its cap.
    NoConvergence { last: RootResult },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(operation: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            operation,
            requirement,
            value,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                operation,
                requirement,
                value,
            } => write!(f, "{operation}: requires {requirement}, got {value}"),
            Error::BudgetExceeded { partial } => write!(
                f,
                "quadrature budget exhausted after {} evaluations (partial value {:e}, error estimate {:e})",
                partial.n_evals, partial.value, partial.abs_error_estimate
            ),
            Error::NonFiniteIntegrand { at } => {
                write!(f, "integrand is not finite at interior point {at:e}")
            }
            Error::NoSignChange { lo, hi, f_lo, f_hi } => {
                write!(f, "no sign change on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")
            }
            Error::BracketNotFound { steps } => {
                write!(f, "no sign change found after {steps} bracket expansions")
            }
            Error::NoConvergence { last } => write!(
                f,
                "root iteration did not converge after {} iterations (last {:e}, residual {:e})",
                last.iterations, last.root, last.residual
            ),
        }
    }
}

impl core::error::Error for Error {}
