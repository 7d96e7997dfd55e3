use alloc::boxed::Box;
use core::fmt;

use crate::dynamics::Trajectory;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its physical domain.
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    NonFinite { name: &'static str },
    /// The response denominator vanished (relative to its own terms) at this
    /// detuning.
    Pole { detuning: f64, magnitude: f64 },
    /// A ratio with an identically zero reference, e.g. chirality with both
    /// decay rates zero or isolation with a zero transmission.
    Undefined(&'static str),
    /// The dense steady-state system has no unique solution.
    Singular,
    /// An amplitude exceeded the divergence bound during integration.
    Divergence { time: f64 },
    /// Integration reached `t_max` without meeting the convergence test.
    Timeout { trajectory: Box<Trajectory> },
}

impl Error {
    /// Numerical failures (as opposed to invalid input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::Undefined(_)
                | Error::Singular
                | Error::Divergence { .. }
                | Error::Timeout { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => write!(f, "invalid `{name}`: {reason}"),
            Error::NonFinite { name } => write!(f, "`{name}` is not finite"),
            Error::Pole {
                detuning,
                magnitude,
            } => write!(
                f,
                "response pole at detuning {detuning:e} (|denominator| = {magnitude:e})"
            ),
            Error::Undefined(what) => write!(f, "{what} is undefined"),
            Error::Singular => f.write_str("steady-state system is singular"),
            Error::Divergence { time } => write!(f, "integration diverged at t = {time:e}"),
            Error::Timeout { trajectory } => write!(
                f,
                "integration did not converge by t = {:e}",
                trajectory.final_time
            ),
        }
    }
}

impl core::error::Error for Error {}
