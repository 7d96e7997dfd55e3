//! Mean-field model of spinning whispering-gallery resonators coupled to a
//! meandering waveguide at several points.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//!
//! * [`sagnac`]: rotation-induced frequency shift and direction-dependent
//!   propagation phases.
//! * [`single`]: one cavity with `N` coupling points. Collective shifts and
//!   decay rates, chirality and the left/right transmission spectra.
//! * [`two`]: two cavities with two coupling points each, steady-state
//!   amplitudes, transmissions and isolation.
//! * [`dynamics`]: fixed-step RK4 integration of the same equations of
//!   motion, used as a time-domain steady-state oracle.
//! * [`linalg`]: a small dense complex solver backing the generic
//!   steady-state route.
//!
//! All rates share one angular-frequency unit chosen by the caller; phases
//! are radians. Detunings follow `Δ_c = ω_c − ω_l`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
mod error;
pub mod linalg;
pub mod sagnac;
pub mod single;
pub mod two;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Thresholds shared by the closed-form evaluators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Numerics {
    /// Below this value of `|1 − cos θ|` the interference ratios are
    /// evaluated through their regular finite-sum form.
    pub eps_sing: f64,
    /// Relative pole threshold: a denominator smaller than
    /// `eps_den × (magnitude of its terms)` is reported as a pole.
    pub eps_den: f64,
}

impl Numerics {
    pub const DEFAULT_EPS_SING: f64 = 1e-9;
    pub const DEFAULT_EPS_DEN: f64 = 1e-14;
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            eps_sing: Self::DEFAULT_EPS_SING,
            eps_den: Self::DEFAULT_EPS_DEN,
        }
    }
}

/// Which end of the waveguide carries the coherent probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DriveSide {
    Left,
    Right,
}

/// Propagation sense of a resonator mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Cw,
    Ccw,
}

impl Direction {
    /// `+1` for CW, `−1` for CCW; the sign multiplying `Δ_F`.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Cw => 1.0,
            Direction::Ccw => -1.0,
        }
    }
}

/// Relative difference `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = libm::fabs(a).max(libm::fabs(b));
    if scale == 0.0 {
        0.0
    } else {
        libm::fabs(a - b) / scale
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name })
    }
}

pub(crate) fn ensure_nonnegative(name: &'static str, value: f64) -> Result<()> {
    ensure_finite(name, value)?;
    if value < 0.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: "must be non-negative",
        });
    }
    Ok(())
}
