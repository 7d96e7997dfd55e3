//! Sagnac-Fizeau shift of a spinning ring and the direction-dependent
//! waveguide phases it induces.

use core::f64::consts::PI;

use crate::{ensure_finite, Error, Result};

/// Vacuum speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Physical description of a spinning resonator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RingParams {
    pub refractive_index: f64,
    /// Radius in meters.
    pub radius: f64,
    /// Vacuum wavelength in meters.
    pub wavelength: f64,
    /// Angular speed in rad/s; positive means counter-clockwise rotation.
    pub angular_speed: f64,
    /// Material dispersion `dn/dλ` in 1/m.
    pub dn_dlambda: f64,
}

impl RingParams {
    pub fn new(refractive_index: f64, radius: f64, wavelength: f64, angular_speed: f64) -> Self {
        Self {
            refractive_index,
            radius,
            wavelength,
            angular_speed,
            dn_dlambda: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("refractive_index", self.refractive_index)?;
        ensure_finite("radius", self.radius)?;
        ensure_finite("wavelength", self.wavelength)?;
        ensure_finite("angular_speed", self.angular_speed)?;
        ensure_finite("dn_dlambda", self.dn_dlambda)?;
        if self.refractive_index <= 1.0 {
            return Err(Error::InvalidParameter {
                name: "refractive_index",
                reason: "must exceed 1",
            });
        }
        if self.radius <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "radius",
                reason: "must be positive",
            });
        }
        if self.wavelength <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "wavelength",
                reason: "must be positive",
            });
        }
        Ok(())
    }

    /// Resonance angular frequency `ω_c = 2πc/λ` in rad/s.
    pub fn resonance_frequency(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / self.wavelength
    }

    /// Rim speed over the speed of light, `RΩ/c`.
    pub fn rim_speed_ratio(&self) -> f64 {
        self.radius * self.angular_speed / SPEED_OF_LIGHT
    }
}

/// Signed Sagnac-Fizeau shift `Δ_F` in rad/s.
///
/// The CW mode moves to `ω_c + Δ_F` and the CCW mode to `ω_c − Δ_F`; flip
/// the sign of the angular speed for the opposite rotation sense.
pub fn sagnac_shift(params: &RingParams) -> Result<f64> {
    params.validate()?;
    let n = params.refractive_index;
    let omega_c = params.resonance_frequency();
    let drag = 1.0 - 1.0 / (n * n) - (params.wavelength / n) * params.dn_dlambda;
    Ok(n * params.radius * params.angular_speed * omega_c / SPEED_OF_LIGHT * drag)
}

/// Whether rates are given in SI units or in an arbitrary shared unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitMode {
    Physical,
    Dimensionless,
}

/// Maps angular frequencies onto the model's working unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitSystem {
    pub mode: UnitMode,
    /// Size of one model rate unit in rad/s. Always 1 in dimensionless mode.
    pub reference_rate: f64,
}

impl UnitSystem {
    pub const DIMENSIONLESS: UnitSystem = UnitSystem {
        mode: UnitMode::Dimensionless,
        reference_rate: 1.0,
    };

    pub fn physical(reference_rate: f64) -> Result<Self> {
        ensure_finite("reference_rate", reference_rate)?;
        if reference_rate <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "reference_rate",
                reason: "must be positive",
            });
        }
        Ok(Self {
            mode: UnitMode::Physical,
            reference_rate,
        })
    }

    /// Converts a rate in rad/s (physical mode) to model units.
    pub fn to_model(&self, rate: f64) -> f64 {
        match self.mode {
            UnitMode::Physical => rate / self.reference_rate,
            UnitMode::Dimensionless => rate,
        }
    }
}

/// Waveguide phases accumulated over one separation by right-going (CW
/// emission) and left-going (CCW emission) photons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionalPhases {
    pub cw: f64,
    pub ccw: f64,
}

impl DirectionalPhases {
    /// Derives the CCW phase from a CW phase over the same separation,
    /// `φ_ccw = φ_cw (ω_c − Δ_F)/(ω_c + Δ_F)`.
    pub fn from_cw(phase_cw: f64, delta_f: f64, omega_c: f64) -> Result<Self> {
        check_shift(delta_f, omega_c)?;
        ensure_finite("phase", phase_cw)?;
        Ok(Self {
            cw: phase_cw,
            ccw: phase_cw * (omega_c - delta_f) / (omega_c + delta_f),
        })
    }

    pub fn get(&self, direction: crate::Direction) -> f64 {
        match direction {
            crate::Direction::Cw => self.cw,
            crate::Direction::Ccw => self.ccw,
        }
    }
}

/// Splits a rest-frame phase `θ = ω_c d / c` into the CW and CCW phases
/// `θ (1 ± Δ_F/ω_c)`. Phases are taken at the shifted cavity frequencies,
/// not at the drive frequency.
pub fn directional_phases(theta_base: f64, delta_f: f64, omega_c: f64) -> Result<DirectionalPhases> {
    check_shift(delta_f, omega_c)?;
    ensure_finite("theta_base", theta_base)?;
    if theta_base < 0.0 {
        return Err(Error::InvalidParameter {
            name: "theta_base",
            reason: "must be non-negative",
        });
    }
    let ratio = delta_f / omega_c;
    Ok(DirectionalPhases {
        cw: theta_base * (1.0 + ratio),
        ccw: theta_base * (1.0 - ratio),
    })
}

fn check_shift(delta_f: f64, omega_c: f64) -> Result<()> {
    ensure_finite("omega_c", omega_c)?;
    ensure_finite("delta_f", delta_f)?;
    if omega_c <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "omega_c",
            reason: "must be positive",
        });
    }
    if libm::fabs(delta_f) >= omega_c {
        return Err(Error::InvalidParameter {
            name: "delta_f",
            reason: "|delta_f| must be smaller than omega_c",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_ring(omega: f64) -> RingParams {
        RingParams::new(1.4, 4.73e-3, 1550e-9, omega)
    }

    #[test]
    fn no_rotation_no_shift() {
        assert_eq!(sagnac_shift(&reference_ring(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn rim_speed_ratio_of_reference_ring() {
        let ring = reference_ring(0.97e9);
        assert!((ring.rim_speed_ratio() - 0.0153).abs() < 5e-5);
    }

    #[test]
    fn shift_ratio_of_reference_ring() {
        let ring = reference_ring(0.97e9);
        let ratio = sagnac_shift(&ring).unwrap() / ring.resonance_frequency();
        // n RΩ/c (1 − 1/n²) evaluated by hand: 1.4 × 0.015305 × 0.489796
        let expected = 1.4 * (4.73e-3 * 0.97e9 / SPEED_OF_LIGHT) * (1.0 - 1.0 / 1.96);
        assert!((ratio - expected).abs() < 1e-15);
        assert!((ratio - 1.05e-2).abs() < 1e-4);
    }

    #[test]
    fn dispersion_term_reduces_drag() {
        let mut ring = reference_ring(1e9);
        let plain = sagnac_shift(&ring).unwrap();
        ring.dn_dlambda = 1e4;
        assert!(sagnac_shift(&ring).unwrap() < plain);
    }

    #[test]
    fn rejects_bad_ring() {
        assert!(sagnac_shift(&RingParams::new(1.0, 1e-3, 1e-6, 1.0)).is_err());
        assert!(sagnac_shift(&RingParams::new(1.4, -1e-3, 1e-6, 1.0)).is_err());
        assert!(sagnac_shift(&RingParams::new(1.4, 1e-3, f64::NAN, 1.0)).is_err());
    }

    #[test]
    fn phases_at_reference_rotation() {
        let p = directional_phases(0.95 * 2.0 * PI, 0.05, 1.0).unwrap();
        assert!((p.cw - 0.9975 * 2.0 * PI).abs() < 1e-14);
        assert!((p.ccw - 0.9025 * 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn phases_without_rotation_or_separation() {
        let p = directional_phases(1.3, 0.0, 2.0).unwrap();
        assert_eq!((p.cw, p.ccw), (1.3, 1.3));
        let p = directional_phases(0.0, 0.1, 1.0).unwrap();
        assert_eq!((p.cw, p.ccw), (0.0, 0.0));
    }

    #[test]
    fn phase_ratio_matches_frequency_ratio() {
        let p = directional_phases(2.0, 0.2, 1.0).unwrap();
        assert!((p.cw / p.ccw - 1.2 / 0.8).abs() < 1e-14);
        let q = DirectionalPhases::from_cw(p.cw, 0.2, 1.0).unwrap();
        assert!((q.ccw - p.ccw).abs() < 1e-14);
    }

    #[test]
    fn shift_must_stay_below_resonance() {
        assert!(directional_phases(1.0, 1.0, 1.0).is_err());
        assert!(directional_phases(1.0, -2.0, 1.0).is_err());
        assert!(directional_phases(-1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn physical_units_scale_rates() {
        let units = UnitSystem::physical(1e9).unwrap();
        assert_eq!(units.to_model(5e9), 5.0);
        assert_eq!(UnitSystem::DIMENSIONLESS.to_model(5e9), 5e9);
        assert!(UnitSystem::physical(0.0).is_err());
    }
}
