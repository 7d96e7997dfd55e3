//! Time-domain integration of the mean-field equations with a coherent
//! probe, in the frame rotating at the probe frequency.
//!
//! Vacuum inputs are dropped, so the equations are linear,
//! `dx/dt = b − M x`, with `M` and `b` taken from
//! [`single::steady_state_system`] or [`two::steady_state_system`].

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::single::{self, SingleCavitySpec};
use crate::two::{self, TwoCavitySpec};
use crate::{ensure_finite, DriveSide, Error, Result};

/// Amplitudes beyond this magnitude abort the run.
pub const DIVERGENCE_BOUND: f64 = 1e12;
/// Largest permitted `dt × ‖M‖∞`.
pub const STABILITY_LIMIT: f64 = 0.1;
/// Upper cap on the convergence window, in time units.
pub const MAX_WINDOW: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Drive {
    pub side: DriveSide,
    pub amplitude: f64,
    /// Probe detuning `Δ_c = ω_c − ω_l`.
    pub detuning: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationConfig {
    pub dt: f64,
    pub t_max: f64,
    /// Relative tolerance of the steady-state test, in `(0, 1e-3]`.
    pub convergence_tol: f64,
    pub drive: Drive,
    /// Initial mode amplitudes; empty means all zero.
    pub initial: Vec<Complex64>,
    /// Keep every `sample_every`-th step in the trajectory.
    pub sample_every: usize,
}

impl IntegrationConfig {
    pub fn new(dt: f64, t_max: f64, convergence_tol: f64, drive: Drive) -> Self {
        Self {
            dt,
            t_max,
            convergence_tol,
            drive,
            initial: Vec::new(),
            sample_every: 100,
        }
    }

    fn validate(&self) -> Result<()> {
        ensure_finite("dt", self.dt)?;
        ensure_finite("t_max", self.t_max)?;
        ensure_finite("convergence_tol", self.convergence_tol)?;
        ensure_finite("amplitude", self.drive.amplitude)?;
        ensure_finite("detuning", self.drive.detuning)?;
        if self.dt <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: "must be positive",
            });
        }
        if self.t_max < self.dt {
            return Err(Error::InvalidParameter {
                name: "t_max",
                reason: "must be at least one step",
            });
        }
        if !(self.convergence_tol > 0.0 && self.convergence_tol <= 1e-3) {
            return Err(Error::InvalidParameter {
                name: "convergence_tol",
                reason: "must lie in (0, 1e-3]",
            });
        }
        if self.sample_every == 0 {
            return Err(Error::InvalidParameter {
                name: "sample_every",
                reason: "must be at least 1",
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Mode amplitudes at each retained time.
    pub samples: Vec<Vec<Complex64>>,
    pub converged: bool,
    pub final_time: f64,
    pub final_amplitudes: Vec<Complex64>,
}

/// Largest time step allowed by the stability guard for this system.
pub fn max_stable_step(matrix: &Matrix) -> f64 {
    let norm = matrix.norm_inf();
    if norm == 0.0 {
        f64::INFINITY
    } else {
        STABILITY_LIMIT / norm
    }
}

/// Integrates one cavity; amplitudes are `[c_cw, c_ccw]`.
pub fn integrate_single(spec: &SingleCavitySpec, cfg: &IntegrationConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let (matrix, rhs) = single::steady_state_system(spec, cfg.drive.detuning, cfg.drive.side, cfg.drive.amplitude)?;
    integrate_linear(&matrix, &rhs, cfg)
}

/// Integrates the cavity pair; amplitudes are `[a_cw, a_ccw, b_cw, b_ccw]`.
pub fn integrate_two(spec: &TwoCavitySpec, cfg: &IntegrationConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let (matrix, rhs) = two::steady_state_system(spec, cfg.drive.detuning, cfg.drive.side, cfg.drive.amplitude)?;
    integrate_linear(&matrix, &rhs, cfg)
}

/// Classic RK4 on `dx/dt = b − M x` until the steady-state test passes.
///
/// Every window (one period of the slowest detuning present, capped at
/// [`MAX_WINDOW`]) the run is declared converged when the relative change
/// since the previous window and the relative residual `‖b − Mx‖/‖b‖` are
/// both below the tolerance. Without a drive the residual is measured
/// against `‖M‖‖x(0)‖`.
pub fn integrate_linear(matrix: &Matrix, rhs: &[Complex64], cfg: &IntegrationConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let dim = matrix.dim();
    assert_eq!(rhs.len(), dim, "drive vector length mismatch");
    if cfg.dt > max_stable_step(matrix) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: "dt times the largest rate exceeds the stability limit",
        });
    }
    let mut state = if cfg.initial.is_empty() {
        vec![Complex64::new(0.0, 0.0); dim]
    } else if cfg.initial.len() == dim {
        cfg.initial.clone()
    } else {
        return Err(Error::InvalidParameter {
            name: "initial",
            reason: "length must match the number of modes",
        });
    };

    let window_steps = {
        let window = convergence_window(matrix);
        libm::ceil(window / cfg.dt).max(1.0) as u64
    };
    let total_steps = libm::floor(cfg.t_max / cfg.dt) as u64;
    let rhs_norm = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let matrix_norm = matrix.norm_inf();
    let initial_norm = state.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Amplitude and residual scales; an undriven run is measured against
    // its initial condition.
    let amplitude_scale = if matrix_norm > 0.0 {
        (rhs_norm / matrix_norm).max(initial_norm)
    } else {
        initial_norm
    };
    let residual_scale = if rhs_norm > 0.0 {
        rhs_norm
    } else {
        matrix_norm * initial_norm
    };

    let mut stepper = Rk4::new(dim);
    let mut times = vec![0.0];
    let mut samples = vec![state.clone()];
    let mut checkpoint = state.clone();
    let mut scratch = vec![Complex64::new(0.0, 0.0); dim];

    for step in 1..=total_steps {
        stepper.step(matrix, rhs, cfg.dt, &mut state);
        let t = step as f64 * cfg.dt;
        if state.iter().any(|z| !(z.norm() <= DIVERGENCE_BOUND)) {
            return Err(Error::Divergence { time: t });
        }
        let at_check = step % window_steps == 0;
        if ((step as usize).is_multiple_of(cfg.sample_every) || at_check) && times.last() != Some(&t) {
            times.push(t);
            samples.push(state.clone());
        }
        if at_check {
            let size = state.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let change = state
                .iter()
                .zip(&checkpoint)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            matrix.mul_vec_into(&state, &mut scratch);
            let residual = scratch
                .iter()
                .zip(rhs)
                .map(|(mx, b)| (b - mx).norm())
                .fold(0.0, f64::max);
            let relative_change = ratio(change, size.max(amplitude_scale));
            let relative_residual = ratio(residual, residual_scale);
            if relative_change <= cfg.convergence_tol && relative_residual <= cfg.convergence_tol {
                return Ok(Trajectory {
                    times,
                    samples,
                    converged: true,
                    final_time: t,
                    final_amplitudes: state,
                });
            }
            checkpoint.copy_from_slice(&state);
        }
    }

    let final_time = total_steps as f64 * cfg.dt;
    if times.last() != Some(&final_time) {
        times.push(final_time);
        samples.push(state.clone());
    }
    Err(Error::Timeout {
        trajectory: Box::new(Trajectory {
            times,
            samples,
            converged: false,
            final_time,
            final_amplitudes: state,
        }),
    })
}

fn ratio(value: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        value / scale
    } else {
        value
    }
}

/// One period of the slowest nonzero mode frequency, capped at
/// [`MAX_WINDOW`]. Without any detuning, one period of the fastest rate.
fn convergence_window(matrix: &Matrix) -> f64 {
    let slowest = (0..matrix.dim())
        .map(|i| libm::fabs(matrix.get(i, i).im))
        .filter(|f| *f > 0.0)
        .fold(f64::INFINITY, f64::min);
    if slowest.is_finite() {
        (2.0 * PI / slowest).min(MAX_WINDOW)
    } else {
        let norm = matrix.norm_inf();
        if norm > 0.0 {
            (2.0 * PI / norm).min(MAX_WINDOW)
        } else {
            MAX_WINDOW
        }
    }
}

struct Rk4 {
    k: [Vec<Complex64>; 4],
    probe: Vec<Complex64>,
}

impl Rk4 {
    fn new(dim: usize) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); dim];
        Self {
            k: [zero.clone(), zero.clone(), zero.clone(), zero.clone()],
            probe: zero,
        }
    }

    fn derivative(matrix: &Matrix, rhs: &[Complex64], x: &[Complex64], out: &mut [Complex64]) {
        matrix.mul_vec_into(x, out);
        for (o, b) in out.iter_mut().zip(rhs) {
            *o = b - *o;
        }
    }

    fn step(&mut self, matrix: &Matrix, rhs: &[Complex64], h: f64, x: &mut [Complex64]) {
        let [k1, k2, k3, k4] = &mut self.k;
        Self::derivative(matrix, rhs, x, k1);

        for ((p, xi), k) in self.probe.iter_mut().zip(x.iter()).zip(k1.iter()) {
            *p = xi + k * (0.5 * h);
        }
        Self::derivative(matrix, rhs, &self.probe, k2);

        for ((p, xi), k) in self.probe.iter_mut().zip(x.iter()).zip(k2.iter()) {
            *p = xi + k * (0.5 * h);
        }
        Self::derivative(matrix, rhs, &self.probe, k3);

        for ((p, xi), k) in self.probe.iter_mut().zip(x.iter()).zip(k3.iter()) {
            *p = xi + k * h;
        }
        Self::derivative(matrix, rhs, &self.probe, k4);

        for (i, xi) in x.iter_mut().enumerate() {
            *xi += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
        }
    }
}
