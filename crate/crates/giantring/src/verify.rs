//! Cross-checks of the three evaluation routes: closed form, dense linear
//! solve and time-domain steady state.

use giantring_core::dynamics::{self, Drive, IntegrationConfig, Trajectory};
use giantring_core::{relative_difference, single, two, DriveSide};
use rayon::prelude::*;

use crate::config::{ModelSpec, Param, SweepConfig};
use crate::error::Result;

/// Detuning span used when the config has no `delta_c` axis.
pub const DEFAULT_SPAN: (f64, f64) = (-30.0, 30.0);
/// Convergence tolerance of the time-domain route.
pub const TIME_DOMAIN_TOL: f64 = 1e-11;
/// Time limit of the time-domain route.
pub const TIME_DOMAIN_T_MAX: f64 = 2.0e4;

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub point: Vec<(Param, f64)>,
    pub side: DriveSide,
    pub closed_form: f64,
    pub dense: f64,
    pub time_domain: f64,
}

impl Comparison {
    /// Largest pairwise relative difference of the three transmissions.
    pub fn worst(&self) -> f64 {
        let (a, b, c) = (self.closed_form, self.dense, self.time_domain);
        relative_difference(a, b)
            .max(relative_difference(a, c))
            .max(relative_difference(b, c))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub comparisons: Vec<Comparison>,
    pub tol: f64,
}

impl VerifyReport {
    pub fn worst(&self) -> f64 {
        self.comparisons.iter().map(Comparison::worst).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.worst() <= self.tol
    }
}

/// Values of a non-detuning axis that are checked: every value for short
/// axes, otherwise the endpoints and the middle value.
fn checked_values(axis: &crate::config::Axis) -> Vec<f64> {
    let values = axis.values();
    if values.len() <= 5 {
        values
    } else {
        vec![values[0], values[values.len() / 2], values[values.len() - 1]]
    }
}

/// Points visited by [`verify`]: `points` detunings spread over the config's
/// `delta_c` range (or [`DEFAULT_SPAN`]) for each checked combination of the
/// other axes.
pub fn verification_points(cfg: &SweepConfig, points: usize) -> Vec<Vec<(Param, f64)>> {
    let (start, stop) = cfg
        .axes
        .iter()
        .find(|a| a.param == Param::DeltaC)
        .map_or(DEFAULT_SPAN, |a| (a.start, a.stop));
    let detuning = crate::config::Axis::linear(Param::DeltaC, start, stop, points.max(1));
    let mut combos = vec![Vec::new()];
    for axis in cfg.axes.iter().filter(|a| a.param != Param::DeltaC) {
        let values = checked_values(axis);
        combos = combos
            .into_iter()
            .flat_map(|prefix: Vec<(Param, f64)>| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push((axis.param, v));
                    p
                })
            })
            .collect();
    }
    let detunings = if points == 1 { vec![0.5 * (start + stop)] } else { detuning.values() };
    combos
        .into_iter()
        .flat_map(|combo| {
            detunings.iter().map(move |&d| {
                let mut p = combo.clone();
                p.push((Param::DeltaC, d));
                p
            })
        })
        .collect()
}

/// Time-domain run at the largest stable step.
pub fn time_domain(spec: &ModelSpec, detuning: f64, side: DriveSide, sample_every: usize) -> Result<Trajectory> {
    let matrix = match spec {
        ModelSpec::Single(s) => single::steady_state_system(s, detuning, side, 1.0)?.0,
        ModelSpec::Two(s) => two::steady_state_system(s, detuning, side, 1.0)?.0,
    };
    let drive = Drive {
        side,
        amplitude: 1.0,
        detuning,
    };
    let mut cfg = IntegrationConfig::new(dynamics::max_stable_step(&matrix), TIME_DOMAIN_T_MAX, TIME_DOMAIN_TOL, drive);
    cfg.sample_every = sample_every;
    Ok(match spec {
        ModelSpec::Single(s) => dynamics::integrate_single(s, &cfg)?,
        ModelSpec::Two(s) => dynamics::integrate_two(s, &cfg)?,
    })
}

fn compare(cfg: &SweepConfig, point: &[(Param, f64)], side: DriveSide) -> Result<Comparison> {
    let detuning = point.iter().find(|(p, _)| *p == Param::DeltaC).map_or(0.0, |(_, v)| *v);
    let spec = cfg.build(point)?;
    let (closed_form, dense) = match &spec {
        ModelSpec::Single(s) => {
            let closed = match side {
                DriveSide::Left => single::transmission_left(s, detuning)?,
                DriveSide::Right => single::transmission_right(s, detuning)?,
            };
            let x = single::generic_steady_solve(s, detuning, side)?;
            (closed, single::transmission_from_amplitudes(s, side, &x))
        }
        ModelSpec::Two(s) => {
            let closed = match side {
                DriveSide::Left => two::transmission_left_drive(s, detuning)?.transmission,
                DriveSide::Right => two::transmission_right_drive(s, detuning)?.transmission,
            };
            let x = two::generic_steady_solve(s, detuning, side)?;
            (closed, two::transmission_from_amplitudes(s, side, &x))
        }
    };
    let run = time_domain(&spec, detuning, side, usize::MAX)?;
    let time_domain = match &spec {
        ModelSpec::Single(s) => single::transmission_from_amplitudes(s, side, &run.final_amplitudes),
        ModelSpec::Two(s) => two::transmission_from_amplitudes(s, side, &run.final_amplitudes),
    };
    Ok(Comparison {
        point: point.to_vec(),
        side,
        closed_form,
        dense,
        time_domain,
    })
}

/// Runs all three routes for both probe sides at every verification point.
pub fn verify(cfg: &SweepConfig, tol: f64, points: usize) -> Result<VerifyReport> {
    cfg.validate()?;
    let jobs: Vec<(Vec<(Param, f64)>, DriveSide)> = verification_points(cfg, points)
        .into_iter()
        .flat_map(|p| [(p.clone(), DriveSide::Left), (p, DriveSide::Right)])
        .collect();
    let comparisons = jobs
        .par_iter()
        .map(|(p, side)| compare(cfg, p, *side))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { comparisons, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset;

    #[test]
    fn fig3c_points() {
        let cfg = preset::expand("fig3c").unwrap();
        let pts = verification_points(&cfg, 21);
        assert_eq!(pts.len(), 42);
        assert_eq!(pts[0], vec![(Param::N, 5.0), (Param::DeltaC, -40.0)]);
    }

    #[test]
    fn long_axes_are_thinned() {
        let cfg = preset::expand("fig7").unwrap();
        assert_eq!(verification_points(&cfg, 3).len(), 9);
    }
}
