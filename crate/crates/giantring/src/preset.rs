//! Figure presets expanded into sweep configurations.
//!
//! All presets are dimensionless with `κ` (or `κ_e`) as the rate unit:
//! `ω_c = 200`, so `κ = 5×10⁻³ω_c`, and `Δ_F = 10 = 0.05ω_c`.

use std::f64::consts::PI;

use crate::config::{
    Axis, Base, CavityConfig, Coupling, Frequency, Model, Output, Param, PlotStyle, SingleBase, SweepConfig, TwoBase,
};
use crate::error::{AppError, Result};

pub const OMEGA_C: f64 = 200.0;
pub const DELTA_F: f64 = 10.0;
pub const KAPPA: f64 = 1.0;

/// Points per axis of line plots.
pub const LINE_POINTS: usize = 401;
/// Points per axis of heatmaps.
pub const MAP_POINTS: usize = 201;

pub const PRESET_NAMES: [&str; 15] = [
    "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d", "fig5a", "fig5b", "fig5c", "fig5d", "fig6a",
    "fig6b", "fig7",
];

fn single_base(n: usize, kappa_c: f64, j: f64) -> Base {
    Base::Single(SingleBase {
        frequency: Frequency::Dimensionless {
            omega_c: OMEGA_C,
            delta_f: DELTA_F,
        },
        kappa_c,
        j,
        coupling: Coupling::Symmetric {
            n,
            kappa_e: KAPPA,
            theta_c: 0.95 * 2.0 * PI,
        },
    })
}

fn cavity(j: f64) -> CavityConfig {
    CavityConfig {
        omega: OMEGA_C,
        delta_f: DELTA_F,
        kappa: 0.5 * KAPPA,
        kappa1_e: KAPPA,
        kappa2_e: KAPPA,
        j,
    }
}

fn two_base(j_a: f64, j_b: f64, phi_a: f64, phi_b: f64) -> Base {
    Base::Two(TwoBase {
        omega_c: OMEGA_C,
        cavity_a: cavity(j_a),
        cavity_b: cavity(j_b),
        phi_a_cw: phi_a * PI,
        phi_l_cw: PI,
        phi_b_cw: phi_b * PI,
    })
}

fn config(name: &str, base: Base, axes: Vec<Axis>, outputs: Vec<Output>, plot: PlotStyle) -> SweepConfig {
    let model = match base {
        Base::Single(_) => Model::Single,
        Base::Two(_) => Model::Two,
    };
    SweepConfig {
        name: name.to_string(),
        model,
        base,
        axes,
        outputs,
        plot,
        numerics: None,
    }
}

/// Expands a preset by name.
pub fn expand(name: &str) -> Result<SweepConfig> {
    use Output::*;
    let theta_line = Axis::linear(Param::ThetaCOver2Pi, 0.5, 1.5, LINE_POINTS);
    let theta_map = Axis::linear(Param::ThetaCOver2Pi, 0.5, 1.5, MAP_POINTS);
    let n_axis = Axis::linear(Param::N, 1.0, 20.0, 20);
    let detuning_single = |count| Axis::linear(Param::DeltaC, -40.0, 40.0, count);
    let detuning_two = |count| Axis::linear(Param::DeltaC, -30.0, 30.0, count);
    let profiles_n = Axis::linear(Param::N, 5.0, 10.0, 2);
    let profiles_phi = Axis::linear(Param::PhiBCwOverPi, 1.0, 1.5, 2);
    let phi_map = Axis::linear(Param::PhiBCwOverPi, 0.0, 2.0, MAP_POINTS);

    let cfg = match name {
        "fig2a" => config(name, single_base(10, 0.0, 0.0), vec![theta_line], vec![DeltaCw, DeltaCcw], PlotStyle::Auto),
        "fig2b" => config(name, single_base(10, 0.0, 0.0), vec![theta_line], vec![GammaCw, GammaCcw], PlotStyle::Auto),
        "fig2c" => config(name, single_base(10, 0.0, 0.0), vec![n_axis], vec![Chirality, GammaCw, GammaCcw], PlotStyle::Auto),
        "fig2d" => config(
            name,
            single_base(10, 0.0, 0.0),
            vec![n_axis, Axis::linear(Param::DeltaF, 0.0, 20.0, MAP_POINTS)],
            vec![Chirality],
            PlotStyle::Auto,
        ),
        "fig3a" | "fig3b" => {
            let j = if name == "fig3a" { 0.0 } else { 5.0 * KAPPA };
            config(name, single_base(10, 2.0 * KAPPA, j), vec![theta_map, detuning_single(MAP_POINTS)], vec![TL, TR], PlotStyle::Auto)
        }
        "fig3c" | "fig3d" => {
            let j = if name == "fig3c" { 0.0 } else { 5.0 * KAPPA };
            config(
                name,
                single_base(10, 2.0 * KAPPA, j),
                vec![profiles_n, detuning_single(LINE_POINTS)],
                vec![TL, TR],
                PlotStyle::Profiles,
            )
        }
        "fig5a" | "fig5b" => {
            let out = if name == "fig5a" { TR } else { TL };
            config(name, two_base(0.0, 0.0, 1.0, 1.0), vec![phi_map, detuning_two(MAP_POINTS)], vec![out], PlotStyle::Auto)
        }
        "fig5c" | "fig5d" => {
            let out = if name == "fig5c" { TR } else { TL };
            config(name, two_base(0.0, 0.0, 1.0, 1.0), vec![profiles_phi, detuning_two(LINE_POINTS)], vec![out], PlotStyle::Profiles)
        }
        "fig6a" | "fig6b" => {
            let j_b = if name == "fig6a" { 0.0 } else { 10.0 * KAPPA };
            config(name, two_base(2.0 * KAPPA, j_b, 0.5, 1.5), vec![detuning_two(LINE_POINTS)], vec![TR, TL], PlotStyle::Auto)
        }
        "fig7" => config(
            name,
            two_base(2.0 * KAPPA, 0.0, 0.5, 1.5),
            vec![
                Axis::linear(Param::JB, 0.0, 10.0 * KAPPA, MAP_POINTS),
                Axis::linear(Param::DeltaC, -20.0, 20.0, MAP_POINTS),
            ],
            vec![TL, TR, Isolation],
            PlotStyle::Auto,
        ),
        other => {
            return Err(AppError::Usage(format!(
                "unknown preset `{other}`; expected one of {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_expands() {
        for name in PRESET_NAMES {
            let cfg = expand(name).unwrap();
            assert_eq!(cfg.name, name);
        }
        assert!(expand("fig4").is_err());
    }

    #[test]
    fn fig7_grid_contains_reference_points() {
        let cfg = expand("fig7").unwrap();
        let detunings = cfg.axes[1].values();
        assert!(detunings.iter().any(|d| (d - 11.0).abs() < 1e-12));
        assert_eq!(*cfg.axes[0].values().last().unwrap(), 10.0);
    }
}
