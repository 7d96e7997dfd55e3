//! Sweep configuration: JSON schema, loading and validation.
//!
//! Every key is required except `dn_dlambda` (default 0) and the optional
//! `numerics` block. Unknown keys are rejected.

use std::f64::consts::PI;

use giantring_core::sagnac::{sagnac_shift, RingParams, UnitSystem};
use giantring_core::single::{CouplingLayout, CouplingPoint, SingleCavitySpec};
use giantring_core::two::{Resonator, TwoCavitySpec};
use giantring_core::Numerics;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

/// Axes with more points than this are rejected.
pub const MAX_AXIS_COUNT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub name: String,
    pub model: Model,
    pub base: Base,
    pub axes: Vec<Axis>,
    pub outputs: Vec<Output>,
    pub plot: PlotStyle,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerics: Option<NumericsConfig>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Single,
    Two,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Base {
    Single(SingleBase),
    Two(TwoBase),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleBase {
    pub frequency: Frequency,
    pub kappa_c: f64,
    /// CW-CCW backscattering.
    pub j: f64,
    pub coupling: Coupling,
}

/// Where `ω_c` and `Δ_F` come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Frequency {
    /// Rates given directly in the model unit.
    Dimensionless { omega_c: f64, delta_f: f64 },
    /// A physical ring; `ω_c` and `Δ_F` are derived and divided by
    /// `reference_rate` (rad/s per model unit).
    Physical {
        index: f64,
        radius_m: f64,
        wavelength_m: f64,
        /// rad/s, positive for CCW rotation.
        angular_speed: f64,
        #[serde(default)]
        dn_dlambda: f64,
        reference_rate: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Coupling {
    Symmetric { n: usize, kappa_e: f64, theta_c: f64 },
    Points(Vec<PointConfig>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub kappa_e: f64,
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoBase {
    pub omega_c: f64,
    pub cavity_a: CavityConfig,
    pub cavity_b: CavityConfig,
    pub phi_a_cw: f64,
    pub phi_l_cw: f64,
    pub phi_b_cw: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavityConfig {
    pub omega: f64,
    pub delta_f: f64,
    pub kappa: f64,
    pub kappa1_e: f64,
    pub kappa2_e: f64,
    pub j: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsConfig {
    pub eps_sing: f64,
    pub eps_den: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
}

/// Swept quantity. Phases come in radians or in units of 2π (`θ_c`) or π
/// (the two-cavity phases).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    DeltaC,
    DeltaF,
    ThetaC,
    #[serde(rename = "theta_c_over_2pi")]
    ThetaCOver2Pi,
    N,
    J,
    KappaC,
    KappaE,
    PhiACw,
    PhiACwOverPi,
    PhiLCw,
    PhiLCwOverPi,
    PhiBCw,
    PhiBCwOverPi,
    JA,
    JB,
    KappaA,
    KappaB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    DeltaCw,
    DeltaCcw,
    GammaCw,
    GammaCcw,
    GammapCw,
    GammapCcw,
    Chirality,
    TL,
    TR,
    Isolation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotStyle {
    /// Heatmaps for two axes, a line plot for one.
    Auto,
    /// One curve per value of the first axis against the second.
    Profiles,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::DeltaC => "delta_c",
            Param::DeltaF => "delta_f",
            Param::ThetaC => "theta_c",
            Param::ThetaCOver2Pi => "theta_c_over_2pi",
            Param::N => "n",
            Param::J => "j",
            Param::KappaC => "kappa_c",
            Param::KappaE => "kappa_e",
            Param::PhiACw => "phi_a_cw",
            Param::PhiACwOverPi => "phi_a_cw_over_pi",
            Param::PhiLCw => "phi_l_cw",
            Param::PhiLCwOverPi => "phi_l_cw_over_pi",
            Param::PhiBCw => "phi_b_cw",
            Param::PhiBCwOverPi => "phi_b_cw_over_pi",
            Param::JA => "j_a",
            Param::JB => "j_b",
            Param::KappaA => "kappa_a",
            Param::KappaB => "kappa_b",
        }
    }

    /// Axis label for plots (gnuplot enhanced-text syntax).
    pub fn label(self) -> &'static str {
        match self {
            Param::DeltaC => "Δ_c/κ",
            Param::DeltaF => "Δ_F/κ",
            Param::ThetaC => "θ_c (rad)",
            Param::ThetaCOver2Pi => "θ_c/2π",
            Param::N => "N",
            Param::J => "J/κ",
            Param::KappaC => "κ_c/κ",
            Param::KappaE => "κ_e",
            Param::PhiACw => "φ_{a,cw} (rad)",
            Param::PhiACwOverPi => "φ_{a,cw}/π",
            Param::PhiLCw => "φ_{L,cw} (rad)",
            Param::PhiLCwOverPi => "φ_{L,cw}/π",
            Param::PhiBCw => "φ_{b,cw} (rad)",
            Param::PhiBCwOverPi => "φ_{b,cw}/π",
            Param::JA => "J_a/κ",
            Param::JB => "J_b/κ",
            Param::KappaA => "κ_a/κ",
            Param::KappaB => "κ_b/κ",
        }
    }

    pub fn applies_to(self, model: Model) -> bool {
        use Param::*;
        match model {
            Model::Single => matches!(self, DeltaC | DeltaF | ThetaC | ThetaCOver2Pi | N | J | KappaC | KappaE),
            Model::Two => matches!(
                self,
                DeltaC
                    | DeltaF
                    | PhiACw
                    | PhiACwOverPi
                    | PhiLCw
                    | PhiLCwOverPi
                    | PhiBCw
                    | PhiBCwOverPi
                    | JA
                    | JB
                    | KappaA
                    | KappaB
            ),
        }
    }
}

impl Output {
    pub fn name(self) -> &'static str {
        match self {
            Output::DeltaCw => "delta_cw",
            Output::DeltaCcw => "delta_ccw",
            Output::GammaCw => "gamma_cw",
            Output::GammaCcw => "gamma_ccw",
            Output::GammapCw => "gammap_cw",
            Output::GammapCcw => "gammap_ccw",
            Output::Chirality => "chirality",
            Output::TL => "t_l",
            Output::TR => "t_r",
            Output::Isolation => "isolation",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Output::DeltaCw => "Δ_{cw}/κ_e",
            Output::DeltaCcw => "Δ_{ccw}/κ_e",
            Output::GammaCw => "Γ_{cw}/κ_e",
            Output::GammaCcw => "Γ_{ccw}/κ_e",
            Output::GammapCw => "Γ'_{cw}/κ_e",
            Output::GammapCcw => "Γ'_{ccw}/κ_e",
            Output::Chirality => "C",
            Output::TL => "T_L",
            Output::TR => "T_R",
            Output::Isolation => "I (dB)",
        }
    }

    pub fn applies_to(self, model: Model) -> bool {
        match model {
            Model::Single => true,
            Model::Two => matches!(self, Output::TL | Output::TR | Output::Isolation),
        }
    }
}

impl Axis {
    pub fn linear(param: Param, start: f64, stop: f64, count: usize) -> Self {
        Self {
            param,
            start,
            stop,
            count,
            spacing: Spacing::Linear,
        }
    }

    /// Grid values; the endpoints are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

impl SweepConfig {
    pub fn numerics(&self) -> Numerics {
        match self.numerics {
            Some(n) => Numerics {
                eps_sing: n.eps_sing,
                eps_den: n.eps_den,
            },
            None => Numerics::default(),
        }
    }

    /// Pretty JSON followed by a newline. Loading the result gives back an
    /// equal config.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.model, &self.base) {
            (Model::Single, Base::Single(base)) => validate_single_base(base)?,
            (Model::Two, Base::Two(base)) => validate_two_base(base)?,
            _ => return Err(AppError::config("base", "does not match `model`")),
        }
        if let Some(n) = &self.numerics {
            nonnegative("numerics.eps_sing", n.eps_sing)?;
            nonnegative("numerics.eps_den", n.eps_den)?;
        }
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(AppError::config("axes", "one or two axes are required"));
        }
        for (i, axis) in self.axes.iter().enumerate() {
            self.validate_axis(i, axis)?;
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(AppError::config("axes[1].param", "duplicates axes[0].param"));
        }
        if self.outputs.is_empty() {
            return Err(AppError::config("outputs", "at least one output is required"));
        }
        for (i, output) in self.outputs.iter().enumerate() {
            if !output.applies_to(self.model) {
                return Err(AppError::config(
                    format!("outputs[{i}]"),
                    format!("`{}` is not available for this model", output.name()),
                ));
            }
            if self.outputs[..i].contains(output) {
                return Err(AppError::config(format!("outputs[{i}]"), "duplicate output"));
            }
        }
        self.validate_corners()
    }

    fn validate_axis(&self, i: usize, axis: &Axis) -> Result<()> {
        let path = |field: &str| format!("axes[{i}].{field}");
        if !axis.param.applies_to(self.model) {
            return Err(AppError::config(
                path("param"),
                format!("`{}` is not a parameter of this model", axis.param.name()),
            ));
        }
        finite(&path("start"), axis.start)?;
        finite(&path("stop"), axis.stop)?;
        if axis.count == 0 {
            return Err(AppError::config(path("count"), "must be at least 1"));
        }
        if axis.count > MAX_AXIS_COUNT {
            return Err(AppError::config(path("count"), format!("must not exceed {MAX_AXIS_COUNT}")));
        }
        if axis.count > 1 && !(axis.start < axis.stop) {
            return Err(AppError::config(path("stop"), "must exceed start when count > 1"));
        }
        let needs_symmetric = matches!(axis.param, Param::N | Param::ThetaC | Param::ThetaCOver2Pi | Param::KappaE);
        if needs_symmetric {
            if let Base::Single(SingleBase {
                coupling: Coupling::Points(_),
                ..
            }) = &self.base
            {
                return Err(AppError::config(path("param"), "requires a symmetric coupling layout"));
            }
        }
        if axis.param == Param::N {
            for v in axis.values() {
                if v < 1.0 || (v - v.round()).abs() > 1e-9 {
                    return Err(AppError::config(path("start"), format!("N axis produces non-integer or zero value {v}")));
                }
            }
        }
        if axis.param == Param::DeltaF {
            if let Base::Single(SingleBase {
                frequency: Frequency::Physical { .. },
                ..
            }) = &self.base
            {
                return Err(AppError::config(path("param"), "delta_f cannot be swept with a physical frequency source"));
            }
        }
        Ok(())
    }

    /// Builds the spec at every corner of the axis box; all the validity
    /// conditions are convex, so this covers the whole grid.
    fn validate_corners(&self) -> Result<()> {
        let corners = 1usize << self.axes.len();
        for mask in 0..corners {
            let point: Vec<(Param, f64)> = self
                .axes
                .iter()
                .enumerate()
                .map(|(i, a)| (a.param, if mask >> i & 1 == 1 { a.stop } else { a.start }))
                .collect();
            let result = match self.build(&point) {
                Ok(ModelSpec::Single(s)) => s.validate(),
                Ok(ModelSpec::Two(s)) => s.validate(),
                Err(e) => return Err(e),
            };
            if let Err(e) = result {
                let which = point
                    .iter()
                    .map(|(p, v)| format!("{} = {v}", p.name()))
                    .collect::<Vec<_>>()
                    .join(", ");
                return Err(AppError::config("axes", format!("grid corner ({which}) is invalid: {e}")));
            }
        }
        Ok(())
    }

    /// Model spec and probe detuning at one grid point. Parameters not
    /// listed keep their base values; the detuning defaults to 0.
    pub fn build(&self, point: &[(Param, f64)]) -> Result<ModelSpec> {
        let numerics = self.numerics();
        match &self.base {
            Base::Single(base) => {
                let mut spec = single_spec(base, numerics)?;
                for &(param, value) in point {
                    apply_single(&mut spec, param, value);
                }
                Ok(ModelSpec::Single(spec))
            }
            Base::Two(base) => {
                let mut spec = two_spec(base, numerics);
                for &(param, value) in point {
                    apply_two(&mut spec, param, value);
                }
                Ok(ModelSpec::Two(spec))
            }
        }
    }

    /// Base spec without any axis applied.
    pub fn base_spec(&self) -> Result<ModelSpec> {
        self.build(&[])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Single(SingleCavitySpec),
    Two(TwoCavitySpec),
}

fn single_spec(base: &SingleBase, numerics: Numerics) -> Result<SingleCavitySpec> {
    let (omega_c, delta_f) = match base.frequency {
        Frequency::Dimensionless { omega_c, delta_f } => (omega_c, delta_f),
        Frequency::Physical {
            index,
            radius_m,
            wavelength_m,
            angular_speed,
            dn_dlambda,
            reference_rate,
        } => {
            let ring = RingParams {
                refractive_index: index,
                radius: radius_m,
                wavelength: wavelength_m,
                angular_speed,
                dn_dlambda,
            };
            let shift = sagnac_shift(&ring).map_err(|e| AppError::config("base.frequency.physical", e.to_string()))?;
            let units = UnitSystem::physical(reference_rate)
                .map_err(|e| AppError::config("base.frequency.physical.reference_rate", e.to_string()))?;
            (units.to_model(ring.resonance_frequency()), units.to_model(shift))
        }
    };
    let layout = match &base.coupling {
        Coupling::Symmetric { n, kappa_e, theta_c } => CouplingLayout::Symmetric {
            points: *n,
            kappa_e: *kappa_e,
            theta_c: *theta_c,
        },
        Coupling::Points(points) => CouplingLayout::Irregular(
            points
                .iter()
                .map(|p| CouplingPoint {
                    kappa_e: p.kappa_e,
                    phase: p.phase,
                })
                .collect(),
        ),
    };
    Ok(SingleCavitySpec {
        omega_c,
        delta_f,
        kappa_c: base.kappa_c,
        backscatter: base.j,
        layout,
        numerics,
    })
}

fn two_spec(base: &TwoBase, numerics: Numerics) -> TwoCavitySpec {
    let resonator = |c: &CavityConfig| Resonator {
        omega: c.omega,
        delta_f: c.delta_f,
        kappa: c.kappa,
        kappa1_e: c.kappa1_e,
        kappa2_e: c.kappa2_e,
        backscatter: c.j,
    };
    TwoCavitySpec {
        omega_c: base.omega_c,
        a: resonator(&base.cavity_a),
        b: resonator(&base.cavity_b),
        phi_a_cw: base.phi_a_cw,
        phi_l_cw: base.phi_l_cw,
        phi_b_cw: base.phi_b_cw,
        numerics,
    }
}

fn apply_single(spec: &mut SingleCavitySpec, param: Param, value: f64) {
    match param {
        Param::DeltaF => spec.delta_f = value,
        Param::J => spec.backscatter = value,
        Param::KappaC => spec.kappa_c = value,
        Param::N | Param::ThetaC | Param::ThetaCOver2Pi | Param::KappaE => {
            if let CouplingLayout::Symmetric {
                points,
                kappa_e,
                theta_c,
            } = &mut spec.layout
            {
                match param {
                    Param::N => *points = value.round() as usize,
                    Param::ThetaC => *theta_c = value,
                    Param::ThetaCOver2Pi => *theta_c = 2.0 * PI * value,
                    _ => *kappa_e = value,
                }
            }
        }
        _ => {}
    }
}

fn apply_two(spec: &mut TwoCavitySpec, param: Param, value: f64) {
    match param {
        Param::DeltaF => {
            spec.a.delta_f = value;
            spec.b.delta_f = value;
        }
        Param::PhiACw => spec.phi_a_cw = value,
        Param::PhiACwOverPi => spec.phi_a_cw = PI * value,
        Param::PhiLCw => spec.phi_l_cw = value,
        Param::PhiLCwOverPi => spec.phi_l_cw = PI * value,
        Param::PhiBCw => spec.phi_b_cw = value,
        Param::PhiBCwOverPi => spec.phi_b_cw = PI * value,
        Param::JA => spec.a.backscatter = value,
        Param::JB => spec.b.backscatter = value,
        Param::KappaA => spec.a.kappa = value,
        Param::KappaB => spec.b.kappa = value,
        _ => {}
    }
}

fn finite(path: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(AppError::config(path, "must be finite"))
    }
}

fn nonnegative(path: &str, value: f64) -> Result<()> {
    finite(path, value)?;
    if value < 0.0 {
        Err(AppError::config(path, format!("must be non-negative, got {value}")))
    } else {
        Ok(())
    }
}

fn positive(path: &str, value: f64) -> Result<()> {
    finite(path, value)?;
    if value <= 0.0 {
        Err(AppError::config(path, format!("must be positive, got {value}")))
    } else {
        Ok(())
    }
}

fn shift_below(path: &str, delta_f: f64, omega: f64) -> Result<()> {
    finite(path, delta_f)?;
    if delta_f.abs() >= omega {
        Err(AppError::config(path, "magnitude must be smaller than the resonance frequency"))
    } else {
        Ok(())
    }
}

fn validate_single_base(base: &SingleBase) -> Result<()> {
    match base.frequency {
        Frequency::Dimensionless { omega_c, delta_f } => {
            positive("base.frequency.dimensionless.omega_c", omega_c)?;
            shift_below("base.frequency.dimensionless.delta_f", delta_f, omega_c)?;
        }
        Frequency::Physical {
            index,
            radius_m,
            wavelength_m,
            angular_speed,
            dn_dlambda,
            reference_rate,
        } => {
            let path = |f: &str| format!("base.frequency.physical.{f}");
            finite(&path("index"), index)?;
            if index <= 1.0 {
                return Err(AppError::config(path("index"), "must exceed 1"));
            }
            positive(&path("radius_m"), radius_m)?;
            positive(&path("wavelength_m"), wavelength_m)?;
            finite(&path("angular_speed"), angular_speed)?;
            finite(&path("dn_dlambda"), dn_dlambda)?;
            positive(&path("reference_rate"), reference_rate)?;
        }
    }
    nonnegative("base.kappa_c", base.kappa_c)?;
    nonnegative("base.j", base.j)?;
    match &base.coupling {
        Coupling::Symmetric { n, kappa_e, theta_c } => {
            if *n == 0 {
                return Err(AppError::config("base.coupling.symmetric.n", "must be at least 1"));
            }
            nonnegative("base.coupling.symmetric.kappa_e", *kappa_e)?;
            nonnegative("base.coupling.symmetric.theta_c", *theta_c)?;
        }
        Coupling::Points(points) => {
            if points.is_empty() {
                return Err(AppError::config("base.coupling.points", "at least one point is required"));
            }
            for (i, p) in points.iter().enumerate() {
                nonnegative(&format!("base.coupling.points[{i}].kappa_e"), p.kappa_e)?;
                finite(&format!("base.coupling.points[{i}].phase"), p.phase)?;
                if i > 0 && p.phase < points[i - 1].phase {
                    return Err(AppError::config(
                        format!("base.coupling.points[{i}].phase"),
                        "phases must be nondecreasing along the waveguide",
                    ));
                }
            }
        }
    }
    Ok(())
}

fn validate_two_base(base: &TwoBase) -> Result<()> {
    positive("base.omega_c", base.omega_c)?;
    for (name, c) in [("cavity_a", &base.cavity_a), ("cavity_b", &base.cavity_b)] {
        let path = |f: &str| format!("base.{name}.{f}");
        positive(&path("omega"), c.omega)?;
        shift_below(&path("delta_f"), c.delta_f, c.omega)?;
        nonnegative(&path("kappa"), c.kappa)?;
        nonnegative(&path("kappa1_e"), c.kappa1_e)?;
        nonnegative(&path("kappa2_e"), c.kappa2_e)?;
        nonnegative(&path("j"), c.j)?;
    }
    nonnegative("base.phi_a_cw", base.phi_a_cw)?;
    nonnegative("base.phi_l_cw", base.phi_l_cw)?;
    nonnegative("base.phi_b_cw", base.phi_b_cw)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: String,
    model: Model,
    base: serde_json::Value,
    axes: Vec<Axis>,
    outputs: Vec<Output>,
    plot: PlotStyle,
    #[serde(default)]
    numerics: Option<NumericsConfig>,
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, prefix: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix, inner.as_str()) {
            ("", ".") => "$".to_string(),
            ("", p) => p.to_string(),
            (pre, ".") => pre.to_string(),
            (pre, p) => format!("{pre}.{p}"),
        };
        AppError::config(path, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| AppError::config("$", e.to_string()))?;
    Ok(value)
}

/// Parses and validates a sweep configuration.
pub fn load_config(text: &str) -> Result<SweepConfig> {
    let raw: RawConfig = parse(text, "")?;
    let base_text = raw.base.to_string();
    let base = match raw.model {
        Model::Single => Base::Single(parse(&base_text, "base")?),
        Model::Two => Base::Two(parse(&base_text, "base")?),
    };
    let cfg = SweepConfig {
        name: raw.name,
        model: raw.model,
        base,
        axes: raw.axes,
        outputs: raw.outputs,
        plot: raw.plot,
        numerics: raw.numerics,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and loads a configuration file.
pub fn load_config_file(path: &std::path::Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    load_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "name": "demo",
        "model": "single",
        "base": {
            "frequency": {"dimensionless": {"omega_c": 200.0, "delta_f": 10.0}},
            "kappa_c": 2.0,
            "j": 0.0,
            "coupling": {"symmetric": {"n": 10, "kappa_e": 1.0, "theta_c": 5.969026041820607}}
        },
        "axes": [{"param": "delta_c", "start": -40.0, "stop": 40.0, "count": 5, "spacing": "linear"}],
        "outputs": ["t_l", "t_r"],
        "plot": "auto"
    }"#;

    fn path_of(err: AppError) -> String {
        match err {
            AppError::Config { path, .. } => path,
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn minimal_config_parses() {
        let cfg = load_config(MINIMAL).unwrap();
        let ModelSpec::Single(spec) = cfg.base_spec().unwrap() else { panic!() };
        assert_eq!(spec.omega_c, 200.0);
        assert_eq!(spec.delta_f, 10.0);
        assert_eq!(spec.kappa_c, 2.0);
        assert_eq!(spec.backscatter, 0.0);
        assert_eq!(spec.layout.len(), 10);
        assert_eq!(spec.numerics, Numerics::default());
    }

    #[test]
    fn negative_kappa_c_names_its_path() {
        let text = MINIMAL.replace("\"kappa_c\": 2.0", "\"kappa_c\": -1.0");
        assert_eq!(path_of(load_config(&text).unwrap_err()), "base.kappa_c");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = MINIMAL.replace("\"j\": 0.0,", "\"j\": 0.0, \"extra\": 1,");
        let err = load_config(&text).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
        let text = MINIMAL.replace("\"plot\": \"auto\"", "\"plot\": \"auto\", \"colour\": 1");
        assert!(load_config(&text).is_err());
    }

    #[test]
    fn missing_and_mistyped_keys_are_rejected() {
        let text = MINIMAL.replace("\"j\": 0.0,", "");
        assert!(load_config(&text).unwrap_err().to_string().contains("j"));
        let text = MINIMAL.replace("\"count\": 5", "\"count\": \"five\"");
        assert_eq!(path_of(load_config(&text).unwrap_err()), "axes[0].count");
    }

    #[test]
    fn axis_checks() {
        let text = MINIMAL.replace("\"start\": -40.0", "\"start\": 50.0");
        assert_eq!(path_of(load_config(&text).unwrap_err()), "axes[0].stop");
        let text = MINIMAL.replace("\"param\": \"delta_c\"", "\"param\": \"j_b\"");
        assert_eq!(path_of(load_config(&text).unwrap_err()), "axes[0].param");
        let text = MINIMAL.replace("\"count\": 5", "\"count\": 0");
        assert_eq!(path_of(load_config(&text).unwrap_err()), "axes[0].count");
    }

    #[test]
    fn axis_corners_are_validated() {
        let text = MINIMAL.replace(
            r#"{"param": "delta_c", "start": -40.0, "stop": 40.0, "count": 5, "spacing": "linear"}"#,
            r#"{"param": "kappa_c", "start": -1.0, "stop": 1.0, "count": 3, "spacing": "linear"}"#,
        );
        assert_eq!(path_of(load_config(&text).unwrap_err()), "axes");
    }

    #[test]
    fn two_cavity_outputs_are_restricted() {
        let text = r#"{
            "name": "pair", "model": "two",
            "base": {"omega_c": 200.0,
                "cavity_a": {"omega": 200.0, "delta_f": 10.0, "kappa": 0.5, "kappa1_e": 1.0, "kappa2_e": 1.0, "j": 0.0},
                "cavity_b": {"omega": 200.0, "delta_f": 10.0, "kappa": 0.5, "kappa1_e": 1.0, "kappa2_e": 1.0, "j": 0.0},
                "phi_a_cw": 3.14, "phi_l_cw": 3.14, "phi_b_cw": 3.14},
            "axes": [{"param": "delta_c", "start": -1.0, "stop": 1.0, "count": 3, "spacing": "linear"}],
            "outputs": ["t_l", "chirality"], "plot": "auto"}"#;
        assert_eq!(path_of(load_config(text).unwrap_err()), "outputs[1]");
    }

    #[test]
    fn physical_frequency_source() {
        let text = MINIMAL.replace(
            r#"{"dimensionless": {"omega_c": 200.0, "delta_f": 10.0}}"#,
            r#"{"physical": {"index": 1.4, "radius_m": 4.73e-3, "wavelength_m": 1.55e-6, "angular_speed": 0.97e9, "reference_rate": 1e12}}"#,
        );
        let cfg = load_config(&text).unwrap();
        let ModelSpec::Single(spec) = cfg.base_spec().unwrap() else { panic!() };
        assert!((spec.delta_f / spec.omega_c - 0.0105).abs() < 1e-4);
    }

    #[test]
    fn linear_axis_hits_endpoints() {
        let axis = Axis::linear(Param::DeltaC, -0.3, 0.7, 7);
        let v = axis.values();
        assert_eq!(v[0], -0.3);
        assert_eq!(v[6], 0.7);
        assert_eq!(Axis::linear(Param::N, 3.0, 3.0, 1).values(), vec![3.0]);
    }

    #[test]
    fn serialization_round_trips() {
        let cfg = load_config(MINIMAL).unwrap();
        let again = load_config(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.to_json(), again.to_json());
    }
}
