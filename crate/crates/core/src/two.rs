//! Two spinning cavities `a` and `b`, each touching the waveguide at two
//! points, with no direct cavity-cavity coupling.
//!
//! A probe from the right excites the CW modes, a probe from the left the
//! CCW modes. Photons emitted by one cavity reach the other through the
//! guide, which shows up as the one-way couplings `F_cw` (b → a) and
//! `F_ccw` (a → b).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::sagnac::DirectionalPhases;
use crate::single::TransmissionRecord;
use crate::{ensure_finite, ensure_nonnegative, DriveSide, Error, Numerics, Result};

/// One spinning resonator of the pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resonator {
    /// Stationary resonance frequency `ω_i`.
    pub omega: f64,
    /// Signed Sagnac-Fizeau shift `Δ_F,i`.
    pub delta_f: f64,
    /// Intrinsic decay rate `κ_i`.
    pub kappa: f64,
    /// External coupling at the first point.
    pub kappa1_e: f64,
    /// External coupling at the second point.
    pub kappa2_e: f64,
    /// CW-CCW backscattering `J_i`.
    pub backscatter: f64,
}

impl Resonator {
    /// Total decay `Γ_i = (κ_i + κ1_i + κ2_i)/2`.
    pub fn gamma(&self) -> f64 {
        0.5 * (self.kappa + self.kappa1_e + self.kappa2_e)
    }

    /// `(ω_i − Δ_F,i)/(ω_i + Δ_F,i)`, the CCW/CW wavenumber ratio of photons
    /// emitted by this cavity.
    pub fn wavenumber_ratio(&self) -> f64 {
        (self.omega - self.delta_f) / (self.omega + self.delta_f)
    }

    fn validate(&self) -> Result<()> {
        ensure_finite("omega", self.omega)?;
        ensure_finite("delta_f", self.delta_f)?;
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: "must be positive",
            });
        }
        if self.delta_f.abs() >= self.omega {
            return Err(Error::InvalidParameter {
                name: "delta_f",
                reason: "|delta_f| must be smaller than omega",
            });
        }
        ensure_nonnegative("kappa", self.kappa)?;
        ensure_nonnegative("kappa1_e", self.kappa1_e)?;
        ensure_nonnegative("kappa2_e", self.kappa2_e)?;
        ensure_nonnegative("backscatter", self.backscatter)
    }
}

/// Two-cavity configuration. The three phases are CW values; the CCW ones
/// are derived from the wavenumber ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCavitySpec {
    /// Reference frequency defining the probe detuning `Δ_c = ω_c − ω_l`.
    pub omega_c: f64,
    pub a: Resonator,
    pub b: Resonator,
    /// Phase between the two points of cavity `a`.
    pub phi_a_cw: f64,
    /// Phase from cavity `a` to cavity `b`.
    pub phi_l_cw: f64,
    /// Phase between the two points of cavity `b`.
    pub phi_b_cw: f64,
    pub numerics: Numerics,
}

/// CW and CCW values of the three waveguide phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkPhases {
    pub a: DirectionalPhases,
    pub l: DirectionalPhases,
    pub b: DirectionalPhases,
}

impl TwoCavitySpec {
    pub fn validate(&self) -> Result<()> {
        ensure_finite("omega_c", self.omega_c)?;
        if self.omega_c <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega_c",
                reason: "must be positive",
            });
        }
        self.a.validate()?;
        self.b.validate()?;
        ensure_nonnegative("phi_a_cw", self.phi_a_cw)?;
        ensure_nonnegative("phi_l_cw", self.phi_l_cw)?;
        ensure_nonnegative("phi_b_cw", self.phi_b_cw)?;
        ensure_nonnegative("eps_den", self.numerics.eps_den)
    }

    /// Phases in both directions. Each intra-cavity phase scales with its
    /// own cavity's ratio; the link phase uses the mean of the two.
    pub fn phases(&self) -> LinkPhases {
        let ra = self.a.wavenumber_ratio();
        let rb = self.b.wavenumber_ratio();
        let pair = |cw: f64, ratio: f64| DirectionalPhases { cw, ccw: cw * ratio };
        LinkPhases {
            a: pair(self.phi_a_cw, ra),
            l: pair(self.phi_l_cw, 0.5 * (ra + rb)),
            b: pair(self.phi_b_cw, rb),
        }
    }

    /// Cavity detunings `(Δ_a, Δ_b)` for probe detuning `Δ_c`.
    pub fn detunings(&self, detuning: f64) -> (f64, f64) {
        (
            detuning + (self.a.omega - self.omega_c),
            detuning + (self.b.omega - self.omega_c),
        )
    }
}

/// Complex coefficients of the coupled steady-state equations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkCoefficients {
    pub u_cw: Complex64,
    pub u_ccw: Complex64,
    pub v_cw: Complex64,
    pub v_ccw: Complex64,
    pub a_cw: Complex64,
    pub a_ccw: Complex64,
    pub b_cw: Complex64,
    pub b_ccw: Complex64,
    pub f_cw: Complex64,
    pub f_ccw: Complex64,
}

fn cis(phase: f64) -> Complex64 {
    Complex64::cis(phase)
}

/// Evaluates `U_j, V_j` (dressed mode responses), `A_j, B_j` (drive
/// coefficients) and `F_j` (one-way inter-cavity couplings).
pub fn link_coefficients(spec: &TwoCavitySpec, delta_a: f64, delta_b: f64) -> LinkCoefficients {
    let p = spec.phases();
    let (a, b) = (&spec.a, &spec.b);
    let (s1a, s2a) = (libm::sqrt(a.kappa1_e), libm::sqrt(a.kappa2_e));
    let (s1b, s2b) = (libm::sqrt(b.kappa1_e), libm::sqrt(b.kappa2_e));
    let self_a = s1a * s2a;
    let self_b = s1b * s2b;

    let dressed = |detuning: f64, gamma: f64, self_coupling: f64, phase: f64| {
        Complex64::new(gamma, detuning) + self_coupling * cis(phase)
    };
    let link = |pa: f64, pl: f64, pb: f64| {
        s1a * s1b * cis(pa + pl) + s1a * s2b * cis(pa + pl + pb) + s2a * s1b * cis(pl) + s2a * s2b * cis(pl + pb)
    };

    LinkCoefficients {
        u_cw: dressed(delta_a + a.delta_f, a.gamma(), self_a, p.a.cw),
        u_ccw: dressed(delta_a - a.delta_f, a.gamma(), self_a, p.a.ccw),
        v_cw: dressed(delta_b + b.delta_f, b.gamma(), self_b, p.b.cw),
        v_ccw: dressed(delta_b - b.delta_f, b.gamma(), self_b, p.b.ccw),
        a_cw: s1a * cis(p.a.cw + p.l.cw + p.b.cw) + s2a * cis(p.l.cw + p.b.cw),
        a_ccw: s1a + s2a * cis(p.a.ccw),
        b_cw: s1b * cis(p.b.cw) + s2b,
        b_ccw: s1b * cis(p.a.ccw + p.l.ccw) + s2b * cis(p.a.ccw + p.l.ccw + p.b.ccw),
        f_cw: link(p.a.cw, p.l.cw, p.b.cw),
        f_ccw: link(p.a.ccw, p.l.ccw, p.b.ccw),
    }
}

/// Steady-state amplitudes of the driven pair and the resulting
/// transmission.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveResponse {
    /// Amplitude of the driven mode of cavity `a`.
    pub cavity_a: Complex64,
    /// Amplitude of the driven mode of cavity `b`.
    pub cavity_b: Complex64,
    pub transmission: f64,
}

struct Determinant {
    p: Complex64,
    q: Complex64,
    d: Complex64,
}

fn determinant(spec: &TwoCavitySpec, c: &LinkCoefficients, detuning: f64) -> Result<Determinant> {
    let (ja, jb) = (spec.a.backscatter, spec.b.backscatter);
    let p = c.u_cw * c.u_ccw + ja * ja;
    let q = c.v_cw * c.v_ccw + jb * jb;
    let cross = ja * jb * c.f_cw * c.f_ccw;
    let d = p * q + cross;
    let (ga, gb) = (spec.a.gamma(), spec.b.gamma());
    let scale = ((c.u_cw.norm() + ga) * (c.u_ccw.norm() + ga) + ja * ja)
        * ((c.v_cw.norm() + gb) * (c.v_ccw.norm() + gb) + jb * jb)
        + cross.norm();
    if d.norm() <= spec.numerics.eps_den * scale || d.norm() == 0.0 {
        return Err(Error::Pole {
            detuning,
            magnitude: d.norm(),
        });
    }
    Ok(Determinant { p, q, d })
}

/// Right-side probe: CW amplitudes of both cavities and `T_R`.
pub fn transmission_right_drive(spec: &TwoCavitySpec, detuning: f64) -> Result<DriveResponse> {
    spec.validate()?;
    ensure_finite("detuning", detuning)?;
    let (da, db) = spec.detunings(detuning);
    let c = link_coefficients(spec, da, db);
    let Determinant { p, q, d } = determinant(spec, &c, detuning)?;
    let jj = spec.a.backscatter * spec.b.backscatter;
    let a_cw = (c.u_ccw * q * c.a_cw - c.u_ccw * c.v_ccw * c.f_cw * c.b_cw) / d;
    let b_cw = (c.v_ccw * p * c.b_cw + jj * c.f_ccw * c.a_cw) / d;
    let amplitudes = [a_cw, Complex64::new(0.0, 0.0), b_cw, Complex64::new(0.0, 0.0)];
    Ok(DriveResponse {
        cavity_a: a_cw,
        cavity_b: b_cw,
        transmission: output_amplitude(spec, DriveSide::Right, &amplitudes).norm_sqr(),
    })
}

/// Left-side probe: CCW amplitudes of both cavities and `T_L`.
pub fn transmission_left_drive(spec: &TwoCavitySpec, detuning: f64) -> Result<DriveResponse> {
    spec.validate()?;
    ensure_finite("detuning", detuning)?;
    let (da, db) = spec.detunings(detuning);
    let c = link_coefficients(spec, da, db);
    let Determinant { p, q, d } = determinant(spec, &c, detuning)?;
    let jj = spec.a.backscatter * spec.b.backscatter;
    let a_ccw = (c.u_cw * q * c.a_ccw + jj * c.f_cw * c.b_ccw) / d;
    let b_ccw = (c.v_cw * p * c.b_ccw - c.u_cw * c.v_cw * c.f_ccw * c.a_ccw) / d;
    let amplitudes = [Complex64::new(0.0, 0.0), a_ccw, Complex64::new(0.0, 0.0), b_ccw];
    Ok(DriveResponse {
        cavity_a: a_ccw,
        cavity_b: b_ccw,
        transmission: output_amplitude(spec, DriveSide::Left, &amplitudes).norm_sqr(),
    })
}

/// Output field divided by the probe amplitude, for mode amplitudes
/// `[a_cw, a_ccw, b_cw, b_ccw]` driven from `side`. A right probe leaves
/// through the left end (`a_1,out`), a left probe through the right end.
pub fn output_amplitude(spec: &TwoCavitySpec, side: DriveSide, amplitudes: &[Complex64]) -> Complex64 {
    let p = spec.phases();
    let (s1a, s2a) = (libm::sqrt(spec.a.kappa1_e), libm::sqrt(spec.a.kappa2_e));
    let (s1b, s2b) = (libm::sqrt(spec.b.kappa1_e), libm::sqrt(spec.b.kappa2_e));
    match side {
        DriveSide::Right => {
            let (pa, pl, pb) = (p.a.cw, p.l.cw, p.b.cw);
            cis(pa + pl + pb)
                - (s1a + s2a * cis(pa)) * amplitudes[0]
                - (s1b * cis(pa + pl) + s2b * cis(pa + pl + pb)) * amplitudes[2]
        }
        DriveSide::Left => {
            let (pa, pl, pb) = (p.a.ccw, p.l.ccw, p.b.ccw);
            cis(pa + pl + pb)
                - (s2b + s1b * cis(pb)) * amplitudes[3]
                - (s2a * cis(pl + pb) + s1a * cis(pa + pl + pb)) * amplitudes[1]
        }
    }
}

/// Transmission `|output|²` for given mode amplitudes.
pub fn transmission_from_amplitudes(spec: &TwoCavitySpec, side: DriveSide, amplitudes: &[Complex64]) -> f64 {
    output_amplitude(spec, side, amplitudes).norm_sqr()
}

/// Isolation ratio in dB, `−10 log10(T_L/T_R)`.
pub fn isolation(t_left: f64, t_right: f64) -> Result<f64> {
    if !(t_left > 0.0 && t_right > 0.0) || !t_left.is_finite() || !t_right.is_finite() {
        return Err(Error::Undefined("isolation with a non-positive transmission"));
    }
    Ok(-10.0 * libm::log10(t_left / t_right))
}

/// Both transmissions and the isolation at one detuning.
pub fn evaluate(spec: &TwoCavitySpec, detuning: f64) -> Result<TransmissionRecord> {
    let t_left = transmission_left_drive(spec, detuning)?.transmission;
    let t_right = transmission_right_drive(spec, detuning)?.transmission;
    Ok(TransmissionRecord {
        detuning,
        t_left,
        t_right,
        isolation: isolation(t_left, t_right).ok(),
    })
}

/// Transmission records over a strictly increasing detuning grid.
pub fn spectrum(spec: &TwoCavitySpec, grid: &[f64]) -> Result<Vec<TransmissionRecord>> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "must not be empty",
        });
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "must be strictly increasing",
        });
    }
    grid.iter().map(|&d| evaluate(spec, d)).collect()
}

/// Mean-field equations in the frame rotating at the probe frequency,
/// written as `M x = b` for `x = [a_cw, a_ccw, b_cw, b_ccw]`; the dynamics
/// are `dx/dt = b − M x`.
pub fn steady_state_system(
    spec: &TwoCavitySpec,
    detuning: f64,
    side: DriveSide,
    amplitude: f64,
) -> Result<(Matrix, Vec<Complex64>)> {
    spec.validate()?;
    ensure_finite("detuning", detuning)?;
    ensure_finite("amplitude", amplitude)?;
    let (da, db) = spec.detunings(detuning);
    let c = link_coefficients(spec, da, db);
    let zero = Complex64::new(0.0, 0.0);
    let ja = Complex64::new(0.0, spec.a.backscatter);
    let jb = Complex64::new(0.0, spec.b.backscatter);
    let matrix = Matrix::from_rows([
        [c.u_cw, ja, c.f_cw, zero],
        [ja, c.u_ccw, zero, zero],
        [zero, zero, c.v_cw, jb],
        [zero, c.f_ccw, jb, c.v_ccw],
    ]);
    let rhs = match side {
        DriveSide::Right => alloc::vec![c.a_cw * amplitude, zero, c.b_cw * amplitude, zero],
        DriveSide::Left => alloc::vec![zero, c.a_ccw * amplitude, zero, c.b_ccw * amplitude],
    };
    Ok((matrix, rhs))
}

/// Steady state `[a_cw, a_ccw, b_cw, b_ccw]` from a direct dense solve,
/// independent of the closed-form elimination.
pub fn generic_steady_solve(spec: &TwoCavitySpec, detuning: f64, side: DriveSide) -> Result<[Complex64; 4]> {
    let (matrix, rhs) = steady_state_system(spec, detuning, side, 1.0)?;
    let x = matrix.solve(&rhs).map_err(|_| Error::Pole {
        detuning,
        magnitude: 0.0,
    })?;
    Ok([x[0], x[1], x[2], x[3]])
}
