//! One spinning cavity coupled to the waveguide at `N` points.
//!
//! The CW mode is driven from the left end of the waveguide and the CCW mode
//! from the right end. Interference between re-emitted photons at the
//! different points renormalizes each mode's frequency and decay rate; the
//! Sagnac shift makes the accumulated phases, and therefore the
//! renormalization, direction dependent.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::sagnac::{directional_phases, DirectionalPhases};
use crate::two::isolation;
use crate::{ensure_finite, ensure_nonnegative, Direction, DriveSide, Error, Numerics, Result};

/// External coupling at one point of the waveguide.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingPoint {
    pub kappa_e: f64,
    /// Rest-frame phase `ω_c x_m / c` of the point, radians.
    pub phase: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CouplingLayout {
    /// `points` equally strong couplings, neighbours separated by the
    /// rest-frame phase `theta_c`.
    Symmetric {
        points: usize,
        kappa_e: f64,
        theta_c: f64,
    },
    /// Arbitrary strengths and positions, ordered along the waveguide.
    Irregular(Vec<CouplingPoint>),
}

impl CouplingLayout {
    pub fn len(&self) -> usize {
        match self {
            CouplingLayout::Symmetric { points, .. } => *points,
            CouplingLayout::Irregular(points) => points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<CouplingPoint> {
        match self {
            CouplingLayout::Symmetric {
                points,
                kappa_e,
                theta_c,
            } => (0..*points)
                .map(|m| CouplingPoint {
                    kappa_e: *kappa_e,
                    phase: m as f64 * theta_c,
                })
                .collect(),
            CouplingLayout::Irregular(points) => points.clone(),
        }
    }

    pub fn total_kappa_e(&self) -> f64 {
        match self {
            CouplingLayout::Symmetric {
                points, kappa_e, ..
            } => *points as f64 * kappa_e,
            CouplingLayout::Irregular(points) => points.iter().map(|p| p.kappa_e).sum(),
        }
    }
}

/// Dimensionless description of a spinning cavity with multiple coupling
/// points. All rates share one unit.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleCavitySpec {
    pub omega_c: f64,
    /// Signed Sagnac-Fizeau shift; the CW mode sits at `ω_c + Δ_F`.
    pub delta_f: f64,
    /// Intrinsic decay rate `κ_c`.
    pub kappa_c: f64,
    /// CW-CCW backscattering coupling `J`.
    pub backscatter: f64,
    pub layout: CouplingLayout,
    pub numerics: Numerics,
}

impl SingleCavitySpec {
    /// Symmetric layout with default numerics.
    pub fn symmetric(
        omega_c: f64,
        delta_f: f64,
        kappa_c: f64,
        backscatter: f64,
        points: usize,
        kappa_e: f64,
        theta_c: f64,
    ) -> Self {
        Self {
            omega_c,
            delta_f,
            kappa_c,
            backscatter,
            layout: CouplingLayout::Symmetric {
                points,
                kappa_e,
                theta_c,
            },
            numerics: Numerics::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("omega_c", self.omega_c)?;
        ensure_finite("delta_f", self.delta_f)?;
        if self.omega_c <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "omega_c",
                reason: "must be positive",
            });
        }
        if self.delta_f.abs() >= self.omega_c {
            return Err(Error::InvalidParameter {
                name: "delta_f",
                reason: "|delta_f| must be smaller than omega_c",
            });
        }
        ensure_nonnegative("kappa_c", self.kappa_c)?;
        ensure_nonnegative("backscatter", self.backscatter)?;
        match &self.layout {
            CouplingLayout::Symmetric {
                points,
                kappa_e,
                theta_c,
            } => {
                if *points == 0 {
                    return Err(Error::InvalidParameter {
                        name: "points",
                        reason: "at least one coupling point is required",
                    });
                }
                ensure_nonnegative("kappa_e", *kappa_e)?;
                ensure_nonnegative("theta_c", *theta_c)?;
            }
            CouplingLayout::Irregular(points) => {
                if points.is_empty() {
                    return Err(Error::InvalidParameter {
                        name: "points",
                        reason: "at least one coupling point is required",
                    });
                }
                let mut previous = f64::NEG_INFINITY;
                for point in points {
                    ensure_nonnegative("kappa_e", point.kappa_e)?;
                    ensure_finite("phase", point.phase)?;
                    if point.phase < previous {
                        return Err(Error::InvalidParameter {
                            name: "phase",
                            reason: "coupling-point phases must be nondecreasing",
                        });
                    }
                    previous = point.phase;
                }
            }
        }
        self.numerics_valid()
    }

    fn numerics_valid(&self) -> Result<()> {
        ensure_nonnegative("eps_sing", self.numerics.eps_sing)?;
        ensure_nonnegative("eps_den", self.numerics.eps_den)
    }

    /// Bare decay rate `Γ_c = κ_c/2 + Σ κ_m/2`.
    pub fn gamma_c(&self) -> f64 {
        0.5 * self.kappa_c + 0.5 * self.layout.total_kappa_e()
    }

    /// Factor `1 ± Δ_F/ω_c` converting rest-frame phases to the phases
    /// seen by photons emitted in `direction`.
    pub fn phase_scale(&self, direction: Direction) -> f64 {
        1.0 + direction.sign() * self.delta_f / self.omega_c
    }

    /// CW/CCW neighbour phases of a symmetric layout.
    pub fn neighbour_phases(&self) -> Option<DirectionalPhases> {
        match self.layout {
            CouplingLayout::Symmetric { theta_c, .. } => {
                directional_phases(theta_c, self.delta_f, self.omega_c).ok()
            }
            CouplingLayout::Irregular(_) => None,
        }
    }
}

/// Collective frequency shift and decay rate of one mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollectiveRates {
    pub shift: f64,
    pub decay: f64,
}

/// Collective shifts `Δ_j`, decay rates `Γ_j` and couplings `Γ'_j` of both
/// modes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeRates {
    pub delta_cw: f64,
    pub delta_ccw: f64,
    pub gamma_cw: f64,
    pub gamma_ccw: f64,
    pub gammap_cw: f64,
    pub gammap_ccw: f64,
}

impl ModeRates {
    pub fn shift(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Cw => self.delta_cw,
            Direction::Ccw => self.delta_ccw,
        }
    }

    pub fn decay(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Cw => self.gamma_cw,
            Direction::Ccw => self.gamma_ccw,
        }
    }

    pub fn coupling(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Cw => self.gammap_cw,
            Direction::Ccw => self.gammap_ccw,
        }
    }

    pub fn chirality(&self) -> Result<f64> {
        chirality(self.gamma_cw, self.gamma_ccw)
    }
}

/// One spectral sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransmissionRecord {
    /// `Δ_c = ω_c − ω_l`.
    pub detuning: f64,
    pub t_left: f64,
    pub t_right: f64,
    /// Isolation in dB; `None` when either transmission vanishes.
    pub isolation: Option<f64>,
}

/// Shift and decay rate from the pairwise interference sum over all
/// coupling points, `Γ_j + iΔ_j = Γ_c + Σ_{m>n} √(κ_m κ_n) e^{iφ_mn}`.
pub fn collective_rates_general(spec: &SingleCavitySpec, direction: Direction) -> Result<CollectiveRates> {
    spec.validate()?;
    let scale = spec.phase_scale(direction);
    let points = spec.layout.points();
    let mut sum = Complex64::new(0.0, 0.0);
    for (m, later) in points.iter().enumerate() {
        for earlier in &points[..m] {
            let phase = (later.phase - earlier.phase) * scale;
            sum += libm::sqrt(later.kappa_e * earlier.kappa_e) * Complex64::cis(phase);
        }
    }
    Ok(CollectiveRates {
        shift: sum.im,
        decay: spec.gamma_c() + sum.re,
    })
}

/// Closed-form shift and decay rate for `n` equal couplings spaced by the
/// directional phase `theta`.
///
/// `Δ = (κ_e/2)(N sin θ − sin Nθ)/(1 − cos θ)`,
/// `Γ = κ_c/2 + (κ_e/2)(1 − cos Nθ)/(1 − cos θ)`. Inside the singular band
/// `|1 − cos θ| < eps_sing` the regular finite sums are used instead; they
/// reduce to `Δ = 0`, `Γ = κ_c/2 + N²κ_e/2` at multiples of 2π.
pub fn collective_rates_symmetric(
    n: usize,
    theta: f64,
    kappa_e: f64,
    kappa_c: f64,
    numerics: &Numerics,
) -> CollectiveRates {
    let reduced = reduce_angle(theta);
    let half_sin = libm::sin(0.5 * reduced);
    let one_minus_cos = 2.0 * half_sin * half_sin;
    let (shift_ratio, decay_ratio) = if one_minus_cos < numerics.eps_sing {
        dirichlet_sums(n, reduced)
    } else {
        let nf = n as f64;
        let numerator = shift_numerator(nf, reduced);
        let outer = libm::sin(0.5 * nf * reduced);
        (numerator / one_minus_cos, 2.0 * outer * outer / one_minus_cos)
    };
    CollectiveRates {
        shift: 0.5 * kappa_e * shift_ratio,
        decay: 0.5 * kappa_c + 0.5 * kappa_e * decay_ratio,
    }
}

/// Closed-form collective coupling `Γ' = κ_e (1 − cos Nθ)/(1 − cos θ)`.
pub fn collective_coupling(n: usize, theta: f64, kappa_e: f64, numerics: &Numerics) -> f64 {
    2.0 * (collective_rates_symmetric(n, theta, kappa_e, 0.0, numerics).decay)
}

/// `Γ'_j = |Σ_m √κ_m e^{iφ_m}|²` for arbitrary points, with the rest-frame
/// phases multiplied by `scale`.
pub fn collective_coupling_general(points: &[CouplingPoint], scale: f64) -> f64 {
    phased_sum(points, scale).norm_sqr()
}

fn phased_sum(points: &[CouplingPoint], scale: f64) -> Complex64 {
    points
        .iter()
        .map(|p| libm::sqrt(p.kappa_e) * Complex64::cis(p.phase * scale))
        .sum()
}

/// Maps `theta` into `[−π, π]`.
fn reduce_angle(theta: f64) -> f64 {
    let turns = libm::round(theta / (2.0 * PI));
    theta - turns * 2.0 * PI
}

/// `N sin x − sin Nx`, by series when `Nx` is small to avoid cancellation.
fn shift_numerator(n: f64, x: f64) -> f64 {
    if libm::fabs(n * x) >= 0.5 {
        return n * libm::sin(x) - libm::sin(n * x);
    }
    // Σ_{k≥1} (−1)^{k+1} ((Nx)^{2k+1} − N x^{2k+1}) / (2k+1)!
    let nx = n * x;
    let (nx2, x2) = (nx * nx, x * x);
    let mut big = nx; // (Nx)^{2k+1}
    let mut small = x; // x^{2k+1}
    let mut factorial = 1.0;
    let mut sum = 0.0;
    for k in 1..30 {
        big *= nx2;
        small *= x2;
        factorial *= ((2 * k) * (2 * k + 1)) as f64;
        let term = (big - n * small) / factorial;
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if libm::fabs(term) <= 1e-18 * libm::fabs(sum) {
            break;
        }
    }
    sum
}

/// `(2 Σ_{k=1}^{N−1} (N−k) sin kx, N + 2 Σ_{k=1}^{N−1} (N−k) cos kx)`, the
/// regular forms of the two interference ratios.
fn dirichlet_sums(n: usize, x: f64) -> (f64, f64) {
    let mut shift = 0.0;
    let mut decay = n as f64;
    for k in 1..n {
        let weight = 2.0 * (n - k) as f64;
        let angle = k as f64 * x;
        shift += weight * libm::sin(angle);
        decay += weight * libm::cos(angle);
    }
    (shift, decay)
}

/// Chirality `(Γ_cw − Γ_ccw)/(Γ_cw + Γ_ccw)`.
pub fn chirality(gamma_cw: f64, gamma_ccw: f64) -> Result<f64> {
    ensure_finite("gamma_cw", gamma_cw)?;
    ensure_finite("gamma_ccw", gamma_ccw)?;
    let total = gamma_cw + gamma_ccw;
    if total <= 0.0 {
        return Err(Error::Undefined("chirality with vanishing total decay"));
    }
    Ok((gamma_cw - gamma_ccw) / total)
}

/// Collective rates of both modes. Symmetric layouts use the closed forms,
/// irregular ones the general sums.
pub fn mode_rates(spec: &SingleCavitySpec) -> Result<ModeRates> {
    spec.validate()?;
    match spec.layout {
        CouplingLayout::Symmetric {
            points,
            kappa_e,
            theta_c,
        } => {
            let eval = |direction: Direction| {
                let theta = theta_c * spec.phase_scale(direction);
                let rates =
                    collective_rates_symmetric(points, theta, kappa_e, spec.kappa_c, &spec.numerics);
                let coupling = collective_coupling(points, theta, kappa_e, &spec.numerics);
                (rates, coupling)
            };
            let (cw, gp_cw) = eval(Direction::Cw);
            let (ccw, gp_ccw) = eval(Direction::Ccw);
            Ok(ModeRates {
                delta_cw: cw.shift,
                delta_ccw: ccw.shift,
                gamma_cw: cw.decay,
                gamma_ccw: ccw.decay,
                gammap_cw: gp_cw,
                gammap_ccw: gp_ccw,
            })
        }
        CouplingLayout::Irregular(ref points) => {
            let cw = collective_rates_general(spec, Direction::Cw)?;
            let ccw = collective_rates_general(spec, Direction::Ccw)?;
            Ok(ModeRates {
                delta_cw: cw.shift,
                delta_ccw: ccw.shift,
                gamma_cw: cw.decay,
                gamma_ccw: ccw.decay,
                gammap_cw: collective_coupling_general(points, spec.phase_scale(Direction::Cw)),
                gammap_ccw: collective_coupling_general(points, spec.phase_scale(Direction::Ccw)),
            })
        }
    }
}

/// Complex response factors `P_cw = i(Δ_c + Δ_F + Δ_cw) + Γ_cw`,
/// `P_ccw = i(Δ_c − Δ_F + Δ_ccw) + Γ_ccw` and the determinant
/// `D = P_cw P_ccw + J²`, checked against the pole threshold. The bare
/// linewidth `Γ_c` enters the term scale so that fully dark modes still
/// register as poles.
struct Response {
    p_cw: Complex64,
    p_ccw: Complex64,
    det: Complex64,
}

fn response(spec: &SingleCavitySpec, rates: &ModeRates, detuning: f64) -> Result<Response> {
    ensure_finite("detuning", detuning)?;
    let p_cw = Complex64::new(rates.gamma_cw, detuning + spec.delta_f + rates.delta_cw);
    let p_ccw = Complex64::new(rates.gamma_ccw, detuning - spec.delta_f + rates.delta_ccw);
    let j2 = spec.backscatter * spec.backscatter;
    let det = p_cw * p_ccw + j2;
    let bare = spec.gamma_c();
    let scale = (p_cw.norm() + bare) * (p_ccw.norm() + bare) + j2;
    if det.norm() <= spec.numerics.eps_den * scale || det.norm() == 0.0 {
        return Err(Error::Pole {
            detuning,
            magnitude: det.norm(),
        });
    }
    Ok(Response { p_cw, p_ccw, det })
}

fn transmission_with(
    spec: &SingleCavitySpec,
    rates: &ModeRates,
    detuning: f64,
    side: DriveSide,
) -> Result<f64> {
    let coupling = match side {
        DriveSide::Left => rates.gammap_cw,
        DriveSide::Right => rates.gammap_ccw,
    };
    if coupling == 0.0 {
        // The driven mode is dark; nothing is scattered out of the guide.
        ensure_finite("detuning", detuning)?;
        return Ok(1.0);
    }
    let r = response(spec, rates, detuning)?;
    let partner = match side {
        DriveSide::Left => r.p_ccw,
        DriveSide::Right => r.p_cw,
    };
    Ok((Complex64::new(1.0, 0.0) - partner * coupling / r.det).norm_sqr())
}

/// Transmission of a probe entering from the left,
/// `T_L = |1 − P_ccw Γ'_cw / (P_cw P_ccw + J²)|²`.
pub fn transmission_left(spec: &SingleCavitySpec, detuning: f64) -> Result<f64> {
    let rates = mode_rates(spec)?;
    transmission_with(spec, &rates, detuning, DriveSide::Left)
}

/// Transmission of a probe entering from the right,
/// `T_R = |1 − P_cw Γ'_ccw / (P_cw P_ccw + J²)|²`.
pub fn transmission_right(spec: &SingleCavitySpec, detuning: f64) -> Result<f64> {
    let rates = mode_rates(spec)?;
    transmission_with(spec, &rates, detuning, DriveSide::Right)
}

/// Both transmissions and the isolation at one detuning.
pub fn evaluate(spec: &SingleCavitySpec, detuning: f64) -> Result<TransmissionRecord> {
    let rates = mode_rates(spec)?;
    record(spec, &rates, detuning)
}

fn record(spec: &SingleCavitySpec, rates: &ModeRates, detuning: f64) -> Result<TransmissionRecord> {
    let t_left = transmission_with(spec, rates, detuning, DriveSide::Left)?;
    let t_right = transmission_with(spec, rates, detuning, DriveSide::Right)?;
    Ok(TransmissionRecord {
        detuning,
        t_left,
        t_right,
        isolation: isolation(t_left, t_right).ok(),
    })
}

/// Transmission records over a strictly increasing detuning grid.
pub fn spectrum(spec: &SingleCavitySpec, grid: &[f64]) -> Result<Vec<TransmissionRecord>> {
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
    let rates = mode_rates(spec)?;
    grid.iter().map(|&d| record(spec, &rates, d)).collect()
}

/// Drive coefficient `Σ_m √κ_m e^{iφ}` of the mode excited from `side`,
/// with phases measured from the entry point.
fn drive_coefficient(spec: &SingleCavitySpec, points: &[CouplingPoint], side: DriveSide) -> Complex64 {
    match side {
        DriveSide::Left => {
            let s = spec.phase_scale(Direction::Cw);
            let first = points[0].phase;
            points
                .iter()
                .map(|p| libm::sqrt(p.kappa_e) * Complex64::cis((p.phase - first) * s))
                .sum()
        }
        DriveSide::Right => {
            let s = spec.phase_scale(Direction::Ccw);
            let last = points[points.len() - 1].phase;
            points
                .iter()
                .map(|p| libm::sqrt(p.kappa_e) * Complex64::cis((last - p.phase) * s))
                .sum()
        }
    }
}

/// Closed-form steady state `[⟨c_cw⟩, ⟨c_ccw⟩]` for a unit probe from
/// `side`, in the frame rotating at the probe frequency.
pub fn steady_state(spec: &SingleCavitySpec, detuning: f64, side: DriveSide) -> Result<[Complex64; 2]> {
    let rates = mode_rates(spec)?;
    let r = response(spec, &rates, detuning)?;
    let points = spec.layout.points();
    let drive = drive_coefficient(spec, &points, side);
    let cross = Complex64::new(0.0, -spec.backscatter) * drive / r.det;
    Ok(match side {
        DriveSide::Left => [r.p_ccw * drive / r.det, cross],
        DriveSide::Right => [cross, r.p_cw * drive / r.det],
    })
}

/// Linear system `M x = b` whose solution is the steady state; the
/// equations of motion in the rotating frame are `dx/dt = b − M x` with
/// `x = [c_cw, c_ccw]`.
pub fn steady_state_system(
    spec: &SingleCavitySpec,
    detuning: f64,
    side: DriveSide,
    amplitude: f64,
) -> Result<(Matrix, Vec<Complex64>)> {
    ensure_finite("detuning", detuning)?;
    ensure_finite("amplitude", amplitude)?;
    let rates = mode_rates(spec)?;
    let p_cw = Complex64::new(rates.gamma_cw, detuning + spec.delta_f + rates.delta_cw);
    let p_ccw = Complex64::new(rates.gamma_ccw, detuning - spec.delta_f + rates.delta_ccw);
    let coupling = Complex64::new(0.0, spec.backscatter);
    let matrix = Matrix::from_rows([[p_cw, coupling], [coupling, p_ccw]]);
    let points = spec.layout.points();
    let drive = drive_coefficient(spec, &points, side) * amplitude;
    let zero = Complex64::new(0.0, 0.0);
    let rhs = match side {
        DriveSide::Left => alloc::vec![drive, zero],
        DriveSide::Right => alloc::vec![zero, drive],
    };
    Ok((matrix, rhs))
}

/// Steady state from a direct dense solve of the mean-field equations.
pub fn generic_steady_solve(spec: &SingleCavitySpec, detuning: f64, side: DriveSide) -> Result<[Complex64; 2]> {
    let (matrix, rhs) = steady_state_system(spec, detuning, side, 1.0)?;
    let x = matrix.solve(&rhs).map_err(|_| Error::Pole {
        detuning,
        magnitude: 0.0,
    })?;
    Ok([x[0], x[1]])
}

/// Output field at the far end of the guide, divided by the probe
/// amplitude, for cavity amplitudes `[c_cw, c_ccw]` driven from `side`.
pub fn output_amplitude(spec: &SingleCavitySpec, side: DriveSide, amplitudes: &[Complex64]) -> Complex64 {
    let points = spec.layout.points();
    let first = points[0].phase;
    let last = points[points.len() - 1].phase;
    match side {
        DriveSide::Left => {
            let s = spec.phase_scale(Direction::Cw);
            let emitted: Complex64 = points
                .iter()
                .map(|p| libm::sqrt(p.kappa_e) * Complex64::cis((last - p.phase) * s))
                .sum();
            Complex64::cis((last - first) * s) - emitted * amplitudes[0]
        }
        DriveSide::Right => {
            let s = spec.phase_scale(Direction::Ccw);
            let emitted: Complex64 = points
                .iter()
                .map(|p| libm::sqrt(p.kappa_e) * Complex64::cis((p.phase - first) * s))
                .sum();
            Complex64::cis((last - first) * s) - emitted * amplitudes[1]
        }
    }
}

/// Transmission `|output|²` for given cavity amplitudes.
pub fn transmission_from_amplitudes(spec: &SingleCavitySpec, side: DriveSide, amplitudes: &[Complex64]) -> f64 {
    output_amplitude(spec, side, amplitudes).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    const TAU: f64 = 2.0 * PI;

    fn fig2(theta_turns: f64, n: usize) -> SingleCavitySpec {
        SingleCavitySpec::symmetric(1.0, 0.05, 0.0, 0.0, n, 1.0, theta_turns * TAU)
    }

    #[test]
    fn single_point_has_no_collective_effects() {
        let spec = SingleCavitySpec::symmetric(200.0, 10.0, 0.7, 0.0, 1, 1.3, 2.1);
        let rates = mode_rates(&spec).unwrap();
        assert_eq!(rates.delta_cw, 0.0);
        assert_eq!(rates.delta_ccw, 0.0);
        assert_eq!(rates.gamma_cw, 1.0);
        assert_eq!(rates.gamma_ccw, 1.0);
        let general = collective_rates_general(&spec, Direction::Cw).unwrap();
        assert_eq!(general.shift, 0.0);
        assert_eq!(general.decay, 1.0);
        assert_eq!(rates.chirality().unwrap(), 0.0);
    }

    #[test]
    fn quarter_wave_pair() {
        // Two points with a CW phase of π/2 and no rotation: the single pair
        // term contributes κ to both the shift and the decay.
        let spec = SingleCavitySpec::symmetric(1.0, 0.0, 0.0, 0.0, 2, 2.0, 0.5 * PI);
        let cw = collective_rates_general(&spec, Direction::Cw).unwrap();
        assert!((cw.shift - 2.0).abs() < 1e-15);
        assert!((cw.decay - 2.0).abs() < 1e-15);
        let closed = collective_rates_symmetric(2, 0.5 * PI, 2.0, 0.0, &Numerics::default());
        assert!((closed.shift - 2.0).abs() < 1e-14);
        assert!((closed.decay - 2.0).abs() < 1e-14);
    }

    #[test]
    fn no_rotation_is_direction_blind() {
        let spec = SingleCavitySpec::symmetric(1.0, 0.0, 0.2, 0.0, 7, 0.5, 1.234);
        let r = mode_rates(&spec).unwrap();
        assert_eq!(r.delta_cw, r.delta_ccw);
        assert_eq!(r.gamma_cw, r.gamma_ccw);
    }

    #[test]
    fn constructive_limit() {
        let numerics = Numerics::default();
        for theta in [0.0, TAU, 2.0 * TAU] {
            let r = collective_rates_symmetric(10, theta, 1.0, 0.4, &numerics);
            assert_eq!(r.shift, 0.0);
            assert!((r.decay - (0.2 + 50.0)).abs() < 1e-12, "{theta}: {}", r.decay);
            assert!((collective_coupling(10, theta, 1.0, &numerics) - 100.0).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_band_matches_ratio_form() {
        let regular = Numerics::default();
        let ratio_only = Numerics {
            eps_sing: 0.0,
            ..Numerics::default()
        };
        for delta in [1e-5, 3e-5, -2e-5] {
            let a = collective_rates_symmetric(20, TAU + delta, 1.0, 0.0, &regular);
            let b = collective_rates_symmetric(20, TAU + delta, 1.0, 0.0, &ratio_only);
            assert!((a.decay - b.decay).abs() < 1e-10 * b.decay);
            assert!((a.shift - b.shift).abs() < 1e-10 * b.decay);
        }
    }

    #[test]
    fn reference_chirality_values() {
        // Γ_cw at θ = 0.9975·2π and Γ_ccw at 0.9025·2π, evaluated by hand
        // from the closed form: 49.9 and 0.034 in units of κ_e.
        let r = mode_rates(&fig2(0.95, 10)).unwrap();
        assert!((r.gamma_cw - 49.9).abs() < 0.05, "{}", r.gamma_cw);
        assert!((r.gamma_ccw - 0.034).abs() < 0.001, "{}", r.gamma_ccw);
        assert!((r.gammap_ccw - 0.068).abs() < 0.001, "{}", r.gammap_ccw);
        let c = r.chirality().unwrap();
        assert!((c - 0.9986).abs() < 2e-4, "{c}");
        let switched = mode_rates(&fig2(1.05, 10)).unwrap().chirality().unwrap();
        assert!(switched < -0.99);
    }

    #[test]
    fn chirality_edges() {
        assert_eq!(chirality(3.0, 3.0).unwrap(), 0.0);
        assert_eq!(chirality(50.0, 0.0).unwrap(), 1.0);
        assert_eq!(chirality(0.0, 2.0).unwrap(), -1.0);
        assert!(matches!(chirality(0.0, 0.0), Err(Error::Undefined(_))));
    }

    #[test]
    fn dark_state_coupling_vanishes() {
        let numerics = Numerics::default();
        for n in [2usize, 3, 5, 10] {
            let gp = collective_coupling(n, TAU / n as f64, 1.0, &numerics);
            assert!(gp.abs() < 1e-28, "{n}: {gp}");
        }
        assert!((collective_coupling(1, 0.7, 2.5, &numerics) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn decoupled_cavity_transmits_everything() {
        let spec = SingleCavitySpec::symmetric(100.0, 5.0, 1.0, 2.0, 4, 0.0, 1.0);
        for d in [-10.0, -5.0, 0.0, 5.0, 10.0] {
            assert_eq!(transmission_left(&spec, d).unwrap(), 1.0);
            assert_eq!(transmission_right(&spec, d).unwrap(), 1.0);
        }
    }

    #[test]
    fn critical_coupling_extinguishes() {
        let spec = SingleCavitySpec::symmetric(100.0, 0.0, 1.0, 0.0, 1, 1.0, 0.0);
        assert!(transmission_left(&spec, 0.0).unwrap() < 1e-30);
    }

    #[test]
    fn exact_pole_errors() {
        let spec = SingleCavitySpec::symmetric(100.0, 0.0, 0.0, 0.0, 2, 1.0, PI);
        // Γ = 0 and Δ = 0 at θ = π for N = 2 while Γ' is a rounding residue.
        let rates = mode_rates(&spec).unwrap();
        assert!(rates.gamma_cw.abs() < 1e-15);
        let err = response(&spec, &rates, 0.0);
        assert!(matches!(err, Err(Error::Pole { .. })));
    }

    #[test]
    fn spectrum_checks_grid() {
        let spec = fig2(0.95, 3);
        assert!(spectrum(&spec, &[]).is_err());
        assert!(spectrum(&spec, &[1.0, 1.0]).is_err());
        let one = spectrum(&spec, &[0.3]).unwrap();
        assert_eq!(one[0], evaluate(&spec, 0.3).unwrap());
        assert_eq!(one[0].t_left, transmission_left(&spec, 0.3).unwrap());
    }

    #[test]
    fn closed_form_steady_state_matches_dense_solve() {
        let spec = SingleCavitySpec::symmetric(200.0, 10.0, 2.0, 5.0, 5, 1.0, 0.95 * TAU);
        for side in [DriveSide::Left, DriveSide::Right] {
            for d in [-20.0, -3.3, 0.0, 7.5] {
                let a = steady_state(&spec, d, side).unwrap();
                let b = generic_steady_solve(&spec, d, side).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).norm() <= 1e-12 * (1.0 + x.norm()));
                }
                let t_amp = transmission_from_amplitudes(&spec, side, &a);
                let t_closed = match side {
                    DriveSide::Left => transmission_left(&spec, d).unwrap(),
                    DriveSide::Right => transmission_right(&spec, d).unwrap(),
                };
                assert!((t_amp - t_closed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_invalid_specs() {
        let mut spec = fig2(0.95, 3);
        spec.kappa_c = -1.0;
        assert!(spec.validate().is_err());
        let mut spec = fig2(0.95, 0);
        assert!(spec.validate().is_err());
        spec = fig2(0.95, 3);
        spec.delta_f = 2.0;
        assert!(spec.validate().is_err());
        spec = fig2(0.95, 3);
        spec.layout = CouplingLayout::Irregular(vec![
            CouplingPoint { kappa_e: 1.0, phase: 1.0 },
            CouplingPoint { kappa_e: 1.0, phase: 0.5 },
        ]);
        assert!(spec.validate().is_err());
    }
}
