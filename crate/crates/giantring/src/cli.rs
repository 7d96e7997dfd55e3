//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 for invalid input, usage or IO errors, 2 for
//! numerical failures (poles, divergence, non-convergence) and for oracle
//! disagreement in `verify`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use giantring_core::sagnac::{sagnac_shift, RingParams};
use giantring_core::single;
use giantring_core::two;
use giantring_core::DriveSide;

use crate::config::{load_config_file, ModelSpec, SweepConfig};
use crate::error::{AppError, Result};
use crate::sweep::{self, format_number};
use crate::{preset, verify};

#[derive(Parser, Debug)]
#[command(name = "giantring", version, about = "Chiral emission and nonreciprocal transmission of spinning resonators with multiple waveguide coupling points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sagnac-Fizeau shift of a physical ring.
    Sagnac(SagnacArgs),
    /// Collective shifts, decay rates and couplings of a single-cavity config.
    Rates(ConfigArgs),
    /// Chirality of a single-cavity config.
    Chirality(ConfigArgs),
    /// Transmission spectrum of a single-cavity config.
    SpectrumSingle(SpectrumArgs),
    /// Transmission spectrum of a two-cavity config.
    SpectrumTwo(SpectrumArgs),
    /// Runs a sweep config.
    Sweep(SweepArgs),
    /// Expands and runs a figure preset.
    Preset(PresetArgs),
    /// Cross-checks closed form, dense solve and time-domain steady state.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct SagnacArgs {
    #[arg(long)]
    wavelength_nm: f64,
    #[arg(long)]
    radius_mm: f64,
    #[arg(long)]
    index: f64,
    /// Angular speed in units of 1e9 rad/s; negative for CW rotation.
    #[arg(long, allow_negative_numbers = true)]
    omega_ghz: f64,
    /// Material dispersion dn/dλ in 1/µm.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    dn_dlambda_per_um: f64,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    start: f64,
    #[arg(long, allow_negative_numbers = true)]
    stop: f64,
    #[arg(long)]
    count: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output prefix; `.config.json`, `.csv`, `.plot` and `.diag.json` are appended.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct PresetArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    /// Largest allowed pairwise relative difference of the transmissions.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Detunings per checked parameter combination.
    #[arg(long, default_value_t = 21)]
    points: usize,
    /// Dump the time-domain trajectory of the first checked point here.
    #[arg(long)]
    trajectory: Option<PathBuf>,
    /// Probe side of the dumped trajectory.
    #[arg(long, value_enum, default_value_t = Side::Left)]
    trajectory_side: Side,
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn stdout_lines(lines: &[(&str, f64)]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    for (name, value) in lines {
        writeln!(out, "{name} = {}", format_number(*value)).map_err(|e| AppError::io("<stdout>", e))?;
    }
    Ok(())
}

fn single_spec(cfg: &SweepConfig) -> Result<single::SingleCavitySpec> {
    match cfg.base_spec()? {
        ModelSpec::Single(s) => Ok(s),
        ModelSpec::Two(_) => Err(AppError::config("model", "this command needs a single-cavity config")),
    }
}

fn two_spec(cfg: &SweepConfig) -> Result<two::TwoCavitySpec> {
    match cfg.base_spec()? {
        ModelSpec::Two(s) => Ok(s),
        ModelSpec::Single(_) => Err(AppError::config("model", "this command needs a two-cavity config")),
    }
}

fn grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 || !start.is_finite() || !stop.is_finite() || (count > 1 && !(start < stop)) {
        return Err(AppError::Usage("the grid needs count ≥ 1 and start < stop".into()));
    }
    Ok(crate::config::Axis::linear(crate::config::Param::DeltaC, start, stop, count).values())
}

fn spectrum_csv(records: &[single::TransmissionRecord]) -> String {
    let mut out = String::from("delta_c,t_l,t_r,isolation\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_number(r.detuning),
            format_number(r.t_left),
            format_number(r.t_right),
            r.isolation.map(format_number).unwrap_or_default()
        ));
    }
    out
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| AppError::io(path, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| AppError::io("<stdout>", e)),
    }
}

fn run_and_write(cfg: &SweepConfig, out: &std::path::Path, threads: Option<usize>) -> Result<()> {
    let table = match threads {
        Some(n) => sweep::run_sweep_with_threads(cfg, n)?,
        None => sweep::run_sweep(cfg)?,
    };
    let files = sweep::write_outputs(cfg, &table, out)?;
    eprintln!(
        "{}: {} points, {} failed evaluations; wrote {}, {}, {}, {}",
        cfg.name,
        table.rows.len(),
        table.diagnostics.len(),
        files.config.display(),
        files.csv.display(),
        files.plot.display(),
        files.diagnostics.display()
    );
    Ok(())
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Sagnac(a) => {
            let ring = RingParams {
                refractive_index: a.index,
                radius: a.radius_mm * 1e-3,
                wavelength: a.wavelength_nm * 1e-9,
                angular_speed: a.omega_ghz * 1e9,
                dn_dlambda: a.dn_dlambda_per_um * 1e6,
            };
            let shift = sagnac_shift(&ring)?;
            let omega_c = ring.resonance_frequency();
            stdout_lines(&[
                ("omega_c_rad_per_s", omega_c),
                ("delta_f_rad_per_s", shift),
                ("delta_f_over_omega_c", shift / omega_c),
                ("rim_speed_over_c", ring.rim_speed_ratio()),
            ])
        }
        Command::Rates(a) => {
            let spec = single_spec(&load_config_file(&a.config)?)?;
            let r = single::mode_rates(&spec)?;
            stdout_lines(&[
                ("delta_cw", r.delta_cw),
                ("delta_ccw", r.delta_ccw),
                ("gamma_cw", r.gamma_cw),
                ("gamma_ccw", r.gamma_ccw),
                ("gammap_cw", r.gammap_cw),
                ("gammap_ccw", r.gammap_ccw),
            ])
        }
        Command::Chirality(a) => {
            let spec = single_spec(&load_config_file(&a.config)?)?;
            let r = single::mode_rates(&spec)?;
            let c = r.chirality()?;
            stdout_lines(&[("gamma_cw", r.gamma_cw), ("gamma_ccw", r.gamma_ccw), ("chirality", c)])
        }
        Command::SpectrumSingle(a) => {
            let spec = single_spec(&load_config_file(&a.config)?)?;
            let records = single::spectrum(&spec, &grid(a.start, a.stop, a.count)?)?;
            emit(&spectrum_csv(&records), a.out.as_ref())
        }
        Command::SpectrumTwo(a) => {
            let spec = two_spec(&load_config_file(&a.config)?)?;
            let records = two::spectrum(&spec, &grid(a.start, a.stop, a.count)?)?;
            emit(&spectrum_csv(&records), a.out.as_ref())
        }
        Command::Sweep(a) => run_and_write(&load_config_file(&a.config)?, &a.out, a.threads),
        Command::Preset(a) => run_and_write(&preset::expand(&a.name)?, &a.out, a.threads),
        Command::Verify(a) => {
            if !(a.tol > 0.0) || a.points == 0 {
                return Err(AppError::Usage("--tol must be positive and --points at least 1".into()));
            }
            let cfg = load_config_file(&a.config)?;
            if let Some(path) = &a.trajectory {
                let point = verify::verification_points(&cfg, a.points).remove(0);
                let detuning = point.iter().find(|(p, _)| *p == crate::config::Param::DeltaC).map_or(0.0, |(_, v)| *v);
                let side = match a.trajectory_side {
                    Side::Left => DriveSide::Left,
                    Side::Right => DriveSide::Right,
                };
                let spec = cfg.build(&point)?;
                let run = verify::time_domain(&spec, detuning, side, 100)?;
                let modes: &[&str] = match spec {
                    ModelSpec::Single(_) => &["c_cw", "c_ccw"],
                    ModelSpec::Two(_) => &["a_cw", "a_ccw", "b_cw", "b_ccw"],
                };
                std::fs::write(path, sweep::trajectory_csv(&run, modes)).map_err(|e| AppError::io(path, e))?;
            }
            let report = verify::verify(&cfg, a.tol, a.points)?;
            let worst = report.worst();
            println!("checked = {}", report.comparisons.len());
            println!("max_relative_difference = {}", format_number(worst));
            if report.passed() {
                eprintln!("{}: all three routes agree within {}", cfg.name, format_number(a.tol));
                Ok(())
            } else {
                let bad = report
                    .comparisons
                    .iter()
                    .max_by(|x, y| x.worst().total_cmp(&y.worst()))
                    .expect("nonempty report");
                Err(AppError::Disagreement(format!(
                    "routes disagree by {} > {} at {:?} ({:?} probe): closed {}, dense {}, time-domain {}",
                    format_number(worst),
                    format_number(a.tol),
                    bad.point.iter().map(|(p, v)| format!("{}={v}", p.name())).collect::<Vec<_>>(),
                    bad.side,
                    format_number(bad.closed_form),
                    format_number(bad.dense),
                    format_number(bad.time_domain)
                )))
            }
        }
    }
}
