//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for domain failures (an infeasible angle, ladder
//! violations, I/O), 2 for usage and parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kinematics::{sample_trajectory, LaunchState, ShotParams, DEFAULT_SAMPLES};
use crate::ladder::{build_basketball_ladder, validate_ladder, LadderInputs, LadderSpec};
use crate::render;
use crate::solver::{self, SolveError};

/// Name of the ladder description written next to the figures.
pub const LADDER_FILE: &str = "ladder.json";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AngleUnit {
    #[default]
    Degrees,
    Radians,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        solver::distance_grid(self.lo, self.hi, self.step)
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: ShotParams,
    pub velocities: Vec<f64>,
    pub altitudes: Vec<f64>,
    pub d_grid: GridSpec,
    pub output: PathBuf,
    pub angle_unit: AngleUnit,
    /// Launch angle of the concrete shots, degrees.
    pub angle: f64,
    pub featured_speed: f64,
    pub samples: usize,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            params: ShotParams::default(),
            velocities: vec![5.0, 10.0, 15.0, 20.0],
            altitudes: vec![1.2, 1.7, 2.2],
            d_grid: GridSpec {
                lo: 1.0,
                hi: 15.0,
                step: 0.1,
            },
            output: PathBuf::from("figures"),
            angle_unit: AngleUnit::Degrees,
            angle: 30.0,
            featured_speed: 15.0,
            samples: DEFAULT_SAMPLES,
        }
    }
}

/// Scenario file layout. Every key is optional; missing keys keep defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub params: Option<ParamsFile>,
    pub velocities: Option<Vec<f64>>,
    pub altitudes: Option<Vec<f64>>,
    pub d_grid: Option<GridSpec>,
    pub output: Option<PathBuf>,
    pub angle_unit: Option<AngleUnit>,
    pub angle: Option<f64>,
    pub featured_speed: Option<f64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub release_altitude: Option<f64>,
    pub distance: Option<f64>,
    pub hoop_height: Option<f64>,
    pub gravity: Option<f64>,
}

impl Scenario {
    fn apply_file(&mut self, file: ScenarioFile) {
        if let Some(p) = file.params {
            let params = &mut self.params;
            params.release_altitude = p.release_altitude.unwrap_or(params.release_altitude);
            params.distance = p.distance.unwrap_or(params.distance);
            params.hoop_height = p.hoop_height.unwrap_or(params.hoop_height);
            params.gravity = p.gravity.unwrap_or(params.gravity);
        }
        set(&mut self.velocities, file.velocities);
        set(&mut self.altitudes, file.altitudes);
        set(&mut self.d_grid, file.d_grid);
        set(&mut self.output, file.output);
        set(&mut self.angle_unit, file.angle_unit);
        set(&mut self.angle, file.angle);
        set(&mut self.featured_speed, file.featured_speed);
        set(&mut self.samples, file.samples);
    }

    fn apply_flags(&mut self, flags: &ScenarioArgs) {
        let params = &mut self.params;
        set(&mut params.release_altitude, flags.release_altitude);
        set(&mut params.distance, flags.distance);
        set(&mut params.hoop_height, flags.hoop_height);
        set(&mut params.gravity, flags.gravity);
        set(&mut self.velocities, flags.velocities.clone());
        set(&mut self.altitudes, flags.altitudes.clone());
        set(&mut self.d_grid.lo, flags.d_lo);
        set(&mut self.d_grid.hi, flags.d_hi);
        set(&mut self.d_grid.step, flags.d_step);
        set(&mut self.output, flags.out.clone());
        set(&mut self.angle_unit, flags.angle_unit);
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate().map_err(|e| usage(e.to_string()))?;
        if self.velocities.is_empty()
            || self.velocities.iter().any(|v| !(v.is_finite() && *v > 0.0))
        {
            return Err(usage(format!(
                "velocities: need at least one speed, all > 0 m/s, got {:?}",
                self.velocities
            )));
        }
        if self.altitudes.is_empty() || self.altitudes.iter().any(|a| !(a.is_finite() && *a >= 0.0))
        {
            return Err(usage(format!(
                "altitudes: need at least one altitude, all >= 0 m, got {:?}",
                self.altitudes
            )));
        }
        let g = self.d_grid;
        if !(g.step.is_finite() && g.step > 0.0) {
            return Err(usage(format!("d_grid.step: must be > 0 m, got {}", g.step)));
        }
        if !(g.lo.is_finite() && g.lo > 0.0) {
            return Err(usage(format!("d_grid.lo: must be > 0 m, got {}", g.lo)));
        }
        if !(g.hi.is_finite() && g.hi >= g.lo) {
            return Err(usage(format!(
                "d_grid.hi: must be >= d_grid.lo, got {}",
                g.hi
            )));
        }
        if !(self.angle.is_finite() && (0.0..90.0).contains(&self.angle)) {
            return Err(usage(format!(
                "angle: must lie in [0, 90) degrees, got {}",
                self.angle
            )));
        }
        if !(self.featured_speed.is_finite() && self.featured_speed > 0.0) {
            return Err(usage(format!(
                "featured_speed: must be > 0 m/s, got {}",
                self.featured_speed
            )));
        }
        if self.samples < 2 {
            return Err(usage(format!(
                "samples: need at least 2, got {}",
                self.samples
            )));
        }
        Ok(())
    }

    pub fn ladder_inputs(&self) -> LadderInputs {
        LadderInputs {
            params: self.params,
            launch_angle: self.angle.to_radians(),
            featured_speed: self.featured_speed,
            velocities: self.velocities.clone(),
            altitudes: self.altitudes.clone(),
            distances: self.d_grid.values(),
            samples: self.samples,
        }
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

pub fn load_scenario_file(path: &Path) -> Result<ScenarioFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("--scenario {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("--scenario {}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(
    name = "hoopladder",
    version,
    about = "Basketball shot model and its ladder of figures",
    long_about = "Basketball shot model and its ladder of figures.\n\n\
        Units: angles in degrees, lengths in meters (m), speeds in meters per second (m/s), \
        gravity in m/s^2. Flags override values read from --scenario."
)]
pub struct Cli {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario JSON file (keys: params, velocities, altitudes, d_grid, output, ...)
    #[arg(long, global = true, value_name = "FILE")]
    pub scenario: Option<PathBuf>,
    /// Release altitude a, in meters
    #[arg(long, global = true, value_name = "M", allow_negative_numbers = true)]
    pub release_altitude: Option<f64>,
    /// Horizontal distance d to the hoop, in meters
    #[arg(long, global = true, value_name = "M", allow_negative_numbers = true)]
    pub distance: Option<f64>,
    /// Hoop height h, in meters
    #[arg(long, global = true, value_name = "M", allow_negative_numbers = true)]
    pub hoop_height: Option<f64>,
    /// Gravitational acceleration g, in m/s^2
    #[arg(
        long,
        global = true,
        value_name = "M/S^2",
        allow_negative_numbers = true
    )]
    pub gravity: Option<f64>,
    /// Comma-separated launch speeds for the trajectory family, in m/s
    #[arg(long, global = true, value_name = "M/S,...", value_delimiter = ',')]
    pub velocities: Option<Vec<f64>>,
    /// Comma-separated release altitudes for sweeps, in meters
    #[arg(long, global = true, value_name = "M,...", value_delimiter = ',')]
    pub altitudes: Option<Vec<f64>>,
    /// First distance of the sweep grid, in meters
    #[arg(long, global = true, value_name = "M")]
    pub d_lo: Option<f64>,
    /// Last distance of the sweep grid, in meters
    #[arg(long, global = true, value_name = "M")]
    pub d_hi: Option<f64>,
    /// Spacing of the sweep grid, in meters
    #[arg(long, global = true, value_name = "M", allow_negative_numbers = true)]
    pub d_step: Option<f64>,
    /// Output directory for figures
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Unit used when printing angles
    #[arg(long, global = true, value_enum)]
    pub angle_unit: Option<AngleUnit>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a sampled trajectory as CSV (t in s, x and y in m)
    Trajectory {
        /// Launch angle, in degrees [default: scenario angle, 30]
        #[arg(long, value_name = "DEG", allow_negative_numbers = true)]
        angle: Option<f64>,
        /// Launch speed, in m/s [default: scenario featured_speed, 15]
        #[arg(long, value_name = "M/S", allow_negative_numbers = true)]
        speed: Option<f64>,
        /// Number of samples [default: scenario samples, 200]
        #[arg(long, value_name = "N")]
        samples: Option<usize>,
    },
    /// Print the launch speed (m/s) needed to reach the hoop, or INFEASIBLE
    Velocity {
        /// Launch angle, in degrees
        #[arg(long, value_name = "DEG", allow_negative_numbers = true)]
        angle: Option<f64>,
    },
    /// Print the softest-shot angle (degrees) and its speed (m/s)
    Optimize,
    /// Sweep the optimum over distance (m) and release altitude (m); writes CSV
    Sweep {
        /// Write the CSV here instead of stdout
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Build, validate, and write the figure ladder as SVG files plus ladder.json
    Figures,
    /// Check a ladder JSON file against the consistency rules
    ValidateLadder {
        /// Ladder JSON file
        file: PathBuf,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn resolve_scenario(flags: &ScenarioArgs) -> Result<Scenario, CliError> {
    let mut scenario = Scenario::default();
    if let Some(path) = &flags.scenario {
        scenario.apply_file(load_scenario_file(path)?);
    }
    scenario.apply_flags(flags);
    scenario.validate()?;
    Ok(scenario)
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| domain(format!("{}: {e}", path.display()))
}

fn stdout_err(e: std::io::Error) -> CliError {
    domain(format!("stdout: {e}"))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let scenario = resolve_scenario(&cli.scenario)?;
    let params = scenario.params;
    match &cli.command {
        Command::Trajectory {
            angle,
            speed,
            samples,
        } => {
            let angle = angle.unwrap_or(scenario.angle);
            let speed = speed.unwrap_or(scenario.featured_speed);
            let launch = LaunchState::from_degrees(angle, speed)
                .map_err(|e| usage(format!("--angle/--speed: {e}")))?;
            let n = samples.unwrap_or(scenario.samples);
            let traj = sample_trajectory(&params, &launch, n)
                .map_err(|e| usage(format!("--samples: {e}")))?;
            writeln!(out, "t,x,y").map_err(stdout_err)?;
            for s in &traj.samples {
                writeln!(out, "{:.6},{:.6},{:.6}", s.t, s.x, s.y).map_err(stdout_err)?;
            }
        }
        Command::Velocity { angle } => {
            let angle = angle.unwrap_or(scenario.angle);
            if !(angle.is_finite() && (0.0..90.0).contains(&angle)) {
                return Err(usage(format!(
                    "--angle: must lie in [0, 90) degrees, got {angle}"
                )));
            }
            match solver::required_velocity(&params, angle.to_radians()) {
                Ok(v) => writeln!(out, "v_required={v:.1} m/s").map_err(stdout_err)?,
                Err(e @ SolveError::Infeasible { .. }) => {
                    writeln!(out, "INFEASIBLE").map_err(stdout_err)?;
                    return Err(domain(format!("--angle {angle}: {e}")));
                }
                Err(e) => return Err(domain(e.to_string())),
            }
        }
        Command::Optimize => {
            let opt = solver::optimal_angle(&params).map_err(|e| domain(e.to_string()))?;
            let angle = match scenario.angle_unit {
                AngleUnit::Degrees => format!("{:.1} deg", opt.angle.to_degrees()),
                AngleUnit::Radians => format!("{:.3} rad", opt.angle),
            };
            writeln!(out, "theta_opt={angle}, v_opt={:.1} m/s", opt.speed).map_err(stdout_err)?;
        }
        Command::Sweep { csv } => {
            let curves = solver::sweep_altitudes(
                &scenario.altitudes,
                params.hoop_height,
                params.gravity,
                &scenario.d_grid.values(),
            )
            .map_err(|e| usage(e.to_string()))?;
            match csv {
                Some(path) => {
                    let mut buf = Vec::new();
                    solver::write_sweep_csv(&curves, &mut buf).map_err(io_err(path))?;
                    fs::write(path, buf).map_err(io_err(path))?;
                    writeln!(out, "wrote {}", path.display()).map_err(stdout_err)?;
                }
                None => solver::write_sweep_csv(&curves, &mut *out).map_err(stdout_err)?,
            }
        }
        Command::Figures => {
            let (spec, scenes) = build_basketball_ladder(&scenario.ladder_inputs())
                .map_err(|e| domain(e.to_string()))?;
            let violations = validate_ladder(&spec);
            if !violations.is_empty() {
                for v in &violations {
                    writeln!(out, "{v}").map_err(stdout_err)?;
                }
                return Err(domain(format!(
                    "{} violations in the built ladder",
                    violations.len()
                )));
            }
            let dir = &scenario.output;
            fs::create_dir_all(dir).map_err(io_err(dir))?;
            let paths = render::export_figures(&scenes, dir).map_err(|e| domain(e.to_string()))?;
            let ladder_path = dir.join(LADDER_FILE);
            fs::write(&ladder_path, spec.to_json() + "\n").map_err(io_err(&ladder_path))?;
            for p in paths.iter().chain(std::iter::once(&ladder_path)) {
                writeln!(out, "{}", p.display()).map_err(stdout_err)?;
            }
            writeln!(out, "{} figures, 0 violations", paths.len()).map_err(stdout_err)?;
        }
        Command::ValidateLadder { file } => {
            let text = fs::read_to_string(file).map_err(io_err(file))?;
            let spec = LadderSpec::from_json(&text)
                .map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let violations = validate_ladder(&spec);
            for v in &violations {
                writeln!(out, "{v}").map_err(stdout_err)?;
            }
            writeln!(out, "{} violations", violations.len()).map_err(stdout_err)?;
            if !violations.is_empty() {
                return Err(domain(format!(
                    "{}: {} violations",
                    file.display(),
                    violations.len()
                )));
            }
        }
    }
    Ok(())
}
