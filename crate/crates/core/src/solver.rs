//! Required launch speed, the feasibility boundary, the softest-shot angle,
//! and sweeps of that optimum over distance and release altitude.

use std::f64::consts::FRAC_PI_2;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kinematics::{KinematicsError, ShotParams, VERTICAL_COS_THRESHOLD};
use crate::scalarmin::{self, Bracket, MinError};

/// Offset above the feasibility angle where the optimizer bracket starts.
pub const BRACKET_LOW_OFFSET: f64 = 1e-6;
/// Upper end of the optimizer bracket, 89.9° in radians.
pub const BRACKET_HIGH: f64 = 89.9 * std::f64::consts::PI / 180.0;
/// Absolute tolerance on the optimal angle, in radians.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(
        "infeasible: angle {:.3} deg is at or below the feasibility angle {:.3} deg",
        .angle.to_degrees(),
        .feasibility.to_degrees()
    )]
    Infeasible { angle: f64, feasibility: f64 },
    #[error("angle must lie in [0, 90) degrees, got {:.6} deg", .0.to_degrees())]
    AngleOutOfRange(f64),
    #[error(
        "distance grid must be non-empty, positive and strictly increasing (offending value {0})"
    )]
    InvalidGrid(f64),
    #[error("angle grid: {0}")]
    InvalidAngleGrid(String),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("optimizer failed: {0}")]
    Minimizer(#[from] MinError),
}

/// Required speed at one angle, or a marker that no speed reaches the hoop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RequiredSpeed {
    Speed(f64),
    Infeasible,
}

impl RequiredSpeed {
    pub fn speed(&self) -> Option<f64> {
        match *self {
            RequiredSpeed::Speed(v) => Some(v),
            RequiredSpeed::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityRequirement {
    pub angle: f64,
    pub required: RequiredSpeed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleCurve {
    pub params: ShotParams,
    pub points: Vec<VelocityRequirement>,
}

impl AngleCurve {
    /// Maximal runs of consecutive feasible points as `(angle, speed)` pairs.
    pub fn feasible_runs(&self) -> Vec<Vec<(f64, f64)>> {
        let mut runs = Vec::new();
        let mut current = Vec::new();
        for p in &self.points {
            match p.required {
                RequiredSpeed::Speed(v) => current.push((p.angle, v)),
                RequiredSpeed::Infeasible => {
                    if !current.is_empty() {
                        runs.push(std::mem::take(&mut current));
                    }
                }
            }
        }
        if !current.is_empty() {
            runs.push(current);
        }
        runs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    /// Softest-shot angle in radians.
    pub angle: f64,
    pub speed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumEntry {
    pub distance: f64,
    pub optimum: Optimum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimumCurve {
    pub release_altitude: f64,
    pub entries: Vec<OptimumEntry>,
}

/// Launch angle at or below which the ball passes under the hoop at any speed.
/// Negative when the release point is above the hoop.
pub fn feasibility_angle(params: &ShotParams) -> f64 {
    ((params.hoop_height - params.release_altitude) / params.distance).atan()
}

fn check_angle(angle: f64) -> Result<(), SolveError> {
    if !(angle.is_finite() && (0.0..FRAC_PI_2).contains(&angle)) {
        return Err(SolveError::AngleOutOfRange(angle));
    }
    if angle.cos() < VERTICAL_COS_THRESHOLD {
        return Err(KinematicsError::VerticalShot { angle }.into());
    }
    Ok(())
}

/// Speed for which the ball crosses the hoop plane exactly at hoop height:
/// `v = sqrt(g d² / (2 cos²θ (d tanθ + a − h)))`.
pub fn required_velocity(params: &ShotParams, angle: f64) -> Result<f64, SolveError> {
    params.validate()?;
    check_angle(angle)?;
    let feasibility = feasibility_angle(params);
    let ShotParams {
        release_altitude: a,
        distance: d,
        hoop_height: h,
        gravity: g,
    } = *params;
    let rise = d * angle.tan() + a - h;
    if angle <= feasibility || rise <= 0.0 {
        return Err(SolveError::Infeasible { angle, feasibility });
    }
    let cos = angle.cos();
    Ok((0.5 * g * d * d / (cos * cos * rise)).sqrt())
}

fn requirement(params: &ShotParams, angle: f64) -> RequiredSpeed {
    match required_velocity(params, angle) {
        Ok(v) => RequiredSpeed::Speed(v),
        Err(_) => RequiredSpeed::Infeasible,
    }
}

/// Required speed on `n` evenly spaced angles from `lo` to `hi` inclusive.
/// Infeasible angles stay in the curve as markers.
pub fn angle_curve(
    params: &ShotParams,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<AngleCurve, SolveError> {
    params.validate()?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(SolveError::InvalidAngleGrid(format!(
            "need lo < hi, got [{lo}, {hi}]"
        )));
    }
    if n < 2 {
        return Err(SolveError::InvalidAngleGrid(format!(
            "need n >= 2, got {n}"
        )));
    }
    let last = (n - 1) as f64;
    let points = (0..n)
        .map(|i| {
            let angle = if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            };
            VelocityRequirement {
                angle,
                required: requirement(params, angle),
            }
        })
        .collect();
    Ok(AngleCurve {
        params: *params,
        points,
    })
}

/// Optimizer bracket for the softest-shot search.
pub fn optimizer_bracket(params: &ShotParams) -> Result<Bracket, SolveError> {
    let lo = (feasibility_angle(params) + BRACKET_LOW_OFFSET).max(0.0);
    Ok(Bracket::new(lo, BRACKET_HIGH)?)
}

/// Angle minimizing the required speed, found by golden-section search.
pub fn optimal_angle(params: &ShotParams) -> Result<Optimum, SolveError> {
    params.validate()?;
    let bracket = optimizer_bracket(params)?;
    let found = scalarmin::minimize_scalar(
        |angle| required_velocity(params, angle).unwrap_or(f64::NAN),
        bracket,
        ANGLE_TOLERANCE,
    )?;
    Ok(Optimum {
        angle: found.x,
        speed: found.f_at_x,
    })
}

fn check_grid(grid: &[f64]) -> Result<(), SolveError> {
    let Some(&first) = grid.first() else {
        return Err(SolveError::InvalidGrid(f64::NAN));
    };
    if !(first.is_finite() && first > 0.0) {
        return Err(SolveError::InvalidGrid(first));
    }
    for pair in grid.windows(2) {
        if !(pair[1].is_finite() && pair[1] > pair[0]) {
            return Err(SolveError::InvalidGrid(pair[1]));
        }
    }
    Ok(())
}

/// Optimum at every distance of `distances` for a fixed release altitude.
pub fn sweep_distance(
    release_altitude: f64,
    hoop_height: f64,
    gravity: f64,
    distances: &[f64],
) -> Result<OptimumCurve, SolveError> {
    check_grid(distances)?;
    let entries = distances
        .iter()
        .map(|&distance| {
            let params = ShotParams::new(release_altitude, distance, hoop_height, gravity)?;
            Ok(OptimumEntry {
                distance,
                optimum: optimal_angle(&params)?,
            })
        })
        .collect::<Result<_, SolveError>>()?;
    Ok(OptimumCurve {
        release_altitude,
        entries,
    })
}

/// One [`OptimumCurve`] per altitude, all over the same distance grid.
pub fn sweep_altitudes(
    altitudes: &[f64],
    hoop_height: f64,
    gravity: f64,
    distances: &[f64],
) -> Result<Vec<OptimumCurve>, SolveError> {
    altitudes
        .iter()
        .map(|&a| sweep_distance(a, hoop_height, gravity, distances))
        .collect()
}

/// Evenly spaced grid `lo, lo + step, ...` up to `hi` inclusive (within rounding).
pub fn distance_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0 && lo <= hi) {
        return Vec::new();
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| lo + step * i as f64).collect()
}

/// Writes sweep results as CSV: `d,theta_opt_deg,v_opt,altitude`, six decimals.
pub fn write_sweep_csv<W: Write>(curves: &[OptimumCurve], mut out: W) -> io::Result<()> {
    writeln!(out, "d,theta_opt_deg,v_opt,altitude")?;
    for curve in curves {
        for e in &curve.entries {
            writeln!(
                out,
                "{:.6},{:.6},{:.6},{:.6}",
                e.distance,
                e.optimum.angle.to_degrees(),
                e.optimum.speed,
                curve.release_altitude
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> ShotParams {
        ShotParams::default()
    }

    #[test]
    fn headline_speed_at_thirty_degrees() {
        let v = required_velocity(&defaults(), 30f64.to_radians()).unwrap();
        assert!((v - 12.2).abs() <= 0.05);
        assert!((v - 12.153_021).abs() < 1e-6, "{v}");
    }

    #[test]
    fn level_release_reduces_to_range_formula() {
        let params = ShotParams::new(3.05, 10.0, 3.05, 9.8).unwrap();
        let v = required_velocity(&params, 45f64.to_radians()).unwrap();
        assert!((v - 98f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn low_angle_is_infeasible() {
        assert!(matches!(
            required_velocity(&defaults(), 5f64.to_radians()),
            Err(SolveError::Infeasible { .. })
        ));
    }

    #[test]
    fn feasibility_angles() {
        assert!((feasibility_angle(&defaults()).to_degrees() - 7.688_448).abs() < 1e-6);
        let level = ShotParams::new(2.0, 10.0, 2.0, 9.8).unwrap();
        assert_eq!(feasibility_angle(&level), 0.0);
        let high = ShotParams::new(3.5, 10.0, 3.05, 9.8).unwrap();
        assert!((feasibility_angle(&high).to_degrees() + 2.577).abs() < 1e-3);
        assert!(required_velocity(&high, 0.0).is_ok());
    }

    #[test]
    fn exact_boundary_is_infeasible() {
        let params = defaults();
        let boundary = feasibility_angle(&params);
        assert!(required_velocity(&params, boundary).is_err());
        assert!(required_velocity(&params, boundary + 0.01f64.to_radians()).is_ok());
    }

    #[test]
    fn out_of_range_angles() {
        assert_eq!(
            required_velocity(&defaults(), -0.1),
            Err(SolveError::AngleOutOfRange(-0.1))
        );
        assert!(required_velocity(&defaults(), FRAC_PI_2).is_err());
    }

    #[test]
    fn angle_curve_keeps_infeasible_markers() {
        let curve = angle_curve(&defaults(), 0.0, 89f64.to_radians(), 90).unwrap();
        assert_eq!(curve.points.len(), 90);
        let feas = feasibility_angle(&defaults());
        for p in &curve.points {
            assert_eq!(p.required == RequiredSpeed::Infeasible, p.angle <= feas);
        }
        let best = curve
            .points
            .iter()
            .filter_map(|p| p.required.speed().map(|v| (p.angle, v)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!((best.0.to_degrees() - 48.8).abs() <= 1.0);
        assert_eq!(curve.feasible_runs().len(), 1);
    }

    #[test]
    fn two_point_curve_is_endpoints() {
        let lo = 10f64.to_radians();
        let hi = 80f64.to_radians();
        let curve = angle_curve(&defaults(), lo, hi, 2).unwrap();
        assert_eq!(curve.points[0].angle, lo);
        assert_eq!(curve.points[1].angle, hi);
        assert!(angle_curve(&defaults(), hi, lo, 5).is_err());
        assert!(angle_curve(&defaults(), lo, hi, 1).is_err());
    }

    #[test]
    fn default_optimum() {
        let opt = optimal_angle(&defaults()).unwrap();
        assert!((opt.angle.to_degrees() - 48.8).abs() <= 0.05);
        assert!((opt.speed - 10.6).abs() <= 0.05);
        let direct = required_velocity(&defaults(), opt.angle).unwrap();
        assert!(((opt.speed - direct) / direct).abs() <= 1e-9);
    }

    #[test]
    fn optimum_with_release_above_hoop() {
        let params = ShotParams::new(3.5, 10.0, 3.05, 9.8).unwrap();
        let opt = optimal_angle(&params).unwrap();
        let closed = 45f64.to_radians() + 0.5 * feasibility_angle(&params);
        assert!((opt.angle - closed).abs() < 1e-6);
    }

    #[test]
    fn one_point_sweep_matches_optimum() {
        let curve = sweep_distance(1.7, 3.05, 9.8, &[10.0]).unwrap();
        assert_eq!(curve.entries.len(), 1);
        assert_eq!(
            curve.entries[0].optimum,
            optimal_angle(&defaults()).unwrap()
        );
    }

    #[test]
    fn single_altitude_sweep_equals_distance_sweep() {
        let grid = distance_grid(1.0, 15.0, 0.5);
        let many = sweep_altitudes(&[1.7], 3.05, 9.8, &grid).unwrap();
        assert_eq!(many, vec![sweep_distance(1.7, 3.05, 9.8, &grid).unwrap()]);
    }

    #[test]
    fn bad_grids_rejected() {
        assert!(sweep_distance(1.7, 3.05, 9.8, &[]).is_err());
        assert!(sweep_distance(1.7, 3.05, 9.8, &[0.0, 1.0]).is_err());
        assert!(matches!(
            sweep_distance(1.7, 3.05, 9.8, &[2.0, 1.0]),
            Err(SolveError::InvalidGrid(v)) if v == 1.0
        ));
    }

    #[test]
    fn grid_construction() {
        let grid = distance_grid(1.0, 15.0, 0.1);
        assert_eq!(grid.len(), 141);
        assert_eq!(grid[0], 1.0);
        assert!((grid[140] - 15.0).abs() < 1e-12);
        assert_eq!(distance_grid(1.0, 15.0, 0.5).len(), 29);
        assert_eq!(distance_grid(10.0, 10.0, 0.1), vec![10.0]);
    }

    #[test]
    fn csv_layout() {
        let curves = sweep_altitudes(&[1.7], 3.05, 9.8, &[10.0]).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&curves, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("d,theta_opt_deg,v_opt,altitude"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "10.000000");
        assert!(row[1].starts_with("48.84"));
        assert_eq!(row[3], "1.700000");
        assert!(row.iter().all(|f| f.split('.').nth(1).unwrap().len() == 6));
    }
}
