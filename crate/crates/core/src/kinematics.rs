//! Drag-free projectile motion for a single shot.
//!
//! Coordinates put the release point at `x = 0` and the ground at `y = 0`.
//! The hoop sits in the vertical plane `x = d` at height `h`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Below this value of `cos θ` the ball never advances toward the hoop.
pub const VERTICAL_COS_THRESHOLD: f64 = 1e-12;

/// Trajectory samples drawn per curve when the caller does not choose.
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("vertical shot: cos({angle}) is below {VERTICAL_COS_THRESHOLD}, the ball never reaches the hoop plane")]
    VerticalShot { angle: f64 },
    #[error("invalid shot parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },
    #[error("invalid launch `{field}`: {reason}")]
    InvalidLaunch { field: &'static str, reason: String },
    #[error("trajectory needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error(
        "trajectory has zero duration (the ball starts on the ground moving downward or level)"
    )]
    ZeroDuration,
}

/// Scenario geometry and physics, all in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotParams {
    /// Height of the ball at release.
    pub release_altitude: f64,
    /// Horizontal distance from the release point to the hoop.
    pub distance: f64,
    pub hoop_height: f64,
    pub gravity: f64,
}

impl Default for ShotParams {
    fn default() -> Self {
        Self {
            release_altitude: 1.7,
            distance: 10.0,
            hoop_height: 3.05,
            gravity: 9.8,
        }
    }
}

impl ShotParams {
    pub fn new(
        release_altitude: f64,
        distance: f64,
        hoop_height: f64,
        gravity: f64,
    ) -> Result<Self, KinematicsError> {
        let params = Self {
            release_altitude,
            distance,
            hoop_height,
            gravity,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), KinematicsError> {
        let bad = |field, reason: &str| {
            Err(KinematicsError::InvalidParams {
                field,
                reason: reason.to_string(),
            })
        };
        let finite = [
            ("release_altitude", self.release_altitude),
            ("distance", self.distance),
            ("hoop_height", self.hoop_height),
            ("gravity", self.gravity),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                return bad(field, "must be finite");
            }
        }
        if self.distance <= 0.0 {
            return bad("distance", "must be > 0 m");
        }
        if self.gravity <= 0.0 {
            return bad("gravity", "must be > 0 m/s^2");
        }
        if self.release_altitude < 0.0 {
            return bad("release_altitude", "must be >= 0 m");
        }
        if self.hoop_height < 0.0 {
            return bad("hoop_height", "must be >= 0 m");
        }
        Ok(())
    }

    pub fn with_distance(self, distance: f64) -> Self {
        Self { distance, ..self }
    }

    pub fn with_release_altitude(self, release_altitude: f64) -> Self {
        Self {
            release_altitude,
            ..self
        }
    }
}

/// Controllable shot inputs. The angle is in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaunchState {
    pub angle: f64,
    pub speed: f64,
}

impl LaunchState {
    pub fn new(angle: f64, speed: f64) -> Result<Self, KinematicsError> {
        let launch = Self { angle, speed };
        launch.validate()?;
        Ok(launch)
    }

    pub fn from_degrees(angle_deg: f64, speed: f64) -> Result<Self, KinematicsError> {
        Self::new(angle_deg.to_radians(), speed)
    }

    pub fn validate(&self) -> Result<(), KinematicsError> {
        if !(self.angle.is_finite() && (0.0..FRAC_PI_2).contains(&self.angle)) {
            return Err(KinematicsError::InvalidLaunch {
                field: "angle",
                reason: format!("must lie in [0, 90) degrees, got {} rad", self.angle),
            });
        }
        if !(self.speed.is_finite() && self.speed > 0.0) {
            return Err(KinematicsError::InvalidLaunch {
                field: "speed",
                reason: format!("must be > 0 m/s, got {}", self.speed),
            });
        }
        Ok(())
    }

    /// Vertical velocity component at time `t`.
    pub fn vertical_velocity(&self, gravity: f64, t: f64) -> f64 {
        self.speed * self.angle.sin() - gravity * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: ShotParams,
    pub launch: LaunchState,
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples
            .last()
            .expect("trajectory has at least two samples")
    }
}

/// Ball position `(x, y)` at time `t`. No validation is performed.
pub fn position_at(params: &ShotParams, launch: &LaunchState, t: f64) -> (f64, f64) {
    let (sin, cos) = launch.angle.sin_cos();
    let x = launch.speed * cos * t;
    let y = params.release_altitude + launch.speed * sin * t - 0.5 * params.gravity * t * t;
    (x, y)
}

/// Time at which the ball crosses the plane `x = distance`.
pub fn time_to_plane(launch: &LaunchState, distance: f64) -> Result<f64, KinematicsError> {
    let cos = launch.angle.cos();
    if cos < VERTICAL_COS_THRESHOLD {
        return Err(KinematicsError::VerticalShot {
            angle: launch.angle,
        });
    }
    Ok(distance / (launch.speed * cos))
}

/// Height of the ball when it crosses the hoop plane.
pub fn height_at_plane(params: &ShotParams, launch: &LaunchState) -> Result<f64, KinematicsError> {
    let t = time_to_plane(launch, params.distance)?;
    Ok(position_at(params, launch, t).1)
}

/// Time at which the ball would hit the ground, from the larger root of `y(t) = 0`.
pub fn ground_impact_time(params: &ShotParams, launch: &LaunchState) -> f64 {
    let vy = launch.speed * launch.angle.sin();
    let disc = vy * vy + 2.0 * params.gravity * params.release_altitude;
    (vy + disc.sqrt()) / params.gravity
}

/// Samples `n` equally spaced instants from release until the ball reaches
/// the hoop plane or the ground, whichever comes first.
pub fn sample_trajectory(
    params: &ShotParams,
    launch: &LaunchState,
    n: usize,
) -> Result<Trajectory, KinematicsError> {
    params.validate()?;
    launch.validate()?;
    if n < 2 {
        return Err(KinematicsError::TooFewSamples(n));
    }
    let t_plane = time_to_plane(launch, params.distance)?;
    let t_end = t_plane.min(ground_impact_time(params, launch));
    // Negated so a NaN end time is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(t_end > 0.0) {
        return Err(KinematicsError::ZeroDuration);
    }
    let last = (n - 1) as f64;
    let samples = (0..n)
        .map(|i| {
            let t = if i == n - 1 {
                t_end
            } else {
                t_end * (i as f64 / last)
            };
            let (x, y) = position_at(params, launch, t);
            TrajectorySample { t, x, y }
        })
        .collect();
    Ok(Trajectory {
        params: *params,
        launch: *launch,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg30(speed: f64) -> LaunchState {
        LaunchState::from_degrees(30.0, speed).unwrap()
    }

    #[test]
    fn launch_point_is_release_altitude() {
        let (x, y) = position_at(&ShotParams::default(), &deg30(15.0), 0.0);
        assert_eq!((x, y), (0.0, 1.7));
    }

    #[test]
    fn position_after_one_second() {
        // x = 15 cos 30° = 12.990381, y = 1.7 + 7.5 - 4.9 = 4.3
        let (x, y) = position_at(&ShotParams::default(), &deg30(15.0), 1.0);
        assert!((x - 12.990_381_056_766_58).abs() < 1e-12);
        assert!((y - 4.3).abs() < 1e-12);
    }

    #[test]
    fn zero_gravity_is_a_straight_line() {
        let params = ShotParams {
            gravity: 0.0,
            ..ShotParams::default()
        };
        let launch = LaunchState::from_degrees(37.0, 8.0).unwrap();
        for t in [0.1, 0.7, 2.5] {
            let (x, y) = position_at(&params, &launch, t);
            assert!((y - params.release_altitude - launch.angle.tan() * x).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_shot_time_is_distance_over_speed() {
        let launch = LaunchState::new(0.0, 10.0).unwrap();
        assert_eq!(time_to_plane(&launch, 10.0).unwrap(), 1.0);
    }

    #[test]
    fn time_to_plane_at_thirty_degrees() {
        let t = time_to_plane(&deg30(12.2), 10.0).unwrap();
        assert!((t - 0.946_475_851).abs() < 1e-9, "{t}");
    }

    #[test]
    fn vertical_shot_is_rejected() {
        let launch = LaunchState {
            angle: FRAC_PI_2,
            speed: 10.0,
        };
        assert!(matches!(
            time_to_plane(&launch, 10.0),
            Err(KinematicsError::VerticalShot { .. })
        ));
        assert!(height_at_plane(&ShotParams::default(), &launch).is_err());
    }

    #[test]
    fn fast_shot_passes_above_hoop() {
        assert!(height_at_plane(&ShotParams::default(), &deg30(15.0)).unwrap() > 3.05);
    }

    #[test]
    fn flat_shot_from_hoop_height() {
        let params = ShotParams {
            release_altitude: 3.05,
            ..ShotParams::default()
        };
        let launch = LaunchState::new(0.0, 7.0).unwrap();
        let t = 10.0 / 7.0;
        let y = height_at_plane(&params, &launch).unwrap();
        assert!((y - (3.05 - 0.5 * 9.8 * t * t)).abs() < 1e-12);

        let weightless = ShotParams {
            gravity: 0.0,
            ..params
        };
        assert_eq!(height_at_plane(&weightless, &launch).unwrap(), 3.05);
    }

    #[test]
    fn two_samples_are_endpoints() {
        let params = ShotParams::default();
        let launch = deg30(15.0);
        let traj = sample_trajectory(&params, &launch, 2).unwrap();
        assert_eq!(traj.samples.len(), 2);
        assert_eq!(
            traj.samples[0],
            TrajectorySample {
                t: 0.0,
                x: 0.0,
                y: 1.7
            }
        );
        let t_end = time_to_plane(&launch, 10.0).unwrap();
        assert_eq!(traj.samples[1].t, t_end);
    }

    #[test]
    fn sampling_clips_at_hoop_plane() {
        let traj = sample_trajectory(&ShotParams::default(), &deg30(15.0), 100).unwrap();
        let last = traj.last();
        assert!(last.x <= 10.0 + 1e-12, "{}", last.x);
        assert!((last.x - 10.0).abs() < 1e-12);
        assert!(last.y >= 0.0);
    }

    #[test]
    fn sampling_clips_at_ground() {
        let traj = sample_trajectory(&ShotParams::default(), &deg30(5.0), 50).unwrap();
        let last = traj.last();
        assert!(last.x < 10.0);
        assert!(last.y.abs() < 1e-12);
    }

    #[test]
    fn samples_reproduce_position_exactly() {
        let params = ShotParams::default();
        let launch = deg30(20.0);
        let traj = sample_trajectory(&params, &launch, 37).unwrap();
        for s in &traj.samples {
            assert_eq!(position_at(&params, &launch, s.t), (s.x, s.y));
        }
    }

    #[test]
    fn sampling_errors() {
        let params = ShotParams::default();
        assert_eq!(
            sample_trajectory(&params, &deg30(10.0), 1),
            Err(KinematicsError::TooFewSamples(1))
        );
        let grounded = ShotParams {
            release_altitude: 0.0,
            ..params
        };
        let flat = LaunchState::new(0.0, 10.0).unwrap();
        assert_eq!(
            sample_trajectory(&grounded, &flat, 10),
            Err(KinematicsError::ZeroDuration)
        );
    }

    #[test]
    fn param_validation_names_field() {
        let err = ShotParams::new(1.7, 0.0, 3.05, 9.8).unwrap_err();
        assert!(err.to_string().contains("distance"));
        let err = ShotParams::new(-1.0, 10.0, 3.05, 9.8).unwrap_err();
        assert!(err.to_string().contains("release_altitude"));
        let err = LaunchState::from_degrees(90.0, 3.0).unwrap_err();
        assert!(err.to_string().contains("angle"));
    }
}
