//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the closed-form speed or the golden-section search:
//! speeds come from bisecting the simulated crossing height, optima from an
//! exhaustive grid.

#![allow(dead_code)]

use hoopladder::kinematics::{height_at_plane, LaunchState, ShotParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Scenario drawn from a physically plausible box.
pub fn random_params(rng: &mut StdRng) -> ShotParams {
    ShotParams::new(
        rng.gen_range(0.5..2.5),
        rng.gen_range(1.0..20.0),
        rng.gen_range(2.5..3.5),
        rng.gen_range(5.0..15.0),
    )
    .unwrap()
}

/// Boundary angle recomputed from geometry: the line from release point to rim.
pub fn boundary_angle(p: &ShotParams) -> f64 {
    (p.hoop_height - p.release_altitude).atan2(p.distance)
}

/// A feasible angle at least half a degree above the boundary and below 85°.
pub fn random_feasible_angle(rng: &mut StdRng, p: &ShotParams) -> f64 {
    let lo = boundary_angle(p).max(0.0) + 0.5f64.to_radians();
    rng.gen_range(lo..85f64.to_radians())
}

/// Speed at which the simulated ball crosses the hoop plane at hoop height,
/// found by bisection on `height_at_plane` (monotone in speed above the boundary).
pub fn bisect_hoop_speed(p: &ShotParams, angle: f64) -> f64 {
    let miss =
        |v: f64| height_at_plane(p, &LaunchState { angle, speed: v }).unwrap() - p.hoop_height;
    let mut lo = 1e-3;
    let mut hi = 1.0;
    while miss(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        assert!(hi < 1e9, "no bracket for angle {angle}");
    }
    assert!(miss(lo) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if miss(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Exhaustive minimum of `f` on `n` evenly spaced points of `[lo, hi]`.
/// Returns `(argmin, f(argmin), cell width)`.
pub fn brute_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> (f64, f64, f64) {
    let cell = (hi - lo) / (n - 1) as f64;
    let mut best = (lo, f(lo));
    for i in 1..n {
        let x = lo + cell * i as f64;
        let y = f(x);
        if y < best.1 {
            best = (x, y);
        }
    }
    (best.0, best.1, cell)
}

/// Softest-shot angle from the geometry: the bisector of vertical and the
/// line to the rim, `45° + ½·atan((h − a)/d)`.
pub fn closed_form_optimum(p: &ShotParams) -> f64 {
    std::f64::consts::FRAC_PI_4 + 0.5 * boundary_angle(p)
}
