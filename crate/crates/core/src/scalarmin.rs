//! Bracketed scalar minimization.
//!
//! [`minimize_scalar`] runs a golden-section search: each step keeps the
//! sub-interval holding the smaller interior probe and shrinks the bracket by
//! `r = (√5 − 1)/2`. One of the two interior probes survives each step, so
//! every iteration costs a single new evaluation. [`grid_scan`] is an
//! exhaustive evaluation on an even grid, kept as an independent oracle.

use thiserror::Error;

/// Inverse golden ratio, `(√5 − 1) / 2`.
pub const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MinError {
    #[error("invalid bracket [{lo}, {hi}]: lo must be strictly below hi")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("grid scan needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("objective returned {value} at x = {x}")]
    NonFiniteObjective { x: f64, value: f64 },
    #[error("objective is infeasible at every grid point")]
    AllInfeasible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self, MinError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(MinError::InvalidBracket { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.lo..=self.hi).contains(&x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinResult {
    pub x: f64,
    pub f_at_x: f64,
    pub iterations: usize,
    /// Width of the final interval (grid spacing for [`grid_scan`]).
    pub achieved_tolerance: f64,
}

/// Upper bound on golden-section iterations needed to shrink `width` to `tol`.
pub fn iteration_bound(width: f64, tol: f64) -> usize {
    if width <= tol {
        return 2;
    }
    ((tol / width).ln() / INV_PHI.ln()).ceil() as usize + 2
}

fn eval<F: FnMut(f64) -> f64>(f: &mut F, x: f64) -> Result<f64, MinError> {
    let value = f(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(MinError::NonFiniteObjective { x, value })
    }
}

/// Golden-section state. Exposed so the contraction can be stepped and inspected.
#[derive(Debug, Clone)]
pub struct GoldenSection<F> {
    f: F,
    lo: f64,
    hi: f64,
    // interior probes, left < right
    left: (f64, f64),
    right: (f64, f64),
    iterations: usize,
}

impl<F: FnMut(f64) -> f64> GoldenSection<F> {
    pub fn new(mut f: F, bracket: Bracket) -> Result<Self, MinError> {
        let (lo, hi) = (bracket.lo, bracket.hi);
        let width = hi - lo;
        let xl = hi - INV_PHI * width;
        let xr = lo + INV_PHI * width;
        let fl = eval(&mut f, xl)?;
        let fr = eval(&mut f, xr)?;
        Ok(Self {
            f,
            lo,
            hi,
            left: (xl, fl),
            right: (xr, fr),
            iterations: 0,
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// One contraction. The new interior probe is placed symmetrically to the
    /// surviving one so the interval ratio stays at `INV_PHI`.
    pub fn step(&mut self) -> Result<(), MinError> {
        if self.left.1 <= self.right.1 {
            self.hi = self.right.0;
            self.right = self.left;
            let x = self.hi - INV_PHI * (self.hi - self.lo);
            self.left = (x, eval(&mut self.f, x)?);
        } else {
            self.lo = self.left.0;
            self.left = self.right;
            let x = self.lo + INV_PHI * (self.hi - self.lo);
            self.right = (x, eval(&mut self.f, x)?);
        }
        self.iterations += 1;
        Ok(())
    }

    fn finish(mut self) -> Result<MinResult, MinError> {
        let x = 0.5 * (self.lo + self.hi);
        let f_at_x = eval(&mut self.f, x)?;
        Ok(MinResult {
            x,
            f_at_x,
            iterations: self.iterations,
            achieved_tolerance: self.hi - self.lo,
        })
    }
}

/// Minimizes a unimodal `f` on `bracket` until the bracket is no wider than `tol`.
/// Returns the midpoint of the final interval.
pub fn minimize_scalar<F: FnMut(f64) -> f64>(
    f: F,
    bracket: Bracket,
    tol: f64,
) -> Result<MinResult, MinError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(MinError::InvalidTolerance(tol));
    }
    let mut search = GoldenSection::new(f, bracket)?;
    // The iteration cap only guards against rounding stalls on tiny tolerances.
    let cap = iteration_bound(bracket.width(), tol) + 64;
    while search.hi - search.lo > tol && search.iterations < cap {
        search.step()?;
    }
    search.finish()
}

/// Evaluates `f` at `n` evenly spaced points including both endpoints.
/// `None` marks an infeasible point, which is skipped. Ties go to the smaller x.
pub fn grid_scan<F: FnMut(f64) -> Option<f64>>(
    mut f: F,
    bracket: Bracket,
    n: usize,
) -> Result<MinResult, MinError> {
    if n < 2 {
        return Err(MinError::TooFewPoints(n));
    }
    let last = (n - 1) as f64;
    let mut best: Option<(f64, f64)> = None;
    for i in 0..n {
        let x = if i == n - 1 {
            bracket.hi
        } else {
            bracket.lo + bracket.width() * (i as f64 / last)
        };
        let Some(value) = f(x) else { continue };
        if !value.is_finite() {
            return Err(MinError::NonFiniteObjective { x, value });
        }
        if best.is_none_or(|(_, fb)| value < fb) {
            best = Some((x, value));
        }
    }
    let (x, f_at_x) = best.ok_or(MinError::AllInfeasible)?;
    Ok(MinResult {
        x,
        f_at_x,
        iterations: n,
        achieved_tolerance: bracket.width() / last,
    })
}
