//! Objective functionals evaluated exactly on piecewise-linear candidates.
//!
//! Each integrand is integrated in closed form segment by segment, so the
//! value is exact for the polyline (up to rounding) and never depends on a
//! quadrature rule. Energy-infeasible descents return `f64::INFINITY`.

use serde::{Deserialize, Serialize};

use crate::plfunc::PlFunction;

/// Standard gravity used throughout the examples.
pub const STANDARD_G: f64 = 9.8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub g: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { g: STANDARD_G }
    }
}

/// Front and rear pressure fluxes of a body in a rarefied medium, as
/// functions of the profile slope.
#[derive(Clone, Copy)]
pub struct FluxPair {
    pub p_plus: fn(f64) -> f64,
    pub p_minus: fn(f64) -> f64,
}

impl FluxPair {
    /// `p+(u) = 1/(1+u^2) + 1/2`, `p-(u) = (1/2)/(1+u^2) - 1/2`.
    pub fn chaotic_medium() -> Self {
        Self {
            p_plus: |u| 1.0 / (1.0 + u * u) + 0.5,
            p_minus: |u| 0.5 / (1.0 + u * u) - 0.5,
        }
    }
}

impl std::fmt::Debug for FluxPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FluxPair")
            .field("p_plus(0)", &(self.p_plus)(0.0))
            .field("p_minus(0)", &(self.p_minus)(0.0))
            .finish()
    }
}

/// The particle cannot reach the end of a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stall;

/// Outcome of sliding along one straight segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transit {
    pub time: f64,
    pub v_out: f64,
}

/// Frictionless slide from `(x1, y1)` to `(x2, y2)` entering at speed `v_in`.
///
/// Tangential acceleration is constant on a line, so the exit speed follows
/// from energy, `v_out^2 = v_in^2 + 2 g (y1 - y2)`, and the transit time is
/// `L / mean(v_in, v_out)`. That form is the same as `(v_out - v_in) / a_t`
/// but stays well conditioned as the segment approaches horizontal.
pub fn segment_descent_time(
    (x1, y1): (f64, f64),
    (x2, y2): (f64, f64),
    v_in: f64,
    g: f64,
) -> Result<Transit, Stall> {
    let v_out_sq = v_in * v_in + 2.0 * g * (y1 - y2);
    if !(v_out_sq >= 0.0) {
        return Err(Stall);
    }
    let v_out = v_out_sq.sqrt();
    let speed_sum = v_in + v_out;
    if !(speed_sum > 0.0) {
        return Err(Stall);
    }
    let length = (x2 - x1).hypot(y2 - y1);
    Ok(Transit {
        time: 2.0 * length / speed_sum,
        v_out,
    })
}

/// Descent time along `f` for a particle released at rest at height
/// `release_height`. Returns `+inf` if any segment stalls.
pub fn descent_time(f: &PlFunction, g: f64, release_height: f64) -> f64 {
    let speed = |y: f64| {
        let sq = 2.0 * g * (release_height - y);
        (sq >= 0.0).then(|| sq.sqrt())
    };
    let Some(mut v) = speed(f.first()) else {
        return f64::INFINITY;
    };
    let mut total = 0.0;
    for (x1, y1, x2, y2) in f.segments() {
        match segment_descent_time((x1, y1), (x2, y2), v, g) {
            // re-derive the speed from the release height so rounding does not accumulate
            Ok(t) => {
                total += t.time;
                v = speed(y2).unwrap_or(t.v_out);
            }
            Err(Stall) => return f64::INFINITY,
        }
    }
    total
}

/// `∫ sqrt(1 + y'^2) / sqrt(1 - y) dx`: the descent-time functional with the
/// release at height 1 and the physical constant dropped.
pub fn ramm_functional(f: &PlFunction) -> f64 {
    if f.y().iter().any(|&y| y > 1.0) {
        return f64::INFINITY;
    }
    f.segments()
        .map(|(x1, y1, x2, y2)| {
            let dx = x2 - x1;
            let m = (y2 - y1) / dx;
            // (2 sqrt(1+m^2)/m)(sqrt(1-y1) - sqrt(1-y2)), rationalised
            let denom = (1.0 - y1).sqrt() + (1.0 - y2).sqrt();
            if denom > 0.0 {
                2.0 * (1.0 + m * m).sqrt() * dx / denom
            } else {
                f64::INFINITY
            }
        })
        .sum()
}

/// Physical descent time for the unit-height restricted problem.
pub fn ramm_time(f: &PlFunction, g: f64) -> f64 {
    descent_time(f, g, 1.0)
}

/// `∫ x / (1 + y'^2) dx` over the profile.
pub fn newton_resistance(f: &PlFunction) -> f64 {
    f.segments()
        .map(|(x1, y1, x2, y2)| {
            let m = (y2 - y1) / (x2 - x1);
            (x2 * x2 - x1 * x1) / (2.0 * (1.0 + m * m))
        })
        .sum()
}

/// `∫ p(f'(t)) dt` for one side of the body.
pub fn flux_integral(f: &PlFunction, p: fn(f64) -> f64) -> f64 {
    let h = f.grid().step();
    f.slopes().into_iter().map(|u| p(u) * h).sum()
}

/// Front resistance plus rear (negative) contribution.
pub fn thermal_resistance(front: &PlFunction, rear: &PlFunction, flux: &FluxPair) -> f64 {
    flux_integral(front, flux.p_plus) + flux_integral(rear, flux.p_minus)
}
