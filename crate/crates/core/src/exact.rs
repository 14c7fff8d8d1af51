//! Reference solutions: the cycloid, the restricted-brachistochrone bounds and
//! composite curve, Newton's parametric profile, and the thermal-resistance
//! constants for the supported instance.
//!
//! All scalar root finding is plain bisection on an explicit bracket.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::FluxPair;
use crate::plfunc::Curve;
use crate::quadrature::adaptive_quadrature;

/// Bracket width at which bisection stops.
pub const ROOT_TOL: f64 = 1e-12;

/// Root of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if !(flo.signum() != fhi.signum()) {
        return None;
    }
    let lo_negative = flo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Cycloid `x = x0 + R (θ - sin θ)`, `y = y0 - R (1 - cos θ)` for `θ ∈ [0, θ_end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycloidSolution {
    /// Rolling-circle radius.
    pub radius: f64,
    pub theta_end: f64,
    pub origin: (f64, f64),
    /// Descent time `sqrt(R / g) θ_end`.
    pub time: f64,
    pub g: f64,
}

impl CycloidSolution {
    pub fn point(&self, theta: f64) -> (f64, f64) {
        let (x0, y0) = self.origin;
        (
            x0 + self.radius * (theta - theta.sin()),
            y0 - self.radius * (1.0 - theta.cos()),
        )
    }

    pub fn end(&self) -> (f64, f64) {
        self.point(self.theta_end)
    }

    /// Parameter value whose abscissa is `x`.
    pub fn theta_at(&self, x: f64) -> Result<f64> {
        let (x0, _) = self.origin;
        let x1 = self.end().0;
        let slack = 1e-9 * (1.0 + (x1 - x0).abs());
        if !(x >= x0 - slack && x <= x1 + slack) {
            return Err(Error::Domain { x, lo: x0, hi: x1 });
        }
        if x <= x0 {
            return Ok(0.0);
        }
        if x >= x1 {
            return Ok(self.theta_end);
        }
        let theta = bisect(|t| self.point(t).0 - x, 0.0, self.theta_end, ROOT_TOL)
            .expect("x(θ) is monotone on [0, θ_end] and x lies inside its range");
        Ok(theta)
    }
}

impl Curve for CycloidSolution {
    fn y_at(&self, x: f64) -> Result<f64> {
        let theta = self.theta_at(x)?;
        Ok(self.point(theta).1)
    }
}

/// Cycloid through `a` (release point, cusp) and `b`, with descent time at gravity `g`.
pub fn solve_cycloid(a: (f64, f64), b: (f64, f64), g: f64) -> Result<CycloidSolution> {
    let (dx, drop) = (b.0 - a.0, a.1 - b.1);
    if !(dx > 0.0 && drop > 0.0) || !(g > 0.0) {
        return Err(Error::NoCycloidArc(format!(
            "end point must lie strictly right of and below the start (dx = {dx}, drop = {drop}, g = {g})"
        )));
    }
    let ratio = drop / dx;
    // (1 - cos θ)/(θ - sin θ) falls monotonically from +inf at 0 to 0 at 2π
    let residual = |t: f64| (1.0 - t.cos()) / (t - t.sin()) - ratio;
    let theta_end = bisect(residual, 1e-6, 2.0 * PI, ROOT_TOL)
        .ok_or_else(|| Error::NoCycloidArc(format!("ratio {ratio} not bracketed")))?;
    let radius = drop / (1.0 - theta_end.cos());
    Ok(CycloidSolution {
        radius,
        theta_end,
        origin: a,
        time: (radius / g).sqrt() * theta_end,
        g,
    })
}

/// Closed-form values for the restricted problem with chord `(0,1) → (b,0)`,
/// in the dimensionless functional's units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RammReference {
    pub b: f64,
    /// Value on the chord.
    pub t0: f64,
    /// Value on the path through the origin.
    pub tp: f64,
    /// Value on the two-segment path through `(π/2, 0)`.
    pub tpbr: f64,
    pub case_id: u8,
}

pub fn ramm_reference(b: f64) -> Result<RammReference> {
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "b must be positive, got {b}"
        )));
    }
    let case_id = if b < 4.0 / 3.0 {
        1
    } else if b <= FRAC_PI_2 {
        2
    } else {
        3
    };
    Ok(RammReference {
        b,
        t0: 2.0 * (1.0 + b * b).sqrt(),
        tp: 2.0 + b,
        tpbr: (4.0 + PI * PI).sqrt() + b - FRAC_PI_2,
        case_id,
    })
}

/// The case-3 candidate optimum: cycloid from `(0,1)` to `(π/2,0)`, then flat to `(b,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RammConjecture {
    pub b: f64,
    pub arc: CycloidSolution,
    /// Physical descent time along the composite curve.
    pub time: f64,
}

impl Curve for RammConjecture {
    fn y_at(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.b).contains(&x) {
            return Err(Error::Domain {
                x,
                lo: 0.0,
                hi: self.b,
            });
        }
        if x >= FRAC_PI_2 {
            Ok(0.0)
        } else {
            self.arc.y_at(x)
        }
    }
}

pub fn ramm_conjectured_curve(b: f64, g: f64) -> Result<RammConjecture> {
    if !(b > FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!(
            "composite curve needs b > π/2, got {b}"
        )));
    }
    let arc = solve_cycloid((0.0, 1.0), (FRAC_PI_2, 0.0), g)?;
    let time = arc.time + (b - FRAC_PI_2) / (2.0 * g).sqrt();
    Ok(RammConjecture { b, arc, time })
}

/// Newton's minimal-resistance profile: flat nose on `[0, 2λ]`, then
/// `x(u) = (λ/2)(1/u + 2u + u³)`, `y(u) = (λ/2)(-ln u + u² + ¾u⁴) - 7λ/8`
/// for `u ∈ [1, u_max]`; `u` is the slope `dy/dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonProfile {
    pub lambda_n: f64,
    pub u_max: f64,
    pub r: f64,
    pub h: f64,
}

fn newton_x_unit(u: f64) -> f64 {
    0.5 * (1.0 / u + 2.0 * u + u * u * u)
}

fn newton_dx_unit(u: f64) -> f64 {
    0.5 * (-1.0 / (u * u) + 2.0 + 3.0 * u * u)
}

fn newton_y_unit(u: f64) -> f64 {
    0.5 * (-u.ln() + u * u + 0.75 * u.powi(4)) - 0.875
}

impl NewtonProfile {
    pub fn x_of(&self, u: f64) -> f64 {
        self.lambda_n * newton_x_unit(u)
    }

    pub fn y_of(&self, u: f64) -> f64 {
        self.lambda_n * newton_y_unit(u)
    }

    /// End of the flat nose.
    pub fn nose(&self) -> f64 {
        2.0 * self.lambda_n
    }
}

impl Curve for NewtonProfile {
    fn y_at(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.r).contains(&x) {
            return Err(Error::Domain {
                x,
                lo: 0.0,
                hi: self.r,
            });
        }
        if x <= self.nose() {
            return Ok(0.0);
        }
        if x == self.r {
            return Ok(self.h);
        }
        let u = bisect(|u| self.x_of(u) - x, 1.0, self.u_max, ROOT_TOL)
            .expect("x(u) is increasing on [1, u_max]");
        Ok(self.y_of(u))
    }
}

/// Solves `x(u_max) = r`, `y(u_max) = H`. The ratio `y/x` does not involve λ,
/// so `u_max` is found first by bisection and λ follows from `x(u_max) = r`.
pub fn solve_newton_profile(r: f64, h: f64) -> Result<NewtonProfile> {
    if !(r > 0.0 && h > 0.0) {
        return Err(Error::NoNewtonProfile(format!(
            "need r > 0 and H > 0 (r = {r}, H = {h})"
        )));
    }
    let target = h / r;
    let ratio = |u: f64| newton_y_unit(u) / newton_x_unit(u) - target;
    let mut hi = 2.0;
    while ratio(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(Error::NoNewtonProfile(format!(
                "H/r = {target} beyond the representable range"
            )));
        }
    }
    let u_max = bisect(ratio, 1.0, hi, ROOT_TOL)
        .ok_or_else(|| Error::NoNewtonProfile(format!("H/r = {target} not bracketed")))?;
    Ok(NewtonProfile {
        lambda_n: r / newton_x_unit(u_max),
        u_max,
        r,
        h,
    })
}

/// Resistance `∫ x/(1+y'^2) dx` of the exact profile: `2λ²` from the nose plus
/// the curved part integrated in the slope parameter.
pub fn newton_exact_resistance(p: &NewtonProfile) -> Result<f64> {
    let lambda = p.lambda_n;
    let curved = adaptive_quadrature(
        |u| lambda * lambda * newton_x_unit(u) * newton_dx_unit(u) / (1.0 + u * u),
        1.0,
        p.u_max,
        1e-13,
    );
    let curved = match curved {
        Ok(v) => v,
        // u_max == 1: no curved part
        Err(_) if p.u_max <= 1.0 => 0.0,
        Err(e) => return Err(e),
    };
    Ok(2.0 * lambda * lambda + curved)
}

/// Constants of the rarefied-medium body for the supported height `h = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalReference {
    pub h: f64,
    pub u_star: f64,
    pub u_minus0: f64,
    pub case_id: u8,
    /// Tabulated optimal resistance.
    pub resistance: f64,
}

pub const THERMAL_U_STAR: f64 = 1.60847;
pub const THERMAL_U_MINUS0: f64 = 1.0;
pub const THERMAL_RESISTANCE: f64 = 0.681;

pub fn thermal_reference(h: f64) -> Result<ThermalReference> {
    if (h - 2.0).abs() > 1e-12 {
        return Err(Error::Unsupported(format!(
            "thermal reference constants are only tabulated for h = 2, got {h}"
        )));
    }
    Ok(ThermalReference {
        h: 2.0,
        u_star: THERMAL_U_STAR,
        u_minus0: THERMAL_U_MINUS0,
        case_id: 3,
        resistance: THERMAL_RESISTANCE,
    })
}

impl ThermalReference {
    /// Triangle-plus-trapezium classification: `u* < h < u* + u-0`.
    pub fn is_case_three(&self) -> bool {
        self.u_star < self.h && self.h < self.u_star + self.u_minus0
    }

    pub fn front_height(&self) -> f64 {
        self.u_star
    }

    pub fn rear_height(&self) -> f64 {
        self.h - self.u_star
    }

    /// Triangle front: constant slope `u*` up to `u*`.
    pub fn front_curve(&self) -> impl Curve + '_ {
        move |t: f64| unit_interval(t).map(|t| self.u_star * t)
    }

    /// Trapezium rear: slope `u-0` until the rear height, then flat.
    pub fn rear_curve(&self) -> impl Curve + '_ {
        move |t: f64| unit_interval(t).map(|t| (self.u_minus0 * t).min(self.rear_height()))
    }

    /// Resistance of the triangle-plus-trapezium body built from the stored
    /// constants: `p+(u*) + (h - u*) p-(u-0) / u-0`. Agrees with the
    /// tabulated value to its three digits.
    pub fn shape_resistance(&self, flux: &FluxPair) -> f64 {
        (flux.p_plus)(self.u_star)
            + self.rear_height() * ((flux.p_minus)(self.u_minus0) - (flux.p_minus)(0.0))
                / self.u_minus0
            + (flux.p_minus)(0.0)
    }
}

fn unit_interval(t: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&t) {
        Ok(t)
    } else {
        Err(Error::Domain {
            x: t,
            lo: 0.0,
            hi: 1.0,
        })
    }
}
