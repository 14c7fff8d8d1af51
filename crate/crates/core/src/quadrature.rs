//! Adaptive Simpson quadrature, used as an independent check on the
//! closed-form functionals.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 50;

/// Integrates `f` over `[a, b]` to within roughly `tol`.
///
/// The integration variable is first remapped through the polynomial step
/// `x = a + (b - a) s(t)`, `s(t) = t^4 (35 - 84t + 70t^2 - 20t^3)`, whose
/// Jacobian `140 t^3 (1 - t)^3` vanishes to third order at both ends. An
/// inverse-square-root endpoint singularity becomes a smooth integrand that
/// is zero at the end, and `f` is never evaluated exactly at `a` or `b`.
pub fn adaptive_quadrature<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a < b) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature needs a < b and tol > 0 (a = {a}, b = {b}, tol = {tol})"
        )));
    }
    let width = b - a;
    let g = |t: f64| {
        let c = 1.0 - t;
        let jac = 140.0 * (t * c).powi(3) * width;
        if jac == 0.0 {
            0.0
        } else {
            let s = t.powi(4) * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
            f(a + width * s) * jac
        }
    };
    let (fa, fm, fb) = (g(0.0), g(0.5), g(1.0));
    let whole = simpson(0.0, 1.0, fa, fm, fb);
    let value = refine(&g, 0.0, 1.0, fa, fm, fb, whole, tol, MAX_DEPTH)
        .ok_or(Error::Quadrature { a, b })?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Quadrature { a, b })
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<G: Fn(f64) -> f64>(
    g: &G,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (g(lm), g(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return None;
    }
    // stop once the tolerance is below what f64 can resolve for this panel
    let floor = 8.0 * f64::EPSILON * (left.abs() + right.abs());
    if delta.abs() <= 15.0 * tol.max(floor) {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = refine(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?;
    let r = refine(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?;
    Some(l + r)
}
