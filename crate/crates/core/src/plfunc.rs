//! Piecewise-linear functions on uniform grids and the repair transforms that
//! force a mutated candidate back into a problem's feasible set.
//!
//! Every transform consumes a [`PlFunction`] and returns the repaired one, so
//! a problem's repair pipeline reads as a chain of method calls. Node
//! abscissas never move; only ordinates are rewritten.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A continuous curve `y(x)` that can be sampled at arbitrary abscissas.
///
/// Implemented for every `Fn(f64) -> Result<f64>` so closures work directly.
pub trait Curve {
    fn y_at(&self, x: f64) -> Result<f64>;
}

impl<F> Curve for F
where
    F: Fn(f64) -> Result<f64>,
{
    fn y_at(&self, x: f64) -> Result<f64> {
        self(x)
    }
}

/// Equally spaced nodes `x_i = x_start + i * (x_end - x_start) / (n_points - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_start: f64,
    x_end: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_start: f64, x_end: f64, n_points: usize) -> Result<Self> {
        if !(x_start.is_finite() && x_end.is_finite()) {
            return Err(Error::InvalidGrid("non-finite bounds".into()));
        }
        if x_end <= x_start {
            return Err(Error::InvalidGrid(format!(
                "x_end ({x_end}) must exceed x_start ({x_start})"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 nodes, got {n_points}"
            )));
        }
        Ok(Self {
            x_start,
            x_end,
            n_points,
        })
    }

    /// Grid with `segments + 1` nodes.
    pub fn with_segments(x_start: f64, x_end: f64, segments: usize) -> Result<Self> {
        Self::new(x_start, x_end, segments + 1)
    }

    pub fn x_start(&self) -> f64 {
        self.x_start
    }

    pub fn x_end(&self) -> f64 {
        self.x_end
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_segments(&self) -> usize {
        self.n_points - 1
    }

    /// Node spacing.
    pub fn step(&self) -> f64 {
        (self.x_end - self.x_start) / (self.n_segments() as f64)
    }

    /// Abscissa of node `i`; the last node is exactly `x_end`.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        if i + 1 == self.n_points {
            self.x_end
        } else {
            self.x_start + (i as f64) * self.step()
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.node(i))
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_start && x <= self.x_end
    }
}

/// Piecewise-linear function: one ordinate per grid node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlFunction {
    grid: Grid,
    y: Vec<f64>,
}

impl PlFunction {
    pub fn new(grid: Grid, y: Vec<f64>) -> Result<Self> {
        if y.len() != grid.n_points() {
            return Err(Error::LengthMismatch {
                expected: grid.n_points(),
                got: y.len(),
            });
        }
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { grid, y })
    }

    /// Straight line from `y_start` to `y_end`.
    pub fn line(grid: Grid, y_start: f64, y_end: f64) -> Self {
        let span = grid.x_end() - grid.x_start();
        let y = grid
            .nodes()
            .map(|x| y_start + (y_end - y_start) * (x - grid.x_start()) / span)
            .collect();
        Self { grid, y }
    }

    /// Interpolates `curve` at every node of `grid`.
    pub fn sample<C: Curve + ?Sized>(curve: &C, grid: Grid) -> Result<Self> {
        let y = grid
            .nodes()
            .map(|x| {
                curve.y_at(x).map_err(|e| match e {
                    Error::SamplerDomain(_) => e,
                    other => Error::SamplerDomain(format!("at x = {x}: {other}")),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(grid, y)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn into_values(self) -> Vec<f64> {
        self.y
    }

    pub fn first(&self) -> f64 {
        self.y[0]
    }

    pub fn last(&self) -> f64 {
        self.y[self.y.len() - 1]
    }

    /// Linear interpolation; exact at nodes.
    pub fn eval_at(&self, x: f64) -> Result<f64> {
        let g = &self.grid;
        if !g.contains(x) {
            return Err(Error::Domain {
                x,
                lo: g.x_start(),
                hi: g.x_end(),
            });
        }
        let last = g.n_segments() - 1;
        let mut k = (((x - g.x_start()) / g.step()).floor() as usize).min(last);
        // floor() can land one segment off near node boundaries
        if k > 0 && x < g.node(k) {
            k -= 1;
        } else if k < last && x > g.node(k + 1) {
            k += 1;
        }
        let (x0, x1) = (g.node(k), g.node(k + 1));
        if x == x0 {
            return Ok(self.y[k]);
        }
        if x == x1 {
            return Ok(self.y[k + 1]);
        }
        let t = (x - x0) / (x1 - x0);
        Ok(self.y[k] + t * (self.y[k + 1] - self.y[k]))
    }

    /// Per-segment slopes, length `n_points - 1`.
    pub fn slopes(&self) -> Vec<f64> {
        let h = self.grid.step();
        self.y.windows(2).map(|w| (w[1] - w[0]) / h).collect()
    }

    /// Iterator over segments as `(x1, y1, x2, y2)`.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        (0..self.grid.n_segments()).map(move |i| {
            (
                self.grid.node(i),
                self.y[i],
                self.grid.node(i + 1),
                self.y[i + 1],
            )
        })
    }

    pub fn pin_endpoints(mut self, y_start: f64, y_end: f64) -> Self {
        let n = self.y.len();
        self.y[0] = y_start;
        self.y[n - 1] = y_end;
        self
    }

    /// Elementwise clamp into `[lower_i, upper_i]`.
    pub fn clamp_box(mut self, lower: &[f64], upper: &[f64]) -> Result<Self> {
        let n = self.y.len();
        for (len, _) in [(lower.len(), 0), (upper.len(), 1)] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        if let Some(i) = (0..n).find(|&i| lower[i] > upper[i]) {
            return Err(Error::InvertedBounds(i));
        }
        for ((y, &lo), &hi) in self.y.iter_mut().zip(lower).zip(upper) {
            *y = y.max(lo).min(hi);
        }
        Ok(self)
    }

    /// Clamp against constant bounds.
    pub fn clamp_const(mut self, lower: f64, upper: f64) -> Result<Self> {
        if lower > upper {
            return Err(Error::InvertedBounds(0));
        }
        for y in &mut self.y {
            *y = y.max(lower).min(upper);
        }
        Ok(self)
    }

    /// Forward running maximum: the smallest nondecreasing sequence above the input.
    pub fn monotone_repair(mut self) -> Self {
        let mut running = f64::NEG_INFINITY;
        for y in &mut self.y {
            running = running.max(*y);
            *y = running;
        }
        self
    }

    /// Greatest convex minorant of the node set, evaluated at the nodes.
    ///
    /// Lower hull by a monotone-chain stack scan; nodes between hull vertices
    /// are interpolated. Endpoints are always hull vertices.
    pub fn convex_repair(mut self) -> Self {
        let n = self.y.len();
        if n < 3 {
            return self;
        }
        let xs: Vec<f64> = self.grid.nodes().collect();
        let mut hull: Vec<usize> = Vec::with_capacity(n);
        for i in 0..n {
            while hull.len() >= 2 {
                let o = hull[hull.len() - 2];
                let a = hull[hull.len() - 1];
                let cross = (xs[a] - xs[o]) * (self.y[i] - self.y[o])
                    - (self.y[a] - self.y[o]) * (xs[i] - xs[o]);
                if cross < 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        for pair in hull.windows(2) {
            let (l, r) = (pair[0], pair[1]);
            let slope = (self.y[r] - self.y[l]) / (xs[r] - xs[l]);
            for i in l + 1..r {
                self.y[i] = self.y[l] + slope * (xs[i] - xs[l]);
            }
        }
        self
    }

    /// Largest node-wise distance to `reference`.
    pub fn max_abs_deviation<C: Curve + ?Sized>(&self, reference: &C) -> Result<f64> {
        self.grid
            .nodes()
            .zip(&self.y)
            .try_fold(0.0_f64, |acc, (x, &y)| {
                Ok(acc.max((y - reference.y_at(x)?).abs()))
            })
    }
}

/// Slopes never decrease by more than `tol`.
pub fn is_convex(f: &PlFunction, tol: f64) -> bool {
    f.slopes().windows(2).all(|w| w[1] >= w[0] - tol)
}

/// Ordinates never decrease by more than `tol`.
pub fn is_nondecreasing(f: &PlFunction, tol: f64) -> bool {
    f.y().windows(2).all(|w| w[1] >= w[0] - tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, n: usize) -> Grid {
        Grid::new(a, b, n).unwrap()
    }

    fn pl(g: Grid, y: &[f64]) -> PlFunction {
        PlFunction::new(g, y.to_vec()).unwrap()
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(Grid::new(1.0, 1.0, 3).is_err());
        assert!(Grid::new(2.0, 1.0, 3).is_err());
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert_eq!(grid(0.0, 10.0, 21).node(20), 10.0);
    }

    #[test]
    fn sample_identity_and_constant() {
        let f = PlFunction::sample(&|x: f64| Ok(x), grid(0.0, 1.0, 3)).unwrap();
        assert_eq!(f.y(), &[0.0, 0.5, 1.0]);
        let c = PlFunction::sample(&|_x: f64| Ok(3.25), grid(0.0, 4.0, 6)).unwrap();
        assert!(c.y().iter().all(|&v| v == 3.25));
    }

    #[test]
    fn sample_reports_sampler_domain() {
        let bad = |x: f64| {
            if x > 0.5 {
                Err(Error::Domain {
                    x,
                    lo: 0.0,
                    hi: 0.5,
                })
            } else {
                Ok(x)
            }
        };
        let err = PlFunction::sample(&bad, grid(0.0, 1.0, 3)).unwrap_err();
        assert!(matches!(err, Error::SamplerDomain(_)));
    }

    #[test]
    fn eval_interpolates() {
        let f = pl(grid(0.0, 1.0, 2), &[0.0, 1.0]);
        assert_eq!(f.eval_at(0.25).unwrap(), 0.25);
        let f = pl(grid(0.0, 2.0, 5), &[1.0, 0.6, 0.2, 0.1, 0.0]);
        assert!((f.eval_at(0.75).unwrap() - 0.4).abs() < 1e-15);
        for (i, x) in f.grid().nodes().enumerate() {
            assert_eq!(f.eval_at(x).unwrap(), f.y()[i]);
        }
        assert!(matches!(f.eval_at(2.1), Err(Error::Domain { .. })));
        assert!(f.eval_at(-1e-9).is_err());
    }

    #[test]
    fn slopes_examples() {
        assert_eq!(pl(grid(0.0, 2.0, 3), &[0.0, 1.0, 2.0]).slopes(), [1.0, 1.0]);
        assert_eq!(pl(grid(0.0, 2.0, 3), &[0.0; 3]).slopes(), [0.0, 0.0]);
        let s = pl(grid(0.0, 10.0, 3), &[10.0, 4.0, 0.0]).slopes();
        assert!((s[0] + 1.2).abs() < 1e-15 && (s[1] + 0.8).abs() < 1e-15);
    }

    #[test]
    fn pin_examples() {
        let f = pl(grid(0.0, 1.0, 3), &[3.0, 5.0, 7.0]).pin_endpoints(10.0, 0.0);
        assert_eq!(f.y(), &[10.0, 5.0, 0.0]);
        assert_eq!(f.clone().pin_endpoints(10.0, 0.0), f);
        let f = pl(grid(0.0, 1.0, 2), &[1.0, 1.0]).pin_endpoints(0.0, 2.0);
        assert_eq!(f.y(), &[0.0, 2.0]);
    }

    #[test]
    fn clamp_examples() {
        let g = grid(0.0, 2.0, 5);
        let upper: Vec<f64> = g.nodes().map(|x| 1.0 - x / 2.0).collect();
        let lower = vec![0.0; 5];
        let f = pl(g, &[1.0, 0.9, -0.1, 0.3, 0.0])
            .clamp_box(&lower, &upper)
            .unwrap();
        assert_eq!(f.y(), &[1.0, 0.75, 0.0, 0.25, 0.0]);
        assert_eq!(f.clone().clamp_box(&lower, &upper).unwrap(), f);
        let below = pl(g, &[-1.0; 5]).clamp_box(&lower, &upper).unwrap();
        assert_eq!(below.y(), &lower[..]);
        assert!(matches!(
            below.clone().clamp_box(&upper, &lower),
            Err(Error::InvertedBounds(0))
        ));
        assert!(below.clamp_box(&lower[..3], &upper).is_err());
    }

    #[test]
    fn monotone_examples() {
        let g = grid(0.0, 1.0, 5);
        let f = pl(g, &[0.0, 0.5, 0.3, 1.2, 2.0]).monotone_repair();
        assert_eq!(f.y(), &[0.0, 0.5, 0.5, 1.2, 2.0]);
        assert_eq!(f.clone().monotone_repair(), f);
        let f = pl(grid(0.0, 1.0, 3), &[2.0, 1.0, 0.0]).monotone_repair();
        assert_eq!(f.y(), &[2.0, 2.0, 2.0]);
    }

    #[test]
    fn convex_examples() {
        let g = grid(0.0, 2.0, 5);
        let f = pl(g, &[1.0, 0.75, 0.2, 0.25, 0.0]).convex_repair();
        let want = [1.0, 0.6, 0.2, 0.1, 0.0];
        for (a, b) in f.y().iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{:?}", f.y());
        }
        let convex = pl(g, &[1.0, 0.3, 0.0, 0.1, 0.5]);
        assert_eq!(convex.clone().convex_repair(), convex);
        let line = PlFunction::line(g, 1.0, 0.0);
        let r = line.clone().convex_repair();
        for (a, b) in r.y().iter().zip(line.y()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn deviation_examples() {
        let g = grid(0.0, 1.0, 5);
        let curve = |x: f64| Ok(x * x);
        let mut f = PlFunction::sample(&curve, g).unwrap();
        assert_eq!(f.max_abs_deviation(&curve).unwrap(), 0.0);
        f.y[2] += 0.15;
        assert!((f.max_abs_deviation(&curve).unwrap() - 0.15).abs() < 1e-15);
    }
}
