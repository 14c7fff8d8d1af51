//! The four benchmark problems: grid, candidate encoding, repair pipeline,
//! objective and reference solution for each.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::es::Problem;
use crate::exact::{
    newton_exact_resistance, ramm_conjectured_curve, ramm_reference, solve_cycloid,
    solve_newton_profile, thermal_reference, CycloidSolution, NewtonProfile, RammConjecture,
    RammReference, ThermalReference,
};
use crate::functionals::{
    descent_time, newton_resistance, ramm_time, thermal_resistance, FluxPair, STANDARD_G,
};
use crate::plfunc::{is_convex, is_nondecreasing, Grid, PlFunction};

/// Segments on the front curve of the thermal body; the rear gets the rest.
pub const THERMAL_FRONT_SEGMENTS: usize = 16;
pub const THERMAL_REAR_SEGMENTS: usize = 15;

/// Slack used by the feasibility predicates.
pub const FEASIBILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Brachistochrone,
    Ramm,
    Newton,
    Thermal,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [
        ProblemKind::Brachistochrone,
        ProblemKind::Ramm,
        ProblemKind::Newton,
        ProblemKind::Thermal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Brachistochrone => "brachistochrone",
            ProblemKind::Ramm => "ramm",
            ProblemKind::Newton => "newton",
            ProblemKind::Thermal => "thermal",
        }
    }

    /// One-letter tag used in summary tables.
    pub fn tag(self) -> char {
        match self {
            ProblemKind::Brachistochrone => 'B',
            ProblemKind::Ramm => 'R',
            ProblemKind::Newton => 'N',
            ProblemKind::Thermal => 'P',
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown problem `{s}`")))
    }
}

/// Exact solution attached to a problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReferenceSolution {
    Cycloid(CycloidSolution),
    RammComposite {
        curve: RammConjecture,
        bounds: RammReference,
    },
    RammCycloid {
        curve: CycloidSolution,
        bounds: RammReference,
    },
    Newton {
        profile: NewtonProfile,
        resistance: f64,
    },
    Thermal(ThermalReference),
}

impl ReferenceSolution {
    /// Objective value of the continuous optimum.
    pub fn objective(&self) -> f64 {
        match self {
            ReferenceSolution::Cycloid(c) => c.time,
            ReferenceSolution::RammComposite { curve, .. } => curve.time,
            ReferenceSolution::RammCycloid { curve, .. } => curve.time,
            ReferenceSolution::Newton { resistance, .. } => *resistance,
            ReferenceSolution::Thermal(t) => t.shape_resistance(&FluxPair::chaotic_medium()),
        }
    }
}

/// A decoded candidate.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Curve(PlFunction),
    Body {
        front: PlFunction,
        rear: PlFunction,
        h_plus: f64,
    },
}

#[derive(Debug, Clone)]
enum Layout {
    /// One curve with pinned endpoint heights.
    Curve {
        grid: Grid,
        y_start: f64,
        y_end: f64,
    },
    /// `[front offsets | rear offsets | h_plus]`. Each curve gene is the node
    /// height minus the chord from `(0,0)` to `(1, top)`, where `top` is
    /// `h_plus` for the front and `h - h_plus` for the rear. Moving `h_plus`
    /// therefore tilts a whole side instead of kinking its last segment.
    Body { front: Grid, rear: Grid, h: f64 },
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    kind: ProblemKind,
    layout: Layout,
    mask: Vec<bool>,
    /// Upper bound per node for the restricted problem (the chord).
    chord_bound: Vec<f64>,
    reference: ReferenceSolution,
    reference_objective: f64,
    g: f64,
}

fn end_mask(n: usize) -> Vec<bool> {
    let mut mask = vec![true; n];
    mask[0] = false;
    mask[n - 1] = false;
    mask
}

fn positive_segments(n_segments: usize, min: usize) -> Result<()> {
    if n_segments < min {
        return Err(Error::InvalidParameter(format!(
            "need at least {min} segments, got {n_segments}"
        )));
    }
    Ok(())
}

/// Classical problem from `(0,10)` to `(10,0)`.
pub fn make_brachistochrone(n_segments: usize) -> Result<ProblemSpec> {
    make_brachistochrone_between((0.0, 10.0), (10.0, 0.0), n_segments)
}

pub fn make_brachistochrone_between(
    a: (f64, f64),
    b: (f64, f64),
    n_segments: usize,
) -> Result<ProblemSpec> {
    positive_segments(n_segments, 2)?;
    let cycloid = solve_cycloid(a, b, STANDARD_G)?;
    let grid = Grid::with_segments(a.0, b.0, n_segments)?;
    Ok(ProblemSpec {
        kind: ProblemKind::Brachistochrone,
        layout: Layout::Curve {
            grid,
            y_start: a.1,
            y_end: b.1,
        },
        mask: end_mask(grid.n_points()),
        chord_bound: Vec::new(),
        reference_objective: cycloid.time,
        reference: ReferenceSolution::Cycloid(cycloid),
        g: STANDARD_G,
    })
}

/// Convex descent from `(0,1)` to `(b,0)` bounded between 0 and the chord.
pub fn make_ramm(b: f64, n_segments: usize) -> Result<ProblemSpec> {
    positive_segments(n_segments, 2)?;
    let bounds = ramm_reference(b)?;
    let grid = Grid::with_segments(0.0, b, n_segments)?;
    let reference = if b > FRAC_PI_2 {
        ReferenceSolution::RammComposite {
            curve: ramm_conjectured_curve(b, STANDARD_G)?,
            bounds,
        }
    } else {
        ReferenceSolution::RammCycloid {
            curve: solve_cycloid((0.0, 1.0), (b, 0.0), STANDARD_G)?,
            bounds,
        }
    };
    let chord_bound = PlFunction::line(grid, 1.0, 0.0).into_values();
    Ok(ProblemSpec {
        kind: ProblemKind::Ramm,
        layout: Layout::Curve {
            grid,
            y_start: 1.0,
            y_end: 0.0,
        },
        mask: end_mask(grid.n_points()),
        chord_bound,
        reference_objective: reference.objective(),
        reference,
        g: STANDARD_G,
    })
}

/// Nondecreasing profile from `(0,0)` to `(r,H)`.
pub fn make_newton(r: f64, h: f64, n_segments: usize) -> Result<ProblemSpec> {
    positive_segments(n_segments, 1)?;
    let profile = solve_newton_profile(r, h)?;
    let resistance = newton_exact_resistance(&profile)?;
    let grid = Grid::with_segments(0.0, r, n_segments)?;
    Ok(ProblemSpec {
        kind: ProblemKind::Newton,
        layout: Layout::Curve {
            grid,
            y_start: 0.0,
            y_end: h,
        },
        mask: end_mask(grid.n_points()),
        chord_bound: Vec::new(),
        reference: ReferenceSolution::Newton {
            profile,
            resistance,
        },
        reference_objective: resistance,
        g: STANDARD_G,
    })
}

/// Two-sided body of total height `h` (only `h = 2` is supported).
pub fn make_thermal(h: f64) -> Result<ProblemSpec> {
    let reference = thermal_reference(h)?;
    let front = Grid::with_segments(0.0, 1.0, THERMAL_FRONT_SEGMENTS)?;
    let rear = Grid::with_segments(0.0, 1.0, THERMAL_REAR_SEGMENTS)?;
    let mut mask = end_mask(front.n_points());
    mask.extend(end_mask(rear.n_points()));
    mask.push(true);
    let reference = ReferenceSolution::Thermal(reference);
    Ok(ProblemSpec {
        kind: ProblemKind::Thermal,
        layout: Layout::Body { front, rear, h },
        mask,
        chord_bound: Vec::new(),
        reference_objective: reference.objective(),
        reference,
        g: STANDARD_G,
    })
}

/// Builds a problem at its default instance (`b = 2`, `r = 1`, `H = 2`, `h = 2`).
pub fn make_default(kind: ProblemKind, n_segments: usize) -> Result<ProblemSpec> {
    match kind {
        ProblemKind::Brachistochrone => make_brachistochrone(n_segments),
        ProblemKind::Ramm => make_ramm(2.0, n_segments),
        ProblemKind::Newton => make_newton(1.0, 2.0, n_segments),
        ProblemKind::Thermal => {
            let total = THERMAL_FRONT_SEGMENTS + THERMAL_REAR_SEGMENTS;
            if n_segments != total {
                return Err(Error::Unsupported(format!(
                    "thermal body uses {total} segments ({THERMAL_FRONT_SEGMENTS} front + {THERMAL_REAR_SEGMENTS} rear), got {n_segments}"
                )));
            }
            make_thermal(2.0)
        }
    }
}

/// Default number of segments per problem.
pub fn default_segments(kind: ProblemKind) -> usize {
    match kind {
        ProblemKind::Thermal => THERMAL_FRONT_SEGMENTS + THERMAL_REAR_SEGMENTS,
        _ => 20,
    }
}

/// Rearranges slopes in decreasing order, keeping both endpoints.
///
/// `∫ p(f')` only sees the distribution of slopes, so this leaves a flux
/// integral unchanged and picks one canonical shape among equivalent ones.
fn sort_slopes_decreasing(f: &PlFunction) -> PlFunction {
    let h = f.grid().step();
    let mut slopes = f.slopes();
    slopes.sort_by(|a, b| b.total_cmp(a));
    let mut y = Vec::with_capacity(slopes.len() + 1);
    y.push(f.first());
    let mut acc = f.first();
    for s in slopes {
        acc += s * h;
        y.push(acc);
    }
    *y.last_mut().expect("at least two nodes") = f.last();
    PlFunction::new(*f.grid(), y).expect("finite slopes give finite nodes")
}

impl ProblemSpec {
    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn reference(&self) -> &ReferenceSolution {
        &self.reference
    }

    pub fn gravity(&self) -> f64 {
        self.g
    }

    /// Total number of segments across all curves.
    pub fn n_segments(&self) -> usize {
        match &self.layout {
            Layout::Curve { grid, .. } => grid.n_segments(),
            Layout::Body { front, rear, .. } => front.n_segments() + rear.n_segments(),
        }
    }

    pub fn decode(&self, v: &[f64]) -> Result<Shape> {
        if v.len() != self.mask.len() {
            return Err(Error::LengthMismatch {
                expected: self.mask.len(),
                got: v.len(),
            });
        }
        match &self.layout {
            Layout::Curve { grid, .. } => Ok(Shape::Curve(PlFunction::new(*grid, v.to_vec())?)),
            Layout::Body { front, rear, h } => {
                let nf = front.n_points();
                let nr = rear.n_points();
                let h_plus = v[nf + nr];
                let side = |grid: &Grid, genes: &[f64], top: f64| {
                    let y = grid.nodes().zip(genes).map(|(t, g)| g + top * t).collect();
                    PlFunction::new(*grid, y)
                };
                Ok(Shape::Body {
                    front: side(front, &v[..nf], h_plus)?,
                    rear: side(rear, &v[nf..nf + nr], h - h_plus)?,
                    h_plus,
                })
            }
        }
    }

    pub fn encode(&self, shape: &Shape) -> Result<Vec<f64>> {
        let v = match shape {
            Shape::Curve(f) => f.y().to_vec(),
            Shape::Body {
                front,
                rear,
                h_plus,
            } => {
                let Layout::Body { h, .. } = self.layout else {
                    return Err(Error::InvalidParameter(
                        "body shape for a curve problem".into(),
                    ));
                };
                let offsets = |f: &PlFunction, top: f64| {
                    f.grid()
                        .nodes()
                        .zip(f.y())
                        .map(|(t, y)| y - top * t)
                        .collect::<Vec<_>>()
                };
                let mut v = offsets(front, *h_plus);
                v.extend(offsets(rear, h - h_plus));
                v.push(*h_plus);
                v
            }
        };
        if v.len() != self.mask.len() {
            return Err(Error::LengthMismatch {
                expected: self.mask.len(),
                got: v.len(),
            });
        }
        Ok(v)
    }

    fn repair_shape(&self, shape: Shape) -> Result<Shape> {
        Ok(match (&self.layout, shape) {
            (Layout::Curve { y_start, y_end, .. }, Shape::Curve(f)) => {
                let f = f.pin_endpoints(*y_start, *y_end);
                Shape::Curve(match self.kind {
                    ProblemKind::Brachistochrone => f,
                    ProblemKind::Ramm => {
                        let lower = vec![0.0; self.chord_bound.len()];
                        f.clamp_box(&lower, &self.chord_bound)?
                            .convex_repair()
                            .clamp_box(&lower, &self.chord_bound)?
                    }
                    ProblemKind::Newton => f
                        .clamp_const(y_start.min(*y_end), y_start.max(*y_end))?
                        .monotone_repair()
                        .pin_endpoints(*y_start, *y_end),
                    ProblemKind::Thermal => unreachable!("thermal uses the body layout"),
                })
            }
            (
                Layout::Body { h, .. },
                Shape::Body {
                    front,
                    rear,
                    h_plus,
                },
            ) => {
                let h_plus = h_plus.clamp(0.0, *h);
                let h_minus = *h - h_plus;
                let side = |f: PlFunction, top: f64| -> Result<PlFunction> {
                    Ok(f.pin_endpoints(0.0, top)
                        .clamp_const(0.0, top)?
                        .monotone_repair())
                };
                Shape::Body {
                    front: side(front, h_plus)?,
                    rear: side(rear, h_minus)?,
                    h_plus,
                }
            }
            _ => unreachable!("decode produces the layout's own shape"),
        })
    }

    fn objective_of(&self, shape: &Shape) -> f64 {
        match shape {
            Shape::Curve(f) => match self.kind {
                ProblemKind::Brachistochrone => {
                    let Layout::Curve { y_start, .. } = self.layout else {
                        unreachable!()
                    };
                    descent_time(f, self.g, y_start)
                }
                ProblemKind::Ramm => ramm_time(f, self.g),
                ProblemKind::Newton => newton_resistance(f),
                ProblemKind::Thermal => unreachable!("thermal uses the body layout"),
            },
            Shape::Body { front, rear, .. } => {
                thermal_resistance(front, rear, &FluxPair::chaotic_medium())
            }
        }
    }

    /// Checks the constraint set the repair pipeline is meant to enforce.
    pub fn is_feasible(&self, v: &[f64]) -> bool {
        let tol = FEASIBILITY_TOL;
        let Ok(shape) = self.decode(v) else {
            return false;
        };
        match (&self.layout, &shape) {
            (Layout::Curve { y_start, y_end, .. }, Shape::Curve(f)) => {
                let pinned = f.first() == *y_start && f.last() == *y_end;
                pinned
                    && match self.kind {
                        ProblemKind::Brachistochrone => true,
                        ProblemKind::Ramm => {
                            is_convex(f, tol)
                                && f.y()
                                    .iter()
                                    .zip(&self.chord_bound)
                                    .all(|(&y, &hi)| y >= 0.0 && y <= hi + tol)
                        }
                        ProblemKind::Newton => {
                            is_nondecreasing(f, 0.0)
                                && f.y().iter().all(|&y| y >= 0.0 && y <= *y_end)
                        }
                        ProblemKind::Thermal => false,
                    }
            }
            (
                Layout::Body { h, .. },
                Shape::Body {
                    front,
                    rear,
                    h_plus,
                },
            ) => {
                // genes are offsets from the chord, so decoded heights carry rounding
                let side_ok = |f: &PlFunction, top: f64| {
                    f.first() == 0.0
                        && f.last() == top
                        && is_nondecreasing(f, tol)
                        && f.y().iter().all(|&y| y >= -tol && y <= top + tol)
                };
                (0.0..=*h).contains(h_plus)
                    && side_ok(front, *h_plus)
                    && side_ok(rear, *h - *h_plus)
            }
            _ => false,
        }
    }

    /// The exact solution sampled at the grid nodes, as a candidate vector.
    pub fn interpolant(&self) -> Result<Vec<f64>> {
        let shape = match (&self.layout, &self.reference) {
            (Layout::Curve { grid, .. }, reference) => {
                let mut f = match reference {
                    ReferenceSolution::Cycloid(c) => PlFunction::sample(c, *grid)?,
                    ReferenceSolution::RammComposite { curve, .. } => {
                        PlFunction::sample(curve, *grid)?
                    }
                    ReferenceSolution::RammCycloid { curve, .. } => {
                        PlFunction::sample(curve, *grid)?
                    }
                    ReferenceSolution::Newton { profile, .. } => {
                        PlFunction::sample(profile, *grid)?
                    }
                    ReferenceSolution::Thermal(_) => unreachable!(),
                };
                // samplers hit the end points only to within root-finding tolerance
                if let Layout::Curve { y_start, y_end, .. } = self.layout {
                    f = f.pin_endpoints(y_start, y_end);
                }
                Shape::Curve(f)
            }
            (Layout::Body { front, rear, .. }, ReferenceSolution::Thermal(t)) => Shape::Body {
                front: PlFunction::sample(&t.front_curve(), *front)?,
                rear: PlFunction::sample(&t.rear_curve(), *rear)?,
                h_plus: t.front_height(),
            },
            _ => unreachable!("thermal layout always carries a thermal reference"),
        };
        self.encode(&shape)
    }

    pub fn interpolant_objective(&self) -> Result<f64> {
        Ok(self.objective(&self.interpolant()?))
    }

    /// Largest node-wise distance between a candidate and the exact solution.
    ///
    /// For the thermal body both curves are compared after sorting their
    /// slopes in decreasing order, since the flux integrals cannot tell
    /// rearranged profiles apart.
    pub fn max_abs_deviation(&self, v: &[f64]) -> Result<f64> {
        match (self.decode(v)?, &self.reference) {
            (Shape::Curve(f), ReferenceSolution::Cycloid(c)) => f.max_abs_deviation(c),
            (Shape::Curve(f), ReferenceSolution::RammComposite { curve, .. }) => {
                f.max_abs_deviation(curve)
            }
            (Shape::Curve(f), ReferenceSolution::RammCycloid { curve, .. }) => {
                f.max_abs_deviation(curve)
            }
            (Shape::Curve(f), ReferenceSolution::Newton { profile, .. }) => {
                f.max_abs_deviation(profile)
            }
            (Shape::Body { front, rear, .. }, ReferenceSolution::Thermal(t)) => {
                let front = sort_slopes_decreasing(&front).max_abs_deviation(&t.front_curve())?;
                let rear = sort_slopes_decreasing(&rear).max_abs_deviation(&t.rear_curve())?;
                Ok(front.max(rear))
            }
            _ => unreachable!("layout and reference always agree"),
        }
    }
}

impl Problem for ProblemSpec {
    fn mask(&self) -> &[bool] {
        &self.mask
    }

    fn chord(&self) -> Vec<f64> {
        let shape = match &self.layout {
            Layout::Curve {
                grid,
                y_start,
                y_end,
            } => Shape::Curve(PlFunction::line(*grid, *y_start, *y_end)),
            Layout::Body { front, rear, h } => {
                let h_plus = 0.5 * h;
                Shape::Body {
                    front: PlFunction::line(*front, 0.0, h_plus),
                    rear: PlFunction::line(*rear, 0.0, h - h_plus),
                    h_plus,
                }
            }
        };
        self.encode(&shape).expect("layout-shaped chord")
    }

    fn repair(&self, mut candidate: Vec<f64>) -> Vec<f64> {
        // the split gene sets the chords the curve genes are measured from
        if let (Layout::Body { h, .. }, Some(h_plus)) = (&self.layout, candidate.last_mut()) {
            *h_plus = h_plus.clamp(0.0, *h);
        }
        match self
            .decode(&candidate)
            .and_then(|s| self.repair_shape(s))
            .and_then(|s| self.encode(&s))
        {
            Ok(v) => v,
            // non-finite coordinates cannot be repaired; the objective rejects them
            Err(_) => candidate,
        }
    }

    fn objective(&self, candidate: &[f64]) -> f64 {
        match self.decode(candidate) {
            Ok(shape) => self.objective_of(&shape),
            Err(_) => f64::INFINITY,
        }
    }

    fn reference_objective(&self) -> f64 {
        self.reference_objective
    }
}
