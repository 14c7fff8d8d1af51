#![allow(dead_code)]

use plevo::{Grid, PlFunction};
use proptest::prelude::*;

/// Inserts the midpoint of every segment.
pub fn subdivide(f: &PlFunction) -> PlFunction {
    let g = f.grid();
    let fine = Grid::with_segments(g.x_start(), g.x_end(), 2 * g.n_segments()).unwrap();
    let mut y = Vec::with_capacity(fine.n_points());
    for (i, w) in f.y().windows(2).enumerate() {
        y.push(w[0]);
        y.push(f.eval_at(0.5 * (g.node(i) + g.node(i + 1))).unwrap());
    }
    y.push(f.last());
    PlFunction::new(fine, y).unwrap()
}

/// Curves from `(0,10)` to `(10,0)` whose interior stays at least 0.1 below the start.
pub fn descent_curve() -> impl Strategy<Value = PlFunction> {
    (2usize..40).prop_flat_map(|n| {
        prop::collection::vec(-5.0..9.9f64, n - 1).prop_map(move |inner| {
            let mut y = vec![10.0];
            y.extend(inner);
            y.push(0.0);
            PlFunction::new(Grid::with_segments(0.0, 10.0, n).unwrap(), y).unwrap()
        })
    })
}

/// Convex curves from `(0,1)` to `(b,0)` between 0 and the chord.
pub fn convex_under_chord(b: f64) -> impl Strategy<Value = PlFunction> {
    (2usize..40).prop_flat_map(move |n| {
        prop::collection::vec(0.0..1.0f64, n + 1).prop_map(move |u| {
            let grid = Grid::with_segments(0.0, b, n).unwrap();
            let chord = PlFunction::line(grid, 1.0, 0.0);
            let y = chord.y().iter().zip(&u).map(|(c, u)| c * u).collect();
            PlFunction::new(grid, y)
                .unwrap()
                .pin_endpoints(1.0, 0.0)
                .convex_repair()
        })
    })
}

/// Nondecreasing profiles from `(0,0)` to `(r,h)`.
pub fn monotone_profile(r: f64, h: f64) -> impl Strategy<Value = PlFunction> {
    (1usize..40).prop_flat_map(move |n| {
        prop::collection::vec(0.0..1.0f64, n).prop_map(move |steps| {
            let total: f64 = steps.iter().sum();
            let mut y = vec![0.0];
            let mut acc = 0.0;
            for s in &steps {
                acc += if total > 0.0 {
                    s / total
                } else {
                    1.0 / n as f64
                };
                y.push(h * acc.min(1.0));
            }
            let grid = Grid::with_segments(0.0, r, n).unwrap();
            PlFunction::new(grid, y).unwrap().pin_endpoints(0.0, h)
        })
    })
}

/// Any finite heights on a random grid.
pub fn any_curve() -> impl Strategy<Value = PlFunction> {
    (1usize..30, -3.0..3.0f64, 0.1..5.0f64).prop_flat_map(|(n, a, w)| {
        prop::collection::vec(-10.0..10.0f64, n + 1).prop_map(move |y| {
            PlFunction::new(Grid::with_segments(a, a + w, n).unwrap(), y).unwrap()
        })
    })
}
