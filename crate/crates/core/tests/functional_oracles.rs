mod common;

use common::{any_curve, convex_under_chord, descent_curve, monotone_profile, subdivide};
use plevo::exact::{ramm_conjectured_curve, ramm_reference};
use plevo::functionals::{
    descent_time, flux_integral, newton_resistance, ramm_functional, ramm_time, thermal_resistance,
    FluxPair, STANDARD_G,
};
use plevo::problems::make_thermal;
use plevo::quadrature::adaptive_quadrature;
use plevo::{PlFunction, Problem, Shape};
use proptest::prelude::*;

const G: f64 = STANDARD_G;
const SEGMENT_TOL: f64 = 1e-12;

/// Sums `adaptive_quadrature` over every segment. The integrand receives
/// `(x, y1, x - x1, slope)` so drops from a level can be formed without
/// cancellation next to an endpoint singularity.
fn segmentwise<F: Fn(f64, f64, f64, f64) -> f64>(f: &PlFunction, integrand: F) -> f64 {
    f.segments()
        .map(|(x1, y1, x2, y2)| {
            let m = (y2 - y1) / (x2 - x1);
            adaptive_quadrature(|x| integrand(x, y1, x - x1, m), x1, x2, SEGMENT_TOL).unwrap()
        })
        .sum()
}

fn thermal_body() -> impl Strategy<Value = (PlFunction, PlFunction)> {
    let p = make_thermal(2.0).unwrap();
    let chord = p.chord();
    prop::collection::vec(-1.0..1.0f64, chord.len()).prop_map(move |noise| {
        let v: Vec<f64> = chord.iter().zip(noise).map(|(c, e)| c + e).collect();
        match p.decode(&p.repair(v)).unwrap() {
            Shape::Body { front, rear, .. } => (front, rear),
            Shape::Curve(_) => unreachable!(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn descent_time_matches_quadrature(f in descent_curve()) {
        let closed = descent_time(&f, G, 10.0);
        let quad = segmentwise(&f, |_, y1, dx, m| ((1.0 + m * m) / ((10.0 - y1) - m * dx)).sqrt())
            / (2.0 * G).sqrt();
        prop_assert!((closed - quad).abs() <= 1e-8, "{closed} vs {quad}");
    }

    #[test]
    fn ramm_functional_matches_quadrature(f in convex_under_chord(2.0)) {
        let closed = ramm_functional(&f);
        let quad = segmentwise(&f, |_, y1, dx, m| {
            (1.0 + m * m).sqrt() / ((1.0 - y1) - m * dx).sqrt()
        });
        prop_assert!((closed - quad).abs() <= 1e-8, "{closed} vs {quad}");
    }

    #[test]
    fn newton_resistance_matches_quadrature(f in monotone_profile(1.0, 2.0)) {
        let closed = newton_resistance(&f);
        let quad = segmentwise(&f, |x, _, _, m| x / (1.0 + m * m));
        prop_assert!((closed - quad).abs() <= 1e-8, "{closed} vs {quad}");
    }

    #[test]
    fn thermal_resistance_matches_quadrature((front, rear) in thermal_body()) {
        let flux = FluxPair::chaotic_medium();
        let closed = thermal_resistance(&front, &rear, &flux);
        let quad = segmentwise(&front, |_, _, _, m| (flux.p_plus)(m))
            + segmentwise(&rear, |_, _, _, m| (flux.p_minus)(m));
        prop_assert!((closed - quad).abs() <= 1e-8, "{closed} vs {quad}");
    }

    #[test]
    fn subdivision_invariance(
        d in descent_curve(),
        c in convex_under_chord(2.0),
        m in monotone_profile(1.0, 2.0),
        a in any_curve(),
    ) {
        let same = |x: f64, y: f64| (x - y).abs() <= 1e-9;
        prop_assert!(same(descent_time(&d, G, 10.0), descent_time(&subdivide(&d), G, 10.0)));
        prop_assert!(same(ramm_functional(&c), ramm_functional(&subdivide(&c))));
        prop_assert!(same(ramm_time(&c, G), ramm_time(&subdivide(&c), G)));
        prop_assert!(same(newton_resistance(&m), newton_resistance(&subdivide(&m))));
        let flux = FluxPair::chaotic_medium();
        prop_assert!(same(
            flux_integral(&a, flux.p_plus),
            flux_integral(&subdivide(&a), flux.p_plus)
        ));
        prop_assert!(same(
            flux_integral(&a, flux.p_minus),
            flux_integral(&subdivide(&a), flux.p_minus)
        ));
    }

    #[test]
    fn ramm_time_is_scaled_functional(f in convex_under_chord(2.0)) {
        prop_assert!((ramm_time(&f, G) * (2.0 * G).sqrt() - ramm_functional(&f)).abs() <= 1e-9);
    }

    #[test]
    fn ramm_candidates_between_optimum_and_chord(f in convex_under_chord(2.0)) {
        let bounds = ramm_reference(2.0).unwrap();
        let optimum = ramm_conjectured_curve(2.0, G).unwrap().time * (2.0 * G).sqrt();
        let t = ramm_functional(&f);
        prop_assert!(t <= bounds.t0 + 1e-12);
        prop_assert!(t >= optimum);
    }

    #[test]
    fn descent_is_infinite_iff_curve_rises_above_release(
        inner in prop::collection::vec(-5.0..11.0f64, 1..30)
    ) {
        let n = inner.len() + 1;
        let mut y = vec![10.0];
        y.extend(&inner);
        y.push(0.0);
        let f = PlFunction::new(plevo::Grid::with_segments(0.0, 10.0, n).unwrap(), y).unwrap();
        let rises = inner.iter().any(|&v| v > 10.0);
        prop_assert_eq!(descent_time(&f, G, 10.0).is_infinite(), rises);
    }
}
