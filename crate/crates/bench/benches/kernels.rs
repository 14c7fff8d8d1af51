use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plevo::es::EsState;
use plevo::functionals::{descent_time, STANDARD_G};
use plevo::problems::ProblemKind;
use plevo::{GaussianSource, Grid, PlFunction, Problem};
use plevo_bench::{candidates, default_problem};

fn objectives(c: &mut Criterion) {
    let mut group = c.benchmark_group("objective");
    for kind in ProblemKind::ALL {
        let p = default_problem(kind);
        let pool = candidates(&p, 64, 0.05, 3);
        group.bench_with_input(BenchmarkId::from_parameter(kind), &pool, |b, pool| {
            let mut i = 0;
            b.iter(|| {
                i = (i + 1) % pool.len();
                black_box(p.objective(black_box(&pool[i])))
            })
        });
    }
    group.finish();
}

fn repairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("repair");
    for kind in ProblemKind::ALL {
        let p = default_problem(kind);
        let mut source = GaussianSource::new(8);
        let raw = plevo::es::mutate(&p.chord(), &mut source, 0.2, p.mask());
        group.bench_with_input(BenchmarkId::from_parameter(kind), &raw, |b, raw| {
            b.iter(|| black_box(p.repair(black_box(raw.clone()))))
        });
    }
    group.finish();

    let mut source = GaussianSource::new(9);
    for n in [20usize, 200, 2000] {
        let grid = Grid::with_segments(0.0, 1.0, n).unwrap();
        let f = PlFunction::new(grid, source.gaussian_vector(n + 1, 1.0)).unwrap();
        c.bench_with_input(BenchmarkId::new("convex_repair", n), &f, |b, f| {
            b.iter(|| black_box(f.clone().convex_repair()))
        });
    }
}

fn descent(c: &mut Criterion) {
    for n in [20usize, 200, 2000] {
        let p = plevo::problems::make_brachistochrone(n).unwrap();
        let shape = p.decode(&p.interpolant().unwrap()).unwrap();
        let plevo::Shape::Curve(f) = shape else {
            unreachable!()
        };
        c.bench_with_input(BenchmarkId::new("descent_time", n), &f, |b, f| {
            b.iter(|| black_box(descent_time(black_box(f), STANDARD_G, 10.0)))
        });
    }
}

fn es_steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("es_step");
    for kind in ProblemKind::ALL {
        let p = default_problem(kind);
        group.bench_function(BenchmarkId::from_parameter(kind), |b| {
            let mut state = EsState::new(&p, 0.01, 1);
            b.iter(|| black_box(state.step(&p, 10, 0.01)))
        });
    }
    group.finish();
}

criterion_group!(benches, objectives, repairs, descent, es_steps);
criterion_main!(benches);
