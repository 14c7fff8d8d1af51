//! Fixtures shared by the benchmarks.

use plevo::problems::{self, default_segments, ProblemKind};
use plevo::{GaussianSource, Problem, ProblemSpec};

pub fn default_problem(kind: ProblemKind) -> ProblemSpec {
    problems::make_default(kind, default_segments(kind)).expect("default instance")
}

/// Repaired chord-plus-noise candidates, reproducible per seed.
pub fn candidates(problem: &ProblemSpec, count: usize, sigma: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut source = GaussianSource::new(seed);
    (0..count)
        .map(|_| {
            let noisy = plevo::es::mutate(&problem.chord(), &mut source, sigma, problem.mask());
            problem.repair(noisy)
        })
        .collect()
}
