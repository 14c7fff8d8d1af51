//! The (1,λ) evolution strategy.
//!
//! One progenitor spawns λ offspring by adding isotropic Gaussian noise with
//! a fixed σ to every mutable coordinate. Each offspring is repaired into the
//! feasible set and scored; the best offspring becomes the next progenitor
//! even when it is worse than its parent (comma selection). A separate
//! best-ever archive is kept for reporting and never re-enters selection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::GaussianSource;

/// Search space and objective seen by the strategy.
///
/// Candidates are flat coordinate vectors. `repair` must map any vector to a
/// feasible one and be idempotent; `objective` returns `+inf` for candidates
/// it cannot score.
pub trait Problem {
    /// Per-coordinate mutability; fixed coordinates are copied verbatim.
    fn mask(&self) -> &[bool];
    /// Deterministic starting point before noise and repair.
    fn chord(&self) -> Vec<f64>;
    fn repair(&self, candidate: Vec<f64>) -> Vec<f64>;
    fn objective(&self, candidate: &[f64]) -> f64;
    /// Continuous optimum the traced gap is measured against.
    fn reference_objective(&self) -> f64;

    fn dimension(&self) -> usize {
        self.mask().len()
    }
}

impl<P: Problem + ?Sized> Problem for &P {
    fn mask(&self) -> &[bool] {
        (**self).mask()
    }
    fn chord(&self) -> Vec<f64> {
        (**self).chord()
    }
    fn repair(&self, candidate: Vec<f64>) -> Vec<f64> {
        (**self).repair(candidate)
    }
    fn objective(&self, candidate: &[f64]) -> f64 {
        (**self).objective(candidate)
    }
    fn reference_objective(&self) -> f64 {
        (**self).reference_objective()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EsConfig {
    pub lambda: usize,
    pub sigma: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for EsConfig {
    fn default() -> Self {
        Self {
            lambda: 10,
            sigma: 0.01,
            iterations: 100_000,
            seed: 0,
        }
    }
}

impl EsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda == 0 {
            return Err(Error::InvalidParameter("lambda must be at least 1".into()));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive and finite, got {}",
                self.sigma
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParameter(
                "iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// `parent + N(0, sigma^2)` on the mutable coordinates.
///
/// Noise is drawn only for mutable coordinates, in index order.
pub fn mutate(parent: &[f64], source: &mut GaussianSource, sigma: f64, mask: &[bool]) -> Vec<f64> {
    debug_assert_eq!(parent.len(), mask.len());
    parent
        .iter()
        .zip(mask)
        .map(|(&p, &mutable)| {
            if mutable {
                p + sigma * source.standard_normal()
            } else {
                p
            }
        })
        .collect()
}

/// Chord plus one round of noise, repaired.
pub fn initial_candidate<P: Problem>(
    problem: &P,
    source: &mut GaussianSource,
    sigma: f64,
) -> Vec<f64> {
    let noisy = mutate(&problem.chord(), source, sigma, problem.mask());
    problem.repair(noisy)
}

/// Index of the smallest score; NaN counts as `+inf`, ties go to the lowest index.
pub fn argmin(scores: &[f64]) -> usize {
    let key = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if key(s) < key(scores[best]) {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct EsState {
    pub progenitor: Vec<f64>,
    pub progenitor_objective: f64,
    pub best_ever: Vec<f64>,
    pub best_objective: f64,
    pub iteration: usize,
    pub source: GaussianSource,
}

impl EsState {
    pub fn new<P: Problem>(problem: &P, sigma: f64, seed: u64) -> Self {
        let mut source = GaussianSource::new(seed);
        let start = initial_candidate(problem, &mut source, sigma);
        let objective = problem.objective(&start);
        Self {
            best_ever: start.clone(),
            best_objective: objective,
            progenitor: start,
            progenitor_objective: objective,
            iteration: 0,
            source,
        }
    }

    /// One generation. Returns `true` if the archive improved.
    pub fn step<P: Problem>(&mut self, problem: &P, lambda: usize, sigma: f64) -> bool {
        let mask = problem.mask();
        let offspring: Vec<Vec<f64>> = (0..lambda.max(1))
            .map(|_| problem.repair(mutate(&self.progenitor, &mut self.source, sigma, mask)))
            .collect();
        let scores: Vec<f64> = offspring.iter().map(|c| problem.objective(c)).collect();
        let winner = argmin(&scores);
        self.iteration += 1;
        self.progenitor_objective = scores[winner];
        self.progenitor = offspring
            .into_iter()
            .nth(winner)
            .expect("winner is in range");
        if self.progenitor_objective < self.best_objective {
            self.best_objective = self.progenitor_objective;
            self.best_ever.clone_from(&self.progenitor);
            true
        } else {
            false
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub best_objective: f64,
    pub gap: f64,
}

/// Archive value over the run, sampled at every improvement and every
/// `TRACE_EVERY` iterations (plus the first and last).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub reference: f64,
    pub records: Vec<TraceRecord>,
}

pub const TRACE_EVERY: usize = 100;

impl RunTrace {
    /// Archive gap at `iteration`: the last record at or before it.
    pub fn gap_at(&self, iteration: usize) -> Option<f64> {
        self.records
            .iter()
            .take_while(|r| r.iteration <= iteration)
            .last()
            .map(|r| r.gap)
    }

    pub fn final_gap(&self) -> Option<f64> {
        self.records.last().map(|r| r.gap)
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub best: Vec<f64>,
    pub best_objective: f64,
    pub initial_objective: f64,
    pub trace: RunTrace,
}

pub fn run<P: Problem>(problem: &P, config: &EsConfig) -> Result<RunOutcome> {
    config.validate()?;
    if problem.dimension() != problem.chord().len() {
        return Err(Error::LengthMismatch {
            expected: problem.dimension(),
            got: problem.chord().len(),
        });
    }
    let reference = problem.reference_objective();
    let mut state = EsState::new(problem, config.sigma, config.seed);
    let initial_objective = state.best_objective;
    let mut trace = RunTrace {
        reference,
        records: Vec::new(),
    };
    for i in 1..=config.iterations {
        let improved = state.step(problem, config.lambda, config.sigma);
        if improved || i == 1 || i % TRACE_EVERY == 0 || i == config.iterations {
            trace.records.push(TraceRecord {
                iteration: i,
                best_objective: state.best_objective,
                gap: state.best_objective - reference,
            });
        }
    }
    Ok(RunOutcome {
        best: state.best_ever,
        best_objective: state.best_objective,
        initial_objective,
        trace,
    })
}
