use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use plevo::problems::{self, default_segments};
use plevo::{EsConfig, ProblemKind, ProblemSpec, RunOutcome};

use crate::svg::render_svg_plot;
use crate::trace::{trace_rows, write_trace_csv};

/// Instance parameters shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Instance {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub b: f64,
    pub radius: f64,
    pub height: f64,
}

impl Default for Instance {
    fn default() -> Self {
        Self {
            from: (0.0, 10.0),
            to: (10.0, 0.0),
            b: 2.0,
            radius: 1.0,
            height: 2.0,
        }
    }
}

impl Instance {
    pub fn build(&self, kind: ProblemKind, segments: Option<usize>) -> plevo::Result<ProblemSpec> {
        let n = segments.unwrap_or_else(|| default_segments(kind));
        match kind {
            ProblemKind::Brachistochrone => {
                problems::make_brachistochrone_between(self.from, self.to, n)
            }
            ProblemKind::Ramm => problems::make_ramm(self.b, n),
            ProblemKind::Newton => problems::make_newton(self.radius, self.height, n),
            ProblemKind::Thermal => {
                if n != default_segments(kind) {
                    return Err(plevo::Error::Unsupported(format!(
                        "thermal body uses {} segments, got {n}",
                        default_segments(kind)
                    )));
                }
                problems::make_thermal(self.height)
            }
        }
    }
}

pub fn default_sigma(kind: ProblemKind) -> f64 {
    match kind {
        ProblemKind::Ramm => 0.001,
        _ => 0.01,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub problem: String,
    pub lambda: usize,
    pub sigma: f64,
    pub iterations: usize,
    pub seed: u64,
    pub segments: usize,
    pub best_objective: f64,
    pub reference_objective: f64,
    pub interpolant_objective: f64,
    pub relative_error: f64,
    pub max_abs_deviation: f64,
    /// Left out of `result.json` so reruns stay byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
    pub best: Vec<f64>,
}

impl RunResult {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} seed={} segments={} lambda={} sigma={} iters={}\n  best        {:.7}\n  reference   {:.7}\n  interpolant {:.7}\n  rel. error  {:.3e}\n  max |dy|    {:.4}",
            self.problem,
            self.seed,
            self.segments,
            self.lambda,
            self.sigma,
            self.iterations,
            self.best_objective,
            self.reference_objective,
            self.interpolant_objective,
            self.relative_error,
            self.max_abs_deviation,
        );
        if let Some(t) = self.wall_time {
            s.push_str(&format!("\n  wall time   {t:.2} s"));
        }
        s
    }
}

/// Runs the strategy on `problem` and scores the outcome.
pub fn execute(problem: &ProblemSpec, config: &EsConfig) -> Result<(RunResult, RunOutcome)> {
    let start = Instant::now();
    let outcome = plevo::run(problem, config)?;
    let wall_time = start.elapsed().as_secs_f64();
    let reference = outcome.trace.reference;
    let result = RunResult {
        problem: problem.name().to_string(),
        lambda: config.lambda,
        sigma: config.sigma,
        iterations: config.iterations,
        seed: config.seed,
        segments: problem.n_segments(),
        best_objective: outcome.best_objective,
        reference_objective: reference,
        interpolant_objective: problem.interpolant_objective()?,
        relative_error: (outcome.best_objective - reference).abs() / reference,
        max_abs_deviation: problem.max_abs_deviation(&outcome.best)?,
        wall_time: Some(wall_time),
        best: outcome.best.clone(),
    };
    Ok((result, outcome))
}

/// Writes `trace.csv`, `result.json` and `trace.svg` into `dir`.
pub fn write_run_outputs(dir: &Path, result: &RunResult, outcome: &RunOutcome) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv = dir.join("trace.csv");
    write_trace_csv(&outcome.trace, outcome.trace.reference, &csv)
        .with_context(|| format!("writing {}", csv.display()))?;
    let stored = RunResult {
        wall_time: None,
        ..result.clone()
    };
    let json = dir.join("result.json");
    fs::write(&json, serde_json::to_string_pretty(&stored)? + "\n")
        .with_context(|| format!("writing {}", json.display()))?;
    let svg = render_svg_plot(&trace_rows(&outcome.trace, outcome.trace.reference))?;
    let svg_path = dir.join("trace.svg");
    fs::write(&svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;
    Ok(())
}
