use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;

use plevo::{EsConfig, ProblemKind, RunOutcome};

use crate::experiment::{default_sigma, execute, Instance, RunResult};

/// One problem's aggregate over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub problem: String,
    pub tag: char,
    pub seeds: usize,
    pub reference_objective: f64,
    pub interpolant_objective: f64,
    pub median_best: f64,
    pub median_relative_error: f64,
    pub median_max_abs_deviation: f64,
    pub median_wall_time: Option<f64>,
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => v[n / 2],
        _ => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}

/// Every (problem, seed) pair at its default settings, run in parallel and
/// returned in `(problem, seed)` order.
pub fn run_all(
    kinds: &[ProblemKind],
    seeds: &[u64],
    iterations: usize,
    instance: &Instance,
) -> Result<Vec<(RunResult, RunOutcome)>> {
    let jobs: Vec<(usize, ProblemKind, u64)> = kinds
        .iter()
        .enumerate()
        .flat_map(|(k, &kind)| seeds.iter().map(move |&s| (k, kind, s)))
        .collect();
    let mut runs: Vec<(usize, u64, (RunResult, RunOutcome))> = jobs
        .into_par_iter()
        .map(|(k, kind, seed)| {
            let problem = instance.build(kind, None)?;
            let config = EsConfig {
                sigma: default_sigma(kind),
                iterations,
                seed,
                ..EsConfig::default()
            };
            Ok((k, seed, execute(&problem, &config)?))
        })
        .collect::<Result<_>>()?;
    runs.sort_by_key(|(k, seed, _)| (*k, *seed));
    Ok(runs.into_iter().map(|(_, _, r)| r).collect())
}

/// Groups results by problem (first-seen order) and takes medians.
pub fn build_table(results: &[RunResult]) -> Vec<TableRow> {
    let mut order: Vec<&str> = Vec::new();
    for r in results {
        if !order.contains(&r.problem.as_str()) {
            order.push(&r.problem);
        }
    }
    order
        .into_iter()
        .map(|name| {
            let group: Vec<&RunResult> = results.iter().filter(|r| r.problem == name).collect();
            let col =
                |f: fn(&RunResult) -> f64| median(&group.iter().map(|r| f(r)).collect::<Vec<_>>());
            let times: Vec<f64> = group.iter().filter_map(|r| r.wall_time).collect();
            TableRow {
                problem: name.to_string(),
                tag: name
                    .parse::<ProblemKind>()
                    .map(ProblemKind::tag)
                    .unwrap_or('?'),
                seeds: group.len(),
                reference_objective: group[0].reference_objective,
                interpolant_objective: group[0].interpolant_objective,
                median_best: col(|r| r.best_objective),
                median_relative_error: col(|r| r.relative_error),
                median_max_abs_deviation: col(|r| r.max_abs_deviation),
                median_wall_time: (!times.is_empty()).then(|| median(&times)),
            }
        })
        .collect()
}

pub fn render_text(rows: &[TableRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<4} {:<16} {:>5} {:>12} {:>12} {:>12} {:>10} {:>10} {:>8}",
        "", "problem", "seeds", "reference", "interpolant", "best", "max|dy|", "r", "time/s"
    );
    for r in rows {
        let time = r
            .median_wall_time
            .map(|t| format!("{t:.2}"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "({}) {:<16} {:>5} {:>12.7} {:>12.7} {:>12.7} {:>10.4} {:>10.2e} {:>8}",
            r.tag,
            r.problem,
            r.seeds,
            r.reference_objective,
            r.interpolant_objective,
            r.median_best,
            r.median_max_abs_deviation,
            r.median_relative_error,
            time
        );
    }
    s
}

pub const TABLE_CSV_HEADER: &str = "problem,tag,seeds,reference_objective,interpolant_objective,median_best_objective,median_max_abs_deviation,median_relative_error";

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut s = format!("{TABLE_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.problem,
            r.tag,
            r.seeds,
            r.reference_objective,
            r.interpolant_objective,
            r.median_best,
            r.median_max_abs_deviation,
            r.median_relative_error
        );
    }
    s
}

pub fn write_table(dir: &Path, rows: &[TableRow]) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("table.txt"), render_text(rows))?;
    fs::write(dir.join("table.csv"), render_csv(rows))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&[]).is_nan());
    }

    fn result(problem: &str, seed: u64, best: f64) -> RunResult {
        RunResult {
            problem: problem.into(),
            lambda: 10,
            sigma: 0.01,
            iterations: 1,
            seed,
            segments: 20,
            best_objective: best,
            reference_objective: 1.0,
            interpolant_objective: 1.1,
            relative_error: best - 1.0,
            max_abs_deviation: 0.1,
            wall_time: None,
            best: vec![],
        }
    }

    #[test]
    fn grouping_keeps_order() {
        let rows = build_table(&[
            result("newton", 1, 1.3),
            result("ramm", 1, 1.2),
            result("newton", 2, 1.1),
        ]);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].problem, "newton");
        assert_eq!(rows[0].tag, 'N');
        assert_eq!(rows[0].seeds, 2);
        assert!((rows[0].median_best - 1.2).abs() < 1e-15);
        assert_eq!(rows[0].median_wall_time, None);
        let csv = render_csv(&rows);
        assert_eq!(csv.lines().count(), 3);
        assert!(render_text(&rows).contains("(R) ramm"));
    }
}
