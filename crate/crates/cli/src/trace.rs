use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use plevo::RunTrace;

pub const CSV_HEADER: &str = "iteration,best_objective,gap,log10_iteration,log10_gap";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub best_objective: f64,
    pub gap: f64,
    pub log10_iteration: f64,
    /// `None` when the gap is not positive.
    pub log10_gap: Option<f64>,
}

/// Gaps are recomputed against `reference`.
pub fn trace_rows(trace: &RunTrace, reference: f64) -> Vec<TraceRow> {
    trace
        .records
        .iter()
        .map(|r| {
            let gap = r.best_objective - reference;
            TraceRow {
                iteration: r.iteration,
                best_objective: r.best_objective,
                gap,
                log10_iteration: (r.iteration as f64).log10(),
                log10_gap: (gap > 0.0).then(|| gap.log10()),
            }
        })
        .collect()
}

pub fn write_trace_csv(trace: &RunTrace, reference: f64, path: &Path) -> io::Result<()> {
    if !reference.is_finite() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "trace reference must be finite",
        ));
    }
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{CSV_HEADER}")?;
    for row in trace_rows(trace, reference) {
        write!(
            out,
            "{},{},{},{},",
            row.iteration, row.best_objective, row.gap, row.log10_iteration
        )?;
        if let Some(l) = row.log10_gap {
            write!(out, "{l}")?;
        }
        writeln!(out)?;
    }
    out.flush()
}

fn bad(line: usize, msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, format!("line {line}: {msg}"))
}

pub fn read_trace_csv(path: &Path) -> io::Result<Vec<TraceRow>> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    if lines.next().transpose()?.as_deref() != Some(CSV_HEADER) {
        return Err(bad(1, "missing header"));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(i + 2, "expected 5 fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 2, "bad number"));
        rows.push(TraceRow {
            iteration: fields[0].parse().map_err(|_| bad(i + 2, "bad iteration"))?,
            best_objective: num(fields[1])?,
            gap: num(fields[2])?,
            log10_iteration: num(fields[3])?,
            log10_gap: if fields[4].is_empty() {
                None
            } else {
                Some(num(fields[4])?)
            },
        });
    }
    Ok(rows)
}
