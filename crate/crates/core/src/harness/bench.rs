//! Benchmark grid runner, CSV writer and log-log slope summary.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algo::match_full;
use crate::error::{Error, Result};
use crate::exec::{map_slice, Exec};
use crate::harness::gen::{gen_instance, GenSpec};
use crate::oracle::{fft_match_positions, matches_at, naive_first_match};
use crate::qsim::{ceil_sqrt, QueryLedger, SimConfig};
use crate::wildstr::Symbol;

pub const CSV_HEADER: [&str; 13] = [
    "n",
    "m",
    "k_true",
    "k_prime",
    "k_eff",
    "case",
    "d",
    "charged_queries",
    "classical_accesses",
    "matched",
    "witness",
    "seed",
    "mode",
];

/// Instances up to this length are rechecked against an exact oracle.
pub const RECHECK_MAX_N: usize = 1 << 16;
/// Above this length the recheck uses the convolution oracle.
const NAIVE_RECHECK_MAX_N: usize = 1 << 12;

/// One grid point: an instance recipe and the simulator settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchCase {
    pub spec: GenSpec,
    #[serde(default)]
    pub cfg: SimConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k_true: usize,
    pub k_prime: usize,
    pub k_eff: usize,
    pub case: u8,
    pub d: Option<usize>,
    pub charged_queries: u64,
    pub classical_accesses: u64,
    pub matched: bool,
    pub witness: Option<usize>,
    pub seed: u64,
    pub mode: String,
}

/// A row whose answer disagreed with the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub row: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(x, median charged queries)` per distinct x, ascending.
    pub points: Vec<(usize, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub rows: usize,
    pub rechecked: usize,
    pub disagreements: Vec<Disagreement>,
    /// Charged queries vs `n` over rows with `k_true = ceil(sqrt(n))`.
    pub slope_vs_n: Option<SlopeFit>,
    /// Charged queries vs `k_true` at the `n` with the most distinct `k_true`.
    pub slope_vs_k: Option<SlopeFit>,
    /// As `slope_vs_k`, against each point's median `k_eff`.
    pub slope_vs_k_eff: Option<SlopeFit>,
}

/// Parses a JSON-lines grid; blank lines are skipped.
pub fn read_grid(path: &Path) -> Result<Vec<BenchCase>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut grid = Vec::new();
    for (no, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let case = serde_json::from_str(&line).map_err(|e| Error::Json {
            context: format!("{}:{}", path.display(), no + 1),
            source: e,
        })?;
        grid.push(case);
    }
    Ok(grid)
}

fn oracle_first(text: &[Symbol], pattern: &[Symbol]) -> Result<Option<usize>> {
    if text.len() <= NAIVE_RECHECK_MAX_N {
        naive_first_match(text, pattern)
    } else {
        Ok(fft_match_positions(text, pattern)?
            .positions()
            .first()
            .copied())
    }
}

fn run_case(case: &BenchCase, recheck: bool) -> Result<(BenchRow, Option<String>)> {
    let (text, pattern) = gen_instance(&case.spec)?;
    let mut ledger = QueryLedger::new();
    let out = match_full(&text, &pattern, &case.cfg, &mut ledger)?;
    let row = BenchRow {
        n: text.len(),
        m: pattern.len(),
        k_true: out.trace.budget.k_true,
        k_prime: out.trace.budget.k_prime,
        k_eff: out.trace.budget.k_eff,
        case: out.trace.decision.number(),
        d: out.trace.decision.shift(),
        charged_queries: out.ledger.charged_quantum_queries,
        classical_accesses: out.ledger.classical_symbol_accesses,
        matched: out.witness.is_some(),
        witness: out.witness,
        seed: case.spec.seed,
        mode: case.cfg.mode.to_string(),
    };
    let mut problem = None;
    if recheck && text.len() <= RECHECK_MAX_N {
        let truth = oracle_first(&text, &pattern)?;
        if truth.is_some() != row.matched {
            problem = Some(format!(
                "matched={} but oracle says {:?}",
                row.matched, truth
            ));
        } else if let Some(w) = row.witness {
            if !matches_at(&text, &pattern, w) {
                problem = Some(format!("witness {w} is not a match"));
            }
        }
    }
    Ok((row, problem))
}

/// Runs every grid case, in parallel when `exec` allows.
///
/// Rows come back in grid order. With `recheck`, runs with `n <= 2^16` are
/// compared against an exact oracle.
pub fn run_grid(
    grid: &[BenchCase],
    exec: Exec,
    recheck: bool,
) -> Result<(Vec<BenchRow>, Vec<Disagreement>)> {
    let results = map_slice(exec, grid, |c| run_case(c, recheck));
    let mut rows = Vec::with_capacity(grid.len());
    let mut disagreements = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let (row, problem) = r?;
        if let Some(reason) = problem {
            disagreements.push(Disagreement { row: i, reason });
        }
        rows.push(row);
    }
    Ok((rows, disagreements))
}

/// CSV with the fixed header, one line per row. The header is written even
/// for an empty slice.
pub fn write_csv<W: Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn median(values: &mut [u64]) -> f64 {
    values.sort_unstable();
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid] as f64
    } else {
        (values[mid - 1] as f64 + values[mid] as f64) / 2.0
    }
}

/// Least-squares fit of `log2 y` on `log2 x`; `None` with fewer than two distinct x.
pub fn fit_log_log(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.log2(), y.log2())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if logs.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

fn fit_groups<'a>(
    groups: impl IntoIterator<Item = (usize, Vec<&'a BenchRow>)>,
    x_of: impl Fn(usize, &[&BenchRow]) -> f64,
) -> Option<SlopeFit> {
    let mut points = Vec::new();
    let mut xy = Vec::new();
    for (key, rows) in groups {
        let mut charges: Vec<u64> = rows.iter().map(|r| r.charged_queries).collect();
        let y = median(&mut charges);
        let x = x_of(key, &rows);
        points.push((key, y));
        xy.push((x, y));
    }
    fit_log_log(&xy).map(|(slope, intercept)| SlopeFit {
        slope,
        intercept,
        points,
    })
}

fn median_k_eff(rows: &[&BenchRow]) -> f64 {
    let mut v: Vec<u64> = rows.iter().map(|r| r.k_eff as u64).collect();
    median(&mut v)
}

pub fn summarize(
    rows: &[BenchRow],
    disagreements: Vec<Disagreement>,
    rechecked: usize,
) -> BenchSummary {
    let mut by_n: BTreeMap<usize, Vec<&BenchRow>> = BTreeMap::new();
    for r in rows
        .iter()
        .filter(|r| r.k_true as u64 == ceil_sqrt(r.n as u64))
    {
        by_n.entry(r.n).or_default().push(r);
    }
    let slope_vs_n = fit_groups(by_n, |n, _| n as f64);

    let mut by_n_k: BTreeMap<usize, BTreeMap<usize, Vec<&BenchRow>>> = BTreeMap::new();
    for r in rows {
        by_n_k
            .entry(r.n)
            .or_default()
            .entry(r.k_true)
            .or_default()
            .push(r);
    }
    // ties go to the larger n
    let k_groups = by_n_k
        .into_values()
        .rev()
        .max_by_key(|g| g.len())
        .filter(|g| g.len() >= 2);
    let (slope_vs_k, slope_vs_k_eff) = match k_groups {
        Some(g) => (
            fit_groups(g.clone(), |k, _| k as f64),
            fit_groups(g, |_, rows| median_k_eff(rows)),
        ),
        None => (None, None),
    };

    BenchSummary {
        rows: rows.len(),
        rechecked,
        disagreements,
        slope_vs_n,
        slope_vs_k,
        slope_vs_k_eff,
    }
}

/// Runs the grid, writes the CSV to `csv_path` and returns the summary.
pub fn run_bench(grid: &[BenchCase], csv_path: &Path, exec: Exec) -> Result<BenchSummary> {
    let (rows, disagreements) = run_grid(grid, exec, true)?;
    let file = std::fs::File::create(csv_path).map_err(|e| Error::io(csv_path, e))?;
    write_csv(std::io::BufWriter::new(file), &rows).map_err(|e| match e {
        Error::Csv(c) => Error::io(csv_path, std::io::Error::other(c)),
        other => other,
    })?;
    let rechecked = rows.iter().filter(|r| r.n <= RECHECK_MAX_N).count();
    Ok(summarize(&rows, disagreements, rechecked))
}
