//! The sublinear matcher.
//!
//! A run estimates the wildcard budget, decides which structural case the
//! pattern falls in, and solves that case. Texts more than twice the
//! pattern length are cut into overlapping windows of length `2m - 1` and
//! searched over.

mod case1;
mod case2;

pub use case1::{case1_cost, near_match_threshold, solve_case1};
pub use case2::{bounds_cost, case2_bounds, case2_cost_bound, solve_case2, Case2Bounds};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::matches_at;
use crate::qsim::{
    ceil_sqrt, Charge, LedgerSnapshot, QueryLedger, QuerySim, SimConfig, ThresholdVerdict,
};
use crate::wildstr::{chars_match, shift_bit, Symbol};

/// Wildcard budget the algorithm runs with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectiveBudget {
    /// Exact wildcard total; reported for diagnostics, never used by the algorithm.
    pub k_true: usize,
    /// Estimated upper bound on `k_true`.
    pub k_prime: usize,
    /// `max(k_prime, ceil(sqrt(n)))`.
    pub k_eff: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseDecision {
    /// Every shift `d < min(k_eff, m)` has pattern sum above `3 * k_eff`.
    Case1,
    /// Shift `d` has pattern sum below `6 * k_eff`.
    Case2 { d: usize },
}

impl CaseDecision {
    pub fn number(self) -> u8 {
        match self {
            CaseDecision::Case1 => 1,
            CaseDecision::Case2 { .. } => 2,
        }
    }

    pub fn shift(self) -> Option<usize> {
        match self {
            CaseDecision::Case1 => None,
            CaseDecision::Case2 { d } => Some(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTrace {
    pub decision: CaseDecision,
    pub budget: EffectiveBudget,
    /// Usable text stretch from the Case 2 bounds, in global coordinates.
    /// Present for a direct run, or for the window that produced the witness.
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchOutcome {
    pub witness: Option<usize>,
    pub trace: CaseTrace,
    pub ledger: LedgerSnapshot,
}

#[derive(Serialize)]
struct OutcomeJson {
    witness: Option<usize>,
    case: u8,
    d: Option<usize>,
    alpha: Option<usize>,
    beta: Option<usize>,
    k_prime: usize,
    k_eff: usize,
    charges: LedgerSnapshot,
}

impl MatchOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(OutcomeJson {
            witness: self.witness,
            case: self.trace.decision.number(),
            d: self.trace.decision.shift(),
            alpha: self.trace.alpha,
            beta: self.trace.beta,
            k_prime: self.trace.budget.k_prime,
            k_eff: self.trace.budget.k_eff,
            charges: self.ledger,
        })
        .expect("outcome serializes")
    }
}

/// Window precondition `n/2 < m <= n`.
pub(crate) fn check_window_lengths(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n || 2 * m <= n {
        Err(Error::usage(format!("need n/2 < m <= n, got n={n} m={m}")))
    } else {
        Ok(())
    }
}

fn check_nonempty(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        Err(Error::usage(format!("need 1 <= m <= n, got n={n} m={m}")))
    } else {
        Ok(())
    }
}

pub fn estimate_wildcards(
    text: &[Symbol],
    pattern: &[Symbol],
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> EffectiveBudget {
    let n = text.len();
    let k_true = text
        .iter()
        .chain(pattern)
        .filter(|s| s.is_wildcard())
        .count();
    let k_prime = sim.estimate_count_factor2(
        n + pattern.len(),
        |i| {
            if i < n {
                text[i].is_wildcard()
            } else {
                pattern[i - n].is_wildcard()
            }
        },
        ledger,
    );
    EffectiveBudget {
        k_true,
        k_prime,
        k_eff: k_prime.max(ceil_sqrt(n as u64) as usize).max(1),
    }
}

fn detect_unit(sim: &QuerySim, m: usize, k_eff: usize) -> Charge {
    sim.threshold_cost(m - 1, 3 * k_eff)
}

/// Unamplified cost of [`detect_case`].
pub fn detect_cost(sim: &QuerySim, m: usize, k_eff: usize) -> Charge {
    let shifts = k_eff.min(m).saturating_sub(1);
    if shifts == 0 {
        Charge::ZERO
    } else {
        sim.search_cost(shifts, detect_unit(sim, m, k_eff))
    }
}

/// Searches shifts `1 <= d < min(k_eff, m)` for one whose pattern sum
/// counts as at most `3 * k_eff`.
pub fn detect_case(
    pattern: &[Symbol],
    k_eff: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> CaseDecision {
    let m = pattern.len();
    let k_eff = k_eff.max(1);
    let shifts = k_eff.min(m).saturating_sub(1);
    if shifts == 0 {
        return CaseDecision::Case1;
    }
    let beta = 3 * k_eff;
    let unit = detect_unit(sim, m, k_eff);
    let found = sim.grover_find(
        shifts,
        unit,
        |sim, ledger, x| {
            let d = x + 1;
            let len = m - d;
            // a sum over len <= 3k entries is trivially below the threshold
            len <= beta
                || sim.threshold_verdict(len, beta, |i| shift_bit(pattern, d, i), ledger)
                    == ThresholdVerdict::Low
        },
        ledger,
    );
    match found {
        Some(x) => CaseDecision::Case2 { d: x + 1 },
        None => CaseDecision::Case1,
    }
}

/// Searches for a mismatch between the pattern and the window at `start`.
pub fn verify_candidate(
    text: &[Symbol],
    start: usize,
    pattern: &[Symbol],
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> Result<bool> {
    check_nonempty(text.len(), pattern.len())?;
    if start > text.len() - pattern.len() {
        return Err(Error::usage(format!(
            "start {start} outside [0, {}]",
            text.len() - pattern.len()
        )));
    }
    Ok(verify_nested(text, start, pattern, sim, ledger))
}

pub(crate) fn verify_nested(
    text: &[Symbol],
    start: usize,
    pattern: &[Symbol],
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> bool {
    let window = &text[start..start + pattern.len()];
    sim.grover_find(
        pattern.len(),
        Charge::ZERO,
        |_, _, j| !chars_match(window[j], pattern[j]),
        ledger,
    )
    .is_none()
}

/// `(start, len)` of each reduced text window for `m <= n/2`.
///
/// Window `j < ceil(n/m) - 1` is `A[j*m, j*m + 2m - 2]`, clipped to the text;
/// the last is `A[n - 2m + 1, n - 1]`. Every alignment of the pattern lies
/// entirely inside at least one window.
pub fn reduction_windows(n: usize, m: usize) -> Vec<(usize, usize)> {
    assert!(m >= 1 && 2 * m <= n, "reduction needs 1 <= m <= n/2");
    let count = n.div_ceil(m);
    let mut out: Vec<(usize, usize)> = (0..count - 1)
        .map(|j| {
            let start = j * m;
            (start, (2 * m - 1).min(n - start))
        })
        .collect();
    out.push((n - (2 * m - 1), 2 * m - 1));
    out
}

fn solve_known_case(
    text: &[Symbol],
    pattern: &[Symbol],
    decision: CaseDecision,
    k_eff: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> (Option<usize>, Option<(usize, usize)>) {
    match decision {
        CaseDecision::Case1 => (case1::run_case1(text, pattern, k_eff, sim, ledger), None),
        CaseDecision::Case2 { d } => {
            let (w, b) = case2::run_case2(text, pattern, k_eff, d, sim, ledger);
            (w, Some((b.alpha, b.beta)))
        }
    }
}

fn solve_cost_bound(
    sim: &QuerySim,
    n: usize,
    m: usize,
    decision: CaseDecision,
    k_eff: usize,
) -> Charge {
    match decision {
        CaseDecision::Case1 => case1_cost(sim, n - m + 1, m, k_eff),
        CaseDecision::Case2 { d } => case2_cost_bound(sim, n, m, d, k_eff),
    }
}

/// Worst-case unamplified cost of a window run after budget estimation.
pub fn window_cost_bound(sim: &QuerySim, n: usize, m: usize, k_eff: usize) -> Charge {
    let shifts = k_eff.min(m).saturating_sub(1);
    let solve = (1..=shifts)
        .map(|d| case2_cost_bound(sim, n, m, d, k_eff))
        .fold(case1_cost(sim, n - m + 1, m, k_eff), Charge::max);
    detect_cost(sim, m, k_eff) + solve
}

fn finish(
    text: &[Symbol],
    pattern: &[Symbol],
    witness: Option<usize>,
    trace: CaseTrace,
    ledger: &mut QueryLedger,
) -> MatchOutcome {
    // only injected failures can produce a bad witness; drop it
    let witness = witness.filter(|&i| {
        ledger.touch(pattern.len() as u64);
        matches_at(text, pattern, i)
    });
    MatchOutcome {
        witness,
        trace,
        ledger: ledger.snapshot(),
    }
}

/// Full run on an instance with `n/2 < m <= n`.
pub fn match_window(
    text: &[Symbol],
    pattern: &[Symbol],
    cfg: &SimConfig,
    ledger: &mut QueryLedger,
) -> Result<MatchOutcome> {
    check_window_lengths(text.len(), pattern.len())?;
    let mut sim = QuerySim::new(cfg.clone(), text.len())?;
    Ok(window_with(text, pattern, &mut sim, ledger))
}

fn window_with(
    text: &[Symbol],
    pattern: &[Symbol],
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> MatchOutcome {
    let budget = estimate_wildcards(text, pattern, sim, ledger);
    let decision = detect_case(pattern, budget.k_eff, sim, ledger);
    let (witness, bounds) = solve_known_case(text, pattern, decision, budget.k_eff, sim, ledger);
    let trace = CaseTrace {
        decision,
        budget,
        alpha: bounds.map(|b| b.0),
        beta: bounds.map(|b| b.1),
    };
    finish(text, pattern, witness, trace, ledger)
}

/// A witness in text coordinates and the window's Case 2 bounds, if any.
type WindowHit = (usize, Option<(usize, usize)>);

/// Full run for any `1 <= m <= n`.
///
/// Long texts are reduced to windows of length at most `2m - 1`; the budget
/// and case decision depend only on the whole input and the pattern, so they
/// are computed once and a search runs over the windows.
pub fn match_full(
    text: &[Symbol],
    pattern: &[Symbol],
    cfg: &SimConfig,
    ledger: &mut QueryLedger,
) -> Result<MatchOutcome> {
    let (n, m) = (text.len(), pattern.len());
    check_nonempty(n, m)?;
    let mut sim = QuerySim::new(cfg.clone(), n)?;
    if 2 * m > n {
        return Ok(window_with(text, pattern, &mut sim, ledger));
    }

    let budget = estimate_wildcards(text, pattern, &mut sim, ledger);
    let k_eff = budget.k_eff;
    let decision = detect_case(pattern, k_eff, &mut sim, ledger);
    let windows = reduction_windows(n, m);
    let unit = solve_cost_bound(&sim, 2 * m - 1, m, decision, k_eff);

    let mut hits: Vec<Option<WindowHit>> = vec![None; windows.len()];
    let found = sim.grover_find(
        windows.len(),
        unit,
        |sim, ledger, w| {
            let (start, len) = windows[w];
            let sub = &text[start..start + len];
            match solve_known_case(sub, pattern, decision, k_eff, sim, ledger) {
                (Some(local), bounds) => {
                    hits[w] = Some((start + local, bounds.map(|(a, b)| (start + a, start + b))));
                    true
                }
                (None, _) => false,
            }
        },
        ledger,
    );
    let (witness, bounds) = match found.and_then(|w| hits[w]) {
        Some((w, b)) => (Some(w), b),
        None => (None, None),
    };
    let trace = CaseTrace {
        decision,
        budget,
        alpha: bounds.map(|b| b.0),
        beta: bounds.map(|b| b.1),
    };
    Ok(finish(text, pattern, witness, trace, ledger))
}
