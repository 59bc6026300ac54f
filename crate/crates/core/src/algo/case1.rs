//! Patterns far from every small period.
//!
//! When each shift `d < min(k, m)` of the pattern has shifted matching sum
//! above `3k`, two starts closer than `k` cannot both have fewer than `k/2`
//! mismatches. Starts are cut into intervals of `k`; within an interval a
//! threshold count flags the (at most one) near-match, which a search then
//! verifies.

use crate::algo::{check_window_lengths, verify_nested};
use crate::error::Result;
use crate::qsim::{Charge, QueryLedger, QuerySim, ThresholdVerdict};
use crate::wildstr::{chars_match, Symbol};

/// Threshold for the per-start mismatch count.
///
/// A `Low` verdict certifies fewer than `2 * beta <= k/2` mismatches, so at
/// most one start per interval can be flagged.
pub fn near_match_threshold(k_eff: usize) -> usize {
    (k_eff / 4).max(1)
}

fn interval_cost(sim: &QuerySim, interval: usize, m: usize, k_eff: usize) -> Charge {
    let flag = sim.threshold_cost(m, near_match_threshold(k_eff));
    sim.search_cost(interval, flag) + sim.search_cost(m, Charge::ZERO)
}

/// Unamplified cost of [`solve_case1`] over `starts` alignments.
pub fn case1_cost(sim: &QuerySim, starts: usize, m: usize, k_eff: usize) -> Charge {
    let intervals = starts.div_ceil(k_eff);
    sim.search_cost(intervals, interval_cost(sim, starts.min(k_eff), m, k_eff))
}

/// Finds a matching start, assuming the pattern has no small approximate period.
pub fn solve_case1(
    text: &[Symbol],
    pattern: &[Symbol],
    k_eff: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> Result<Option<usize>> {
    check_window_lengths(text.len(), pattern.len())?;
    Ok(run_case1(text, pattern, k_eff.max(1), sim, ledger))
}

pub(crate) fn run_case1(
    text: &[Symbol],
    pattern: &[Symbol],
    k_eff: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> Option<usize> {
    let m = pattern.len();
    let starts = text.len() - m + 1;
    let intervals = starts.div_ceil(k_eff);
    let beta = near_match_threshold(k_eff);
    let unit = interval_cost(sim, starts.min(k_eff), m, k_eff);
    let flag_cost = sim.threshold_cost(m, beta);

    let mut witness = None;
    sim.grover_find(
        intervals,
        unit,
        |sim, ledger, j| {
            let lo = j * k_eff;
            let hi = (lo + k_eff).min(starts);
            let flagged = sim.grover_find(
                hi - lo,
                flag_cost,
                |sim, ledger, t| {
                    let start = lo + t;
                    let window = &text[start..start + m];
                    sim.threshold_verdict(m, beta, |x| !chars_match(window[x], pattern[x]), ledger)
                        == ThresholdVerdict::Low
                },
                ledger,
            );
            match flagged {
                Some(t) if verify_nested(text, lo + t, pattern, sim, ledger) => {
                    witness = Some(lo + t);
                    true
                }
                _ => false,
            }
        },
        ledger,
    )?;
    witness
}
