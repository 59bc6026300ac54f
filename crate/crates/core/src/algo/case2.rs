//! Patterns close to a small period `d`.
//!
//! A matching window of the text has few ones in `S(A, d)`, so only a
//! bounded stretch `[alpha, beta]` of the text can host a match and the ones
//! inside it can be listed. A candidate start is then certified by checking
//! its first `d` characters plus the listed ones of `S(A, d)` and `S(B, d)`.

use serde::{Deserialize, Serialize};

use crate::algo::check_window_lengths;
use crate::error::{Error, Result};
use crate::qsim::{Charge, QueryLedger, QuerySim};
use crate::wildstr::{chars_match, shift_bit, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Bounds {
    /// First text index a match can use.
    pub alpha: usize,
    /// Last text index a match can use.
    pub beta: usize,
    /// Every one of `S(A, d)` in `[alpha, beta - d]`, ascending.
    pub a_ones: Vec<usize>,
    /// Every one of `S(B, d)`, ascending.
    pub b_ones: Vec<usize>,
}

impl Case2Bounds {
    /// Candidate starts `[alpha, beta - m + 1]`; empty when the stretch is shorter than `m`.
    pub fn candidates(&self, m: usize) -> std::ops::Range<usize> {
        if self.beta + 1 >= self.alpha + m {
            self.alpha..self.beta + 2 - m
        } else {
            self.alpha..self.alpha
        }
    }
}

/// Listing caps: ones of `S(A,d)` from `m - 1` upward, from `m - 1` downward,
/// and ones of `S(B,d)`.
///
/// The downward cap carries `d` extra slots: for a start `i < d` up to `d - i`
/// of the ones just below `m - 1` fall outside that window's part of `S(A,d)`.
fn listing_caps(d: usize, k_eff: usize) -> (usize, usize, usize) {
    (8 * k_eff + 1, 8 * k_eff + d + 1, 6 * k_eff)
}

/// Unamplified cost of computing [`Case2Bounds`] for text length `n`.
pub fn bounds_cost(sim: &QuerySim, n: usize, m: usize, d: usize, k_eff: usize) -> Charge {
    let (up_cap, down_cap, b_cap) = listing_caps(d, k_eff);
    let up_len = n.saturating_sub(d + m - 1);
    let down_len = m.min(n - d);
    let mut c = sim.list_cost(m - d, b_cap);
    if up_len > 0 {
        c += sim.list_cost(up_len, up_cap);
    }
    c + sim.list_cost(down_len, down_cap)
}

/// Worst-case unamplified cost of [`solve_case2`] on a text of length `n`.
pub fn case2_cost_bound(sim: &QuerySim, n: usize, m: usize, d: usize, k_eff: usize) -> Charge {
    let (up_cap, down_cap, b_cap) = listing_caps(d, k_eff);
    let checks = d + up_cap + down_cap + b_cap;
    bounds_cost(sim, n, m, d, k_eff)
        + sim.search_cost(n - m + 1, sim.search_cost(checks, Charge::ZERO))
}

fn check_case2(n: usize, m: usize, d: usize) -> Result<()> {
    check_window_lengths(n, m)?;
    if d == 0 || d >= m {
        return Err(Error::usage(format!("shift {d} outside [1, {m})")));
    }
    Ok(())
}

pub fn case2_bounds(
    text: &[Symbol],
    pattern: &[Symbol],
    d: usize,
    k_eff: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> Result<Case2Bounds> {
    check_case2(text.len(), pattern.len(), d)?;
    Ok(run_bounds(text, pattern, d, k_eff.max(1), sim, ledger))
}

pub(crate) fn run_bounds(
    text: &[Symbol],
    pattern: &[Symbol],
    d: usize,
    k_eff: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> Case2Bounds {
    let (n, m) = (text.len(), pattern.len());
    let (up_cap, down_cap, b_cap) = listing_caps(d, k_eff);
    // S(A,d) has indices 0..n-d; m-1 may lie past its end when d > n-m
    let pivot = m - 1;
    let a_len = n - d;

    let up: Vec<usize> = if pivot < a_len {
        sim.list_marked(
            a_len - pivot,
            up_cap,
            |x| shift_bit(text, d, pivot + x),
            ledger,
        )
        .into_iter()
        .map(|x| pivot + x)
        .collect()
    } else {
        Vec::new()
    };
    let top = pivot.min(a_len - 1);
    let down: Vec<usize> = sim
        .list_marked(top + 1, down_cap, |x| shift_bit(text, d, top - x), ledger)
        .into_iter()
        .map(|x| top - x)
        .collect();
    let b_ones = sim.list_marked(m - d, b_cap, |x| shift_bit(pattern, d, x), ledger);

    let beta = if up.len() < up_cap {
        n - 1
    } else {
        up[up_cap - 1] - 1 + d
    };
    let alpha = if down.len() < down_cap {
        0
    } else {
        down[down_cap - 1] + 1
    };
    let mut a_ones: Vec<usize> = down
        .into_iter()
        .chain(up)
        .filter(|&p| p >= alpha && p + d <= beta)
        .collect();
    a_ones.sort_unstable();
    a_ones.dedup();
    Case2Bounds {
        alpha,
        beta,
        a_ones,
        b_ones,
    }
}

/// Finds a matching start given a shift `d` whose pattern sum is below `6 * k_eff`.
pub fn solve_case2(
    text: &[Symbol],
    pattern: &[Symbol],
    k_eff: usize,
    d: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> Result<(Option<usize>, Case2Bounds)> {
    check_case2(text.len(), pattern.len(), d)?;
    Ok(run_case2(text, pattern, k_eff.max(1), d, sim, ledger))
}

pub(crate) fn run_case2(
    text: &[Symbol],
    pattern: &[Symbol],
    k_eff: usize,
    d: usize,
    sim: &mut QuerySim,
    ledger: &mut QueryLedger,
) -> (Option<usize>, Case2Bounds) {
    let m = pattern.len();
    let bounds = run_bounds(text, pattern, d, k_eff, sim, ledger);
    let candidates = bounds.candidates(m);
    let (a_ones, b_ones) = (&bounds.a_ones, &bounds.b_ones);
    let checks = d + a_ones.len() + b_ones.len();
    let unit = sim.search_cost(checks, Charge::ZERO);

    // check j fails for start i
    let violated = |i: usize, j: usize| -> bool {
        let pair_fails = |off: usize| {
            !chars_match(text[i + off], pattern[off])
                || !chars_match(text[i + off + d], pattern[off + d])
        };
        if j < d {
            !chars_match(text[i + j], pattern[j])
        } else if j < d + a_ones.len() {
            let p = a_ones[j - d];
            p >= i && p < i + m - d && pair_fails(p - i)
        } else {
            pair_fails(b_ones[j - d - a_ones.len()])
        }
    };

    let found = sim.grover_find(
        candidates.len(),
        unit,
        |sim, ledger, c| {
            let i = candidates.start + c;
            sim.grover_find(checks, Charge::ZERO, |_, _, j| violated(i, j), ledger)
                .is_none()
        },
        ledger,
    );
    (found.map(|c| candidates.start + c), bounds)
}
