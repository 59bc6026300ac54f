//! Classical stand-ins for the quantum subroutines the matcher consumes.
//!
//! Every primitive computes its true answer classically and books the
//! theoretical query cost in a [`QueryLedger`]. No amplitudes are simulated.
//!
//! Charges (with `mult` the high-probability multiplier):
//!
//! | primitive        | charge                                         |
//! |------------------|------------------------------------------------|
//! | `threshold_count`| `c_count * ceil(sqrt(alpha / beta)) * mult`    |
//! | `grover_find`    | `c_grover * ceil(sqrt(N)) * mult * (1 + unit)` |
//! | `list_marked`    | `c_list * ceil(sqrt(N * (t + 1))) * mult`      |
//!
//! where `unit` is the charge of one predicate evaluation. Primitives
//! called from inside a predicate are not booked separately; the enclosing
//! search already paid for them through `unit`, and they are not amplified
//! individually.

mod config;
mod ledger;

pub use config::{GapPolicy, Mode, SimConfig, TieBreak};
pub use ledger::{Charge, LedgerSnapshot, QueryLedger};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdVerdict {
    Low,
    High,
}

/// Smallest `r` with `r * r >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// `ceil(log2 x)`, with `ceil_log2(1) == 0`.
pub fn ceil_log2(x: u64) -> u64 {
    assert!(x > 0);
    (64 - (x - 1).leading_zeros()) as u64
}

/// Per-run simulator state: configuration, RNG and the amplification multiplier.
#[derive(Clone, Debug)]
pub struct QuerySim {
    cfg: SimConfig,
    rng: ChaCha8Rng,
    multiplier: u64,
}

impl QuerySim {
    /// `n` is the input size the high-probability multiplier is derived from.
    pub fn new(cfg: SimConfig, n: usize) -> Result<Self> {
        cfg.validate()?;
        let multiplier = if cfg.whp {
            ceil_log2(n.max(1) as u64).max(1)
        } else {
            1
        };
        Ok(QuerySim {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
            multiplier,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    /// Unamplified charge of one threshold count.
    pub fn threshold_cost(&self, alpha: usize, beta: usize) -> Charge {
        let ratio = (alpha as u64).div_ceil(beta.max(1) as u64);
        Charge::threshold(self.cfg.c_count * ceil_sqrt(ratio))
    }

    /// Unamplified charge of a search over `n` items whose predicate costs `unit`.
    pub fn search_cost(&self, n: usize, unit: Charge) -> Charge {
        let g = self.cfg.c_grover * ceil_sqrt(n as u64);
        Charge::grover(g) + unit.scaled(g)
    }

    /// Unamplified charge of listing up to `cap` marked items among `n`.
    pub fn list_cost(&self, n: usize, cap: usize) -> Charge {
        Charge::list(self.cfg.c_list * ceil_sqrt(n as u64 * (cap as u64 + 1)))
    }

    /// Books `cost` at the outermost level, amplified.
    pub fn book(&self, cost: Charge, ledger: &mut QueryLedger) {
        ledger.charge(cost.scaled(self.multiplier));
    }

    fn inject_failure(&mut self) -> bool {
        self.cfg.failure_prob > 0.0 && self.rng.gen_bool(self.cfg.failure_prob)
    }

    /// Decides whether the sum of `entries[0..alpha]` is at most `beta` or
    /// at least `2 * beta`. Sums strictly between resolve per the mode.
    pub fn threshold_count(
        &mut self,
        alpha: usize,
        beta: usize,
        entries: impl Fn(usize) -> bool,
        ledger: &mut QueryLedger,
    ) -> Result<ThresholdVerdict> {
        if alpha == 0 || beta == 0 || beta > alpha {
            return Err(Error::usage(format!(
                "threshold_count needs 1 <= beta <= alpha, got alpha={alpha} beta={beta}"
            )));
        }
        self.book(self.threshold_cost(alpha, beta), ledger);
        Ok(self.threshold_verdict(alpha, beta, entries, ledger))
    }

    /// Verdict only; books no quantum charge. Any `beta >= 1` is accepted.
    pub(crate) fn threshold_verdict(
        &mut self,
        alpha: usize,
        beta: usize,
        entries: impl Fn(usize) -> bool,
        ledger: &mut QueryLedger,
    ) -> ThresholdVerdict {
        let stop = 2 * beta;
        let mut ones = 0;
        let mut read = 0;
        while read < alpha && ones < stop {
            if entries(read) {
                ones += 1;
            }
            read += 1;
        }
        ledger.touch(read as u64);
        let verdict = self.resolve(ones, beta);
        if self.inject_failure() {
            match verdict {
                ThresholdVerdict::Low => ThresholdVerdict::High,
                ThresholdVerdict::High => ThresholdVerdict::Low,
            }
        } else {
            verdict
        }
    }

    /// `sum` is exact when below `2 * beta`.
    fn resolve(&mut self, sum: usize, beta: usize) -> ThresholdVerdict {
        use ThresholdVerdict::*;
        if sum <= beta {
            return Low;
        }
        if sum >= 2 * beta {
            return High;
        }
        match self.cfg.mode {
            Mode::Ideal => {
                if sum <= 3 * beta / 2 {
                    Low
                } else {
                    High
                }
            }
            Mode::Gap(GapPolicy::AlwaysLow) => Low,
            Mode::Gap(GapPolicy::AlwaysHigh) => High,
            Mode::Gap(GapPolicy::Random) => {
                if self.rng.gen_bool(0.5) {
                    Low
                } else {
                    High
                }
            }
        }
    }

    /// Largest sum still compatible with a `Low` verdict at `beta`.
    fn low_ceiling(&self, beta: usize) -> usize {
        match self.cfg.mode {
            Mode::Ideal => 3 * beta / 2,
            Mode::Gap(_) => 2 * beta - 1,
        }
    }

    /// Finds an index in `0..n` satisfying `pred`.
    ///
    /// `unit` is the charge of one predicate evaluation; the predicate runs
    /// against a nested ledger so its own primitives are not double-booked.
    pub fn grover_find<P>(
        &mut self,
        n: usize,
        unit: Charge,
        pred: P,
        ledger: &mut QueryLedger,
    ) -> Option<usize>
    where
        P: FnMut(&mut QuerySim, &mut QueryLedger, usize) -> bool,
    {
        if n == 0 {
            return None;
        }
        self.book(self.search_cost(n, unit), ledger);
        let found = ledger.nested(|l| self.search(n, pred, l));
        if found.is_some() && self.inject_failure() {
            None
        } else {
            found
        }
    }

    fn search<P>(&mut self, n: usize, mut pred: P, ledger: &mut QueryLedger) -> Option<usize>
    where
        P: FnMut(&mut QuerySim, &mut QueryLedger, usize) -> bool,
    {
        match self.cfg.tie_break {
            TieBreak::Smallest => (0..n).find(|&i| {
                ledger.touch(1);
                pred(self, ledger, i)
            }),
            TieBreak::Uniform => {
                let hits: Vec<usize> = (0..n)
                    .filter(|&i| {
                        ledger.touch(1);
                        pred(self, ledger, i)
                    })
                    .collect();
                if hits.is_empty() {
                    None
                } else {
                    Some(hits[self.rng.gen_range(0..hits.len())])
                }
            }
        }
    }

    /// The `cap` smallest indices in `0..n` whose entry is set, ascending.
    pub fn list_marked(
        &mut self,
        n: usize,
        cap: usize,
        entries: impl Fn(usize) -> bool,
        ledger: &mut QueryLedger,
    ) -> Vec<usize> {
        if n == 0 || cap == 0 {
            return Vec::new();
        }
        self.book(self.list_cost(n, cap), ledger);
        let mut out = Vec::new();
        let mut read = 0;
        while read < n && out.len() < cap {
            if entries(read) {
                out.push(read);
            }
            read += 1;
        }
        ledger.touch(read as u64);
        out
    }

    /// An upper bound on the number of set entries, tight within a factor of
    /// two in ideal mode and four under any gap policy; exactly 0 for an
    /// all-zero array.
    ///
    /// Runs threshold counts at `beta = 2^floor(log2 alpha), ..., 2, 1`,
    /// keeping the tightest ceiling implied by each `Low`, and returns it at
    /// the first `High`. If every verdict is `Low` the sum is at most one and
    /// a single search settles it.
    pub fn estimate_count_factor2(
        &mut self,
        alpha: usize,
        entries: impl Fn(usize) -> bool,
        ledger: &mut QueryLedger,
    ) -> usize {
        if alpha == 0 {
            return 0;
        }
        let mut ceiling = alpha;
        let mut beta = 1usize << (usize::BITS - 1 - alpha.leading_zeros());
        loop {
            self.book(self.threshold_cost(alpha, beta), ledger);
            match self.threshold_verdict(alpha, beta, &entries, ledger) {
                ThresholdVerdict::High => return ceiling,
                ThresholdVerdict::Low => ceiling = ceiling.min(self.low_ceiling(beta)),
            }
            if beta == 1 {
                break;
            }
            beta /= 2;
        }
        match self.grover_find(alpha, Charge::ZERO, |_, _, i| entries(i), ledger) {
            Some(_) => 1,
            None => 0,
        }
    }
}
