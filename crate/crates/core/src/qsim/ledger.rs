use std::collections::BTreeMap;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// Charged quantum queries, split by the primitive that incurred them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Charge {
    pub threshold_count: u64,
    pub grover_find: u64,
    pub list_marked: u64,
}

impl Charge {
    pub const ZERO: Charge = Charge {
        threshold_count: 0,
        grover_find: 0,
        list_marked: 0,
    };

    pub fn threshold(q: u64) -> Self {
        Charge {
            threshold_count: q,
            ..Charge::ZERO
        }
    }

    pub fn grover(q: u64) -> Self {
        Charge {
            grover_find: q,
            ..Charge::ZERO
        }
    }

    pub fn list(q: u64) -> Self {
        Charge {
            list_marked: q,
            ..Charge::ZERO
        }
    }

    pub fn total(&self) -> u64 {
        self.threshold_count + self.grover_find + self.list_marked
    }

    pub fn scaled(self, factor: u64) -> Self {
        Charge {
            threshold_count: self.threshold_count * factor,
            grover_find: self.grover_find * factor,
            list_marked: self.list_marked * factor,
        }
    }

    /// The costlier of two charges, by total.
    pub fn max(self, other: Charge) -> Self {
        if self.total() >= other.total() {
            self
        } else {
            other
        }
    }
}

impl Add for Charge {
    type Output = Charge;

    fn add(self, rhs: Charge) -> Charge {
        Charge {
            threshold_count: self.threshold_count + rhs.threshold_count,
            grover_find: self.grover_find + rhs.grover_find,
            list_marked: self.list_marked + rhs.list_marked,
        }
    }
}

impl AddAssign for Charge {
    fn add_assign(&mut self, rhs: Charge) {
        *self = *self + rhs;
    }
}

/// Cost accounting for one algorithm run.
///
/// Quantum charges are booked only by primitives invoked at the outermost
/// level. While a search evaluates its predicate classically the ledger is
/// nested: inner primitives still count classical work but their quantum
/// cost has already been folded into the enclosing search's charge.
#[derive(Clone, Debug, Default)]
pub struct QueryLedger {
    charged: Charge,
    classical: u64,
    depth: u32,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charged_quantum_queries(&self) -> u64 {
        self.charged.total()
    }

    pub fn classical_symbol_accesses(&self) -> u64 {
        self.classical
    }

    pub fn charges(&self) -> Charge {
        self.charged
    }

    pub fn breakdown(&self) -> BTreeMap<&'static str, u64> {
        BTreeMap::from([
            ("grover_find", self.charged.grover_find),
            ("list_marked", self.charged.list_marked),
            ("threshold_count", self.charged.threshold_count),
        ])
    }

    pub fn is_nested(&self) -> bool {
        self.depth > 0
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        LedgerSnapshot {
            threshold_count: self.charged.threshold_count,
            grover_find: self.charged.grover_find,
            list_marked: self.charged.list_marked,
            charged_quantum_queries: self.charged.total(),
            classical_symbol_accesses: self.classical,
        }
    }

    pub(crate) fn charge(&mut self, c: Charge) {
        if self.depth == 0 {
            self.charged += c;
        }
    }

    pub(crate) fn touch(&mut self, accesses: u64) {
        self.classical += accesses;
    }

    pub(crate) fn nested<R>(&mut self, f: impl FnOnce(&mut Self) -> R) -> R {
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerSnapshot {
    pub threshold_count: u64,
    pub grover_find: u64,
    pub list_marked: u64,
    pub charged_quantum_queries: u64,
    pub classical_symbol_accesses: u64,
}
