//! Pattern matching with wildcards in `O~(sqrt(n) * sqrt(k))` charged
//! quantum queries, simulated classically.
//!
//! * [`wildstr`]: symbols, match semantics, shifted matching arrays.
//! * [`oracle`]: exact classical matchers and brute-force lemma verifiers.
//! * [`qsim`]: threshold counting, search and listing with a query ledger.
//! * [`algo`]: the sublinear matcher built on those primitives.
//! * [`harness`]: instance generation, lemma sweeps and scaling benchmarks.

pub mod algo;
pub mod error;
pub mod exec;
pub mod harness;
pub mod oracle;
pub mod qsim;
pub mod wildstr;

pub use error::{Error, Result};
pub use wildstr::{PatternString, Symbol};
