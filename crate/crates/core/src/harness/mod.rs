//! Instance generation, lemma sweeps and scaling benchmarks.

pub mod bench;
pub mod gen;
pub mod sweep;

pub use bench::{read_grid, run_bench, run_grid, BenchCase, BenchRow, BenchSummary, CSV_HEADER};
pub use gen::{gen_instance, write_instance, CaseBias, GenSpec, Plant};
pub use sweep::{run_lemma_suite, LemmaSuiteReport};

/// Process exit codes shared by the CLI.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// Disagreement with an oracle, or a lemma counterexample.
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const INFEASIBLE: i32 = 3;
}

/// Exit code for a library error.
pub fn exit_code(err: &crate::Error) -> i32 {
    match err {
        crate::Error::Infeasible(_) => exit::INFEASIBLE,
        _ => exit::USAGE,
    }
}
