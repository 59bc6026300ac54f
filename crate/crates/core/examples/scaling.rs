//! Runs the two scaling sweeps and prints medians and fitted slopes.
//!
//! `cargo run --release -p qwild-core --example scaling -- [grid-dir]`
//! With a directory argument the grids are also written there as JSON lines
//! for `qwild bench --grid`.

use std::io::Write;
use std::time::Instant;

use qwild::exec::Exec;
use qwild::harness::bench::{run_grid, summarize};
use qwild::harness::{BenchCase, CaseBias, GenSpec, Plant};
use qwild::qsim::{ceil_sqrt, SimConfig};

fn case(n: usize, k: usize, seed: u64) -> BenchCase {
    BenchCase {
        spec: GenSpec {
            plant: Plant::MatchAt(n / 8),
            case_bias: CaseBias::ForceCase2,
            ..GenSpec::new(n, 3 * n / 4, 4, k, seed)
        },
        cfg: SimConfig {
            seed,
            ..SimConfig::default()
        },
    }
}

fn n_sweep() -> Vec<BenchCase> {
    (12..=18)
        .flat_map(|e| {
            let n = 1usize << e;
            (0..10).map(move |s| case(n, ceil_sqrt(n as u64) as usize, s))
        })
        .collect()
}

fn k_sweep() -> Vec<BenchCase> {
    (6..=11)
        .flat_map(|e| (0..10).map(move |s| case(1 << 16, 1 << e, s)))
        .collect()
}

fn main() -> anyhow_free::Result {
    let dir = std::env::args().nth(1);
    for (name, grid) in [("n", n_sweep()), ("k", k_sweep())] {
        if let Some(dir) = &dir {
            let mut f = std::fs::File::create(format!("{dir}/scaling_{name}.jsonl"))?;
            for c in &grid {
                writeln!(f, "{}", serde_json::to_string(c)?)?;
            }
        }
        let t = Instant::now();
        let (rows, bad) = run_grid(&grid, Exec::Parallel, false)?;
        let s = summarize(&rows, bad, 0);
        println!("{name}-sweep ({:.1?})", t.elapsed());
        println!("{}", serde_json::to_string_pretty(&s)?);
    }
    Ok(())
}

mod anyhow_free {
    pub type Result = std::result::Result<(), Box<dyn std::error::Error>>;
}
