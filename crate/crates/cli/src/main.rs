use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qwild::algo::match_full;
use qwild::exec::Exec;
use qwild::harness::{
    exit, exit_code, gen_instance, read_grid, run_bench, run_lemma_suite, write_instance, CaseBias,
    GenSpec, Plant,
};
use qwild::oracle::{fft_match_positions, matches_at, naive_match_positions};
use qwild::qsim::{Mode, QueryLedger, SimConfig};
use qwild::{Error, PatternString};

#[derive(Parser)]
#[command(
    name = "qwild",
    version,
    about = "Wildcard matching with charged quantum queries, simulated"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sublinear matcher and report a witness.
    Match(MatchArgs),
    /// List every match position with an exact classical matcher.
    Oracle(OracleArgs),
    /// Write a generated text and pattern to <prefix>.text and <prefix>.pattern.
    Gen(GenArgs),
    /// Sweep the structural lemmas for counterexamples.
    Lemmas(LemmaArgs),
    /// Run a JSON-lines grid and write the results as CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Inputs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long)]
    pattern: PathBuf,
}

impl Inputs {
    fn load(&self) -> Result<(PatternString, PatternString), Error> {
        Ok((
            PatternString::read_file(&self.text)?,
            PatternString::read_file(&self.pattern)?,
        ))
    }
}

#[derive(Args)]
struct MatchArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, default_value = "ideal", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the full outcome as JSON.
    #[arg(long)]
    json: bool,
    /// Compare the answer with the naive oracle; exit 1 on disagreement.
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Naive,
    Fft,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, value_enum, default_value = "naive")]
    engine: Engine,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Any,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Exact number of wildcards across both strings.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 4)]
    alphabet: u32,
    /// Plant an exact match at this start.
    #[arg(long, conflicts_with = "near_miss")]
    plant: Option<usize>,
    /// Plant a copy with this many altered positions at a random start.
    #[arg(long)]
    near_miss: Option<usize>,
    #[arg(long = "case", value_enum, default_value = "any")]
    case_bias: CaseArg,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    grid: PathBuf,
    #[arg(long)]
    csv: PathBuf,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse::<Mode>().map_err(|e| e.to_string())
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn run_match(args: MatchArgs) -> Result<i32, Error> {
    let (text, pattern) = args.inputs.load()?;
    let cfg = SimConfig::with_mode(args.mode, args.seed);
    let mut ledger = QueryLedger::new();
    let out = match_full(&text, &pattern, &cfg, &mut ledger)?;
    if args.json {
        println!("{}", out.to_json());
    } else {
        match out.witness {
            Some(w) => println!("match at {w}"),
            None => println!("no match"),
        }
        println!("charged queries: {}", out.ledger.charged_quantum_queries);
    }
    if args.check {
        let truth = naive_match_positions(&text, &pattern)?;
        let sound = out.witness.is_none_or(|w| matches_at(&text, &pattern, w));
        if out.witness.is_some() == truth.is_empty() || !sound {
            eprintln!(
                "disagreement: matcher says {:?}, oracle finds {} matches",
                out.witness,
                truth.len()
            );
            return Ok(exit::MISMATCH);
        }
    }
    Ok(exit::SUCCESS)
}

fn run_oracle(args: OracleArgs) -> Result<i32, Error> {
    let (text, pattern) = args.inputs.load()?;
    let set = match args.engine {
        Engine::Naive => naive_match_positions(&text, &pattern)?,
        Engine::Fft => fft_match_positions(&text, &pattern)?,
    };
    for p in set.positions() {
        println!("{p}");
    }
    Ok(exit::SUCCESS)
}

fn run_gen(args: GenArgs) -> Result<i32, Error> {
    let plant = match (args.plant, args.near_miss) {
        (Some(i), _) => Plant::MatchAt(i),
        (None, Some(c)) => Plant::NearMiss(c),
        (None, None) => Plant::None,
    };
    let spec = GenSpec {
        n: args.n,
        m: args.m,
        alphabet_size: args.alphabet,
        k: args.k,
        plant,
        case_bias: match args.case_bias {
            CaseArg::Any => CaseBias::Any,
            CaseArg::One => CaseBias::ForceCase1,
            CaseArg::Two => CaseBias::ForceCase2,
        },
        seed: args.seed,
    };
    let (text, pattern) = gen_instance(&spec)?;
    let (tp, pp) = write_instance(&args.out_prefix, &text, &pattern)?;
    println!("{}", tp.display());
    println!("{}", pp.display());
    Ok(exit::SUCCESS)
}

fn run_lemmas(args: LemmaArgs) -> Result<i32, Error> {
    let report = run_lemma_suite(args.max_n, args.samples, args.seed, exec(args.sequential))?;
    for c in &report.counterexamples {
        println!("{}", c.to_json_line());
    }
    let mut summary = serde_json::to_value(&report).expect("report serializes");
    summary
        .as_object_mut()
        .expect("report is an object")
        .remove("counterexamples");
    eprintln!("{summary}");
    Ok(if report.passed() {
        exit::SUCCESS
    } else {
        exit::MISMATCH
    })
}

fn run_bench_cmd(args: BenchArgs) -> Result<i32, Error> {
    let grid = read_grid(&args.grid)?;
    let summary = run_bench(&grid, &args.csv, exec(args.sequential))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    );
    Ok(if summary.disagreements.is_empty() {
        exit::SUCCESS
    } else {
        exit::MISMATCH
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Match(a) => run_match(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Gen(a) => run_gen(a),
        Command::Lemmas(a) => run_lemmas(a),
        Command::Bench(a) => run_bench_cmd(a),
    };
    let code = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    });
    ExitCode::from(code as u8)
}
