//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qwild::algo::{match_full, reduction_windows};
use qwild::exec::Exec;
use qwild::harness::bench::{run_bench, BenchCase};
use qwild::harness::{gen_instance, run_lemma_suite, CaseBias, GenSpec, Plant};
use qwild::oracle::{fft_match_positions, matches_at, naive_match_positions};
use qwild::qsim::{Charge, GapPolicy, Mode, QueryLedger, QuerySim, SimConfig};
use qwild::wildstr::shifted_matching_sum;
use qwild::{PatternString, Symbol};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- 1

fn random_spec(r: &mut ChaCha8Rng) -> GenSpec {
    let n = (2f64.powf(r.gen_range(2.0..=12.0)) as usize).clamp(4, 1 << 12);
    let m = if r.gen_bool(0.5) {
        r.gen_range(n / 2 + 1..=n)
    } else {
        r.gen_range(1..=n / 2)
    };
    let k = match r.gen_range(0..4) {
        0 => 0,
        1 => r.gen_range(1..=4),
        2 => (n as f64).sqrt().ceil() as usize,
        _ => r.gen_range(0..=(n + m) / 8),
    };
    let case_bias = [CaseBias::Any, CaseBias::ForceCase1, CaseBias::ForceCase2][r.gen_range(0..3)];
    let mut alphabet = [1, 2, 3, 4, 8, 26, 200][r.gen_range(0..7)];
    if case_bias == CaseBias::ForceCase1 {
        alphabet = alphabet.max(k.min(m) as u32 + 1);
    }
    let plant = match r.gen_range(0..3) {
        0 => Plant::None,
        1 => Plant::MatchAt(r.gen_range(0..=n - m)),
        _ => Plant::NearMiss(r.gen_range(1..=m.min(3))),
    };
    GenSpec {
        n,
        m,
        alphabet_size: alphabet,
        k,
        plant,
        case_bias,
        seed: r.gen(),
    }
}

fn oracle_equivalence() -> Verdict {
    const INSTANCES: usize = 2500;
    let mut r = rng(0x5eed_0001);
    let (mut runs, mut wrong, mut bad_witness) = (0usize, 0usize, 0usize);
    let mut bias = [0usize; 3];
    let mut plants = [0usize; 3];
    let (mut window, mut reduced, mut with_match) = (0usize, 0usize, 0usize);
    for _ in 0..INSTANCES {
        let mut spec = random_spec(&mut r);
        let (a, b) = match gen_instance(&spec) {
            Ok(x) => x,
            Err(_) => {
                spec.case_bias = CaseBias::Any;
                gen_instance(&spec).expect("unbiased spec")
            }
        };
        bias[spec.case_bias as usize] += 1;
        plants[match spec.plant {
            Plant::None => 0,
            Plant::MatchAt(_) => 1,
            Plant::NearMiss(_) => 2,
        }] += 1;
        if 2 * spec.m > spec.n {
            window += 1;
        } else {
            reduced += 1;
        }
        let truth = naive_match_positions(&a, &b).unwrap();
        with_match += !truth.is_empty() as usize;
        for mode in Mode::ALL {
            let cfg = SimConfig::with_mode(mode, r.gen());
            let mut l = QueryLedger::new();
            let out = match_full(&a, &b, &cfg, &mut l).unwrap();
            runs += 1;
            if out.witness.is_some() == truth.is_empty() {
                wrong += 1;
            }
            if let Some(w) = out.witness {
                if !truth.contains(w) {
                    bad_witness += 1;
                }
            }
        }
    }
    let covered = bias.iter().chain(&plants).all(|&c| c > 0) && window > 0 && reduced > 0;
    verdict(
        runs >= 10_000 && wrong == 0 && bad_witness == 0 && covered,
        format!(
            "{runs} runs over {INSTANCES} instances x 4 modes; {wrong} wrong answers, {bad_witness} bad witnesses; \
             bias any/case1/case2 = {bias:?}, plant none/match/near = {plants:?}, m>n/2: {window}, m<=n/2: {reduced}, \
             instances with a match: {with_match}"
        ),
    )
}

// ---------------------------------------------------------------- 2

fn lemma_suite() -> Verdict {
    let r = run_lemma_suite(6, 100_000, 0x5eed_0002, Exec::Parallel).unwrap();
    let nonzero = [r.lemma1, r.lemma2, r.lemma3]
        .iter()
        .all(|t| t.premise_satisfied > 0);
    if let Some(c) = r.counterexamples.first() {
        println!("    first counterexample: {}", c.to_json_line());
    }
    verdict(
        r.passed() && nonzero,
        format!(
            "{} exhaustive + {} sampled pairs; premise-satisfying checks separation={} shift-bound={} certificate={}; counterexamples {}",
            r.exhaustive_pairs,
            r.sampled_pairs,
            r.lemma1.premise_satisfied,
            r.lemma2.premise_satisfied,
            r.lemma3.premise_satisfied,
            r.total_counterexamples()
        ),
    )
}

// ---------------------------------------------------------------- 3

fn ternary(len: usize, mut idx: usize) -> PatternString {
    const SYMS: [Option<u32>; 3] = [Some(0), Some(1), None];
    PatternString::from_codes((0..len).map(|_| {
        let s = SYMS[idx % 3];
        idx /= 3;
        s
    }))
    .unwrap()
}

fn fft_exactness() -> Verdict {
    let mut exhaustive = 0u64;
    let mut diff = 0u64;
    let patterns: Vec<Vec<PatternString>> = (0..=8)
        .map(|m| (0..3usize.pow(m as u32)).map(|p| ternary(m, p)).collect())
        .collect();
    for n in 1..=8 {
        for t in 0..3usize.pow(n as u32) {
            let a = ternary(n, t);
            for pats in &patterns[1..=n] {
                for b in pats {
                    exhaustive += 1;
                    if fft_match_positions(&a, b).unwrap() != naive_match_positions(&a, b).unwrap()
                    {
                        diff += 1;
                    }
                }
            }
        }
    }
    let mut r = rng(0x5eed_0003);
    let mut random = 0;
    for _ in 0..1000 {
        let n = (2f64.powf(r.gen_range(0.0..=14.0)) as usize).clamp(1, 1 << 14);
        let m = if r.gen_bool(0.5) {
            r.gen_range(1..=n.min(32))
        } else {
            r.gen_range(1..=n)
        };
        let alphabet = [2u32, 3, 4, 16, 256, 1 << 16][r.gen_range(0..6)];
        let wild = r.gen_range(0.0..0.3);
        let mut draw = |len: usize| {
            PatternString::from_codes(
                (0..len).map(|_| (!r.gen_bool(wild)).then(|| r.gen_range(0..alphabet))),
            )
            .unwrap()
        };
        let a = draw(n);
        let mut b = draw(m);
        // copy a text window into half the patterns so matches occur
        if r.gen_bool(0.5) {
            let at = r.gen_range(0..=n - m);
            b = PatternString::new(
                a[at..at + m]
                    .iter()
                    .zip(b.iter())
                    .map(|(&x, &y)| if y.is_wildcard() { y } else { x })
                    .collect(),
            );
        }
        random += 1;
        if fft_match_positions(&a, &b).unwrap() != naive_match_positions(&a, &b).unwrap() {
            diff += 1;
        }
    }
    verdict(
        diff == 0,
        format!("{exhaustive} exhaustive pairs (n <= 8) + {random} random (n <= 2^14); {diff} differences"),
    )
}

// ---------------------------------------------------------------- 4

fn scaling_case(n: usize, k: usize, seed: u64) -> BenchCase {
    BenchCase {
        spec: GenSpec {
            plant: Plant::MatchAt(n / 8),
            case_bias: CaseBias::ForceCase2,
            ..GenSpec::new(n, 3 * n / 4, 4, k, seed)
        },
        cfg: SimConfig {
            seed,
            whp: true,
            ..SimConfig::default()
        },
    }
}

fn scaling() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let n_grid: Vec<BenchCase> = (12..=18)
        .flat_map(|e| {
            let n = 1usize << e;
            let k = (n as f64).sqrt().ceil() as usize;
            (0..10).map(move |s| scaling_case(n, k, s))
        })
        .collect();
    let k_grid: Vec<BenchCase> = (6..=11)
        .flat_map(|e| (0..10).map(move |s| scaling_case(1 << 16, 1 << e, s)))
        .collect();
    let ns = run_bench(&n_grid, &dir.path().join("n.csv"), Exec::Parallel).unwrap();
    let ks = run_bench(&k_grid, &dir.path().join("k.csv"), Exec::Parallel).unwrap();
    let n_slope = ns.slope_vs_n.as_ref().map_or(f64::NAN, |f| f.slope);
    let k_slope = ks.slope_vs_k.as_ref().map_or(f64::NAN, |f| f.slope);
    let k_eff_slope = ks.slope_vs_k_eff.as_ref().map_or(f64::NAN, |f| f.slope);
    let n_ok = (n_slope - 0.75).abs() <= 0.12;
    let k_ok = (k_slope - 0.50).abs() <= 0.12;
    let agree = ns.disagreements.is_empty() && ks.disagreements.is_empty();
    verdict(
        n_ok && k_ok && agree,
        format!(
            "slope vs n = {n_slope:.3} (0.75 +- 0.12), slope vs k = {k_slope:.3} (0.50 +- 0.12), \
             vs median k_eff = {k_eff_slope:.3}; oracle rechecks {} with {} disagreements",
            ns.rechecked + ks.rechecked,
            ns.disagreements.len() + ks.disagreements.len()
        ),
    )
}

// ---------------------------------------------------------------- 5

/// Instance whose pattern has a shift with sum strictly inside `(3K, 6K)`,
/// `K = ceil(sqrt(n))`, with few enough wildcards that `k_eff = K` in every mode.
fn gap_instance(r: &mut ChaCha8Rng) -> (PatternString, PatternString, usize, usize) {
    let n = r.gen_range(256..=2048);
    let big_k = (n as f64).sqrt().ceil() as usize;
    let min_m = 7 * big_k + 2;
    let m = if r.gen_bool(0.5) && min_m <= n / 2 {
        r.gen_range(min_m..=n / 2)
    } else {
        r.gen_range((n / 2 + 1).max(min_m)..=n)
    };
    let alphabet = r.gen_range(2..=6u32);
    let d = r.gen_range(1..big_k.min(m));
    let base: Vec<Symbol> = (0..d)
        .map(|_| Symbol::new(r.gen_range(0..alphabet)).unwrap())
        .collect();
    // at most K/4 wildcards in total, so even an adversarial estimate stays below K
    let wild = r.gen_range(0..=big_k / 4);
    let wild_b = r.gen_range(0..=wild / 2);

    let mut b: Vec<Symbol> = (0..m).map(|i| base[i % d]).collect();
    for _ in 0..wild_b {
        let p = r.gen_range(0..m);
        b[p] = Symbol::WILDCARD;
    }
    // perturb until the sum enters the open gap
    while shifted_matching_sum(&b, d).unwrap() <= 3 * big_k {
        let p = r.gen_range(0..m);
        if !b[p].is_wildcard() {
            b[p] = Symbol::new((b[p].code().unwrap() + 1) % alphabet).unwrap();
        }
    }
    let sum = shifted_matching_sum(&b, d).unwrap();
    assert!(sum < 6 * big_k, "sum {sum} overshot");

    let phase = r.gen_range(0..d);
    let mut a: Vec<Symbol> = (0..n).map(|i| base[(i + phase) % d]).collect();
    for _ in 0..r.gen_range(0..=4 * big_k) {
        let p = r.gen_range(0..n);
        a[p] = Symbol::new(r.gen_range(0..alphabet)).unwrap();
    }
    match r.gen_range(0..3) {
        0 => {}
        1 => {
            let at = r.gen_range(0..=n - m);
            a[at..at + m].copy_from_slice(&b);
        }
        _ => {
            let at = r.gen_range(0..=n - m);
            a[at..at + m].copy_from_slice(&b);
            let p = at + r.gen_range(0..m);
            if let Some(c) = a[p].code() {
                a[p] = Symbol::new((c + 1) % alphabet).unwrap();
            }
        }
    }
    let count = |v: &[Symbol]| v.iter().filter(|s| s.is_wildcard()).count();
    while count(&a) + count(&b) < wild {
        let p = r.gen_range(0..n);
        a[p] = Symbol::WILDCARD;
    }
    (PatternString::new(a), PatternString::new(b), d, big_k)
}

fn promise_gap() -> Verdict {
    let mut r = rng(0x5eed_0005);
    let policies = [
        GapPolicy::AlwaysLow,
        GapPolicy::AlwaysHigh,
        GapPolicy::Random,
    ];
    let (mut wrong, mut off_gap, mut split, mut with_match) = (0, 0, 0, 0);
    for _ in 0..1000 {
        let (a, b, d, big_k) = gap_instance(&mut r);
        let truth = naive_match_positions(&a, &b).unwrap();
        with_match += !truth.is_empty() as usize;
        let mut cases = Vec::new();
        for policy in policies {
            let cfg = SimConfig::with_mode(Mode::Gap(policy), r.gen());
            let mut l = QueryLedger::new();
            let out = match_full(&a, &b, &cfg, &mut l).unwrap();
            let k_eff = out.trace.budget.k_eff;
            let s = shifted_matching_sum(&b, d).unwrap();
            if k_eff != big_k || s <= 3 * k_eff || s >= 6 * k_eff {
                off_gap += 1;
            }
            if out.witness.is_some() == truth.is_empty()
                || out.witness.is_some_and(|w| !matches_at(&a, &b, w))
            {
                wrong += 1;
            }
            cases.push(out.trace.decision);
        }
        if cases.iter().any(|c| *c != cases[0]) {
            split += 1;
        }
    }
    verdict(
        wrong == 0 && off_gap == 0,
        format!(
            "1000 gap instances x 3 policies; {wrong} wrong answers; {off_gap} runs outside the gap; \
             {split} instances where policies chose different branches; {with_match} with a match"
        ),
    )
}

// ---------------------------------------------------------------- 6

fn isqrt_ceil(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while r * r < x {
        r += 1;
    }
    r
}

fn log2_ceil(x: u64) -> u64 {
    let mut e = 0;
    while (1u64 << e) < x {
        e += 1;
    }
    e
}

fn cost_formulas() -> Verdict {
    let mut r = rng(0x5eed_0006);
    let mut bad = 0;
    let mut counts = [0usize; 3];
    for _ in 0..10_000 {
        let (cg, cl, cc) = (
            r.gen_range(1..8u64),
            r.gen_range(1..8u64),
            r.gen_range(1..8u64),
        );
        let whp = r.gen_bool(0.5);
        let n = r.gen_range(1..1usize << 20);
        let mult = if whp { log2_ceil(n as u64).max(1) } else { 1 };
        let cfg = SimConfig {
            c_grover: cg,
            c_list: cl,
            c_count: cc,
            whp,
            ..SimConfig::with_mode(Mode::ALL[r.gen_range(0..4)], r.gen())
        };
        let mut sim = QuerySim::new(cfg, n).unwrap();
        let mut l = QueryLedger::new();
        // prior activity so the delta, not the total, is compared
        sim.grover_find(3, Charge::ZERO, |_, _, i| i == 1, &mut l);
        let before = l.charges();
        let size = r.gen_range(1..20_000usize);
        let density = r.gen_range(1..50usize);
        let (expect, got) = match r.gen_range(0..3) {
            0 => {
                counts[0] += 1;
                let beta = r.gen_range(1..=size);
                sim.threshold_count(size, beta, |i| i % density == 0, &mut l)
                    .unwrap();
                let q = cc * isqrt_ceil((size as u64).div_ceil(beta as u64)) * mult;
                (Charge::threshold(q), l.charges())
            }
            1 => {
                counts[1] += 1;
                let unit = Charge::list(r.gen_range(0..100));
                let target = r.gen_range(0..size * 2);
                sim.grover_find(size, unit, |_, _, i| i == target, &mut l);
                let g = cg * isqrt_ceil(size as u64) * mult;
                (Charge::grover(g) + unit.scaled(g), l.charges())
            }
            _ => {
                counts[2] += 1;
                let cap = r.gen_range(1..500usize);
                sim.list_marked(size, cap, |i| i % density == 0, &mut l);
                let q = cl * isqrt_ceil(size as u64 * (cap as u64 + 1)) * mult;
                (Charge::list(q), l.charges())
            }
        };
        if before + expect != got {
            bad += 1;
        }
    }
    verdict(
        bad == 0,
        format!(
            "10000 tuples (threshold {}, grover {}, list {}); {bad} mismatched deltas",
            counts[0], counts[1], counts[2]
        ),
    )
}

// ---------------------------------------------------------------- 7

fn reduction_coverage() -> Verdict {
    let (mut pairs, mut uncovered, mut badsize) = (0u64, 0u64, 0u64);
    for n in 1..=512usize {
        for m in 1..=n {
            pairs += 1;
            let windows = if 2 * m > n {
                vec![(0, n)]
            } else {
                reduction_windows(n, m)
            };
            for &(s, len) in &windows {
                if !(len < 2 * m && m <= len && s + len <= n) {
                    badsize += 1;
                }
            }
            // furthest end among windows starting at or before each index
            let mut reach = vec![0usize; n];
            for &(s, len) in &windows {
                reach[s] = reach[s].max(s + len);
            }
            for i in 1..n {
                reach[i] = reach[i].max(reach[i - 1]);
            }
            uncovered += (0..=n - m).filter(|&i| reach[i] < i + m).count() as u64;
        }
    }
    verdict(
        uncovered == 0 && badsize == 0,
        format!("{pairs} (n, m) pairs; {uncovered} uncovered alignments; {badsize} windows violating |A_i|/2 < m <= |A_i|"),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", oracle_equivalence),
        ("lemma suite", lemma_suite),
        ("fft oracle exactness", fft_exactness),
        ("query-complexity scaling", scaling),
        ("promise-gap robustness", promise_gap),
        ("cost-formula exactness", cost_formulas),
        ("reduction coverage", reduction_coverage),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if filter.as_ref().is_some_and(|f| !name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let v = run();
        println!(
            "criterion {} {}: {} ({:.1?}) {}",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            t.elapsed(),
            v.detail
        );
        failed += !v.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
