//! Lemma sweeps: exhaustive over small binary-plus-wildcard strings, then
//! seeded random samples at larger sizes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_range, Exec};
use crate::harness::gen::{gen_instance, CaseBias, GenSpec, Plant};
use crate::oracle::{
    lemma1_check, lemma2_check, lemma3_check, matches_at, CounterexampleReport, LemmaId,
};
use crate::wildstr::{shifted_matching_sum, PatternString, Symbol};

/// Largest exhaustive bound accepted.
pub const MAX_EXHAUSTIVE_N: usize = 10;
/// Largest text length drawn in the random phase.
pub const SAMPLE_MAX_N: usize = 64;
/// Counterexamples kept verbatim in a report; the count is always exact.
pub const KEPT_COUNTEREXAMPLES: usize = 32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    /// Checks whose premise held.
    pub premise_satisfied: u64,
    pub counterexamples: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaSuiteReport {
    pub exhaustive_pairs: u64,
    pub sampled_pairs: u64,
    pub lemma1: LemmaTally,
    pub lemma2: LemmaTally,
    pub lemma3: LemmaTally,
    pub counterexamples: Vec<CounterexampleReport>,
}

impl LemmaSuiteReport {
    pub fn total_counterexamples(&self) -> u64 {
        self.lemma1.counterexamples + self.lemma2.counterexamples + self.lemma3.counterexamples
    }

    pub fn passed(&self) -> bool {
        self.total_counterexamples() == 0
    }

    fn tally(&mut self, lemma: LemmaId) -> &mut LemmaTally {
        match lemma {
            LemmaId::NearMatchSeparation => &mut self.lemma1,
            LemmaId::WindowShiftBound => &mut self.lemma2,
            LemmaId::SparseCertificate => &mut self.lemma3,
        }
    }

    fn record(&mut self, lemma: LemmaId, outcome: Option<CounterexampleReport>) {
        let t = self.tally(lemma);
        t.premise_satisfied += 1;
        if let Some(r) = outcome {
            t.counterexamples += 1;
            if self.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                self.counterexamples.push(r);
            }
        }
    }

    fn merge(&mut self, other: LemmaSuiteReport) {
        self.exhaustive_pairs += other.exhaustive_pairs;
        self.sampled_pairs += other.sampled_pairs;
        for (mine, theirs) in [
            (&mut self.lemma1, other.lemma1),
            (&mut self.lemma2, other.lemma2),
            (&mut self.lemma3, other.lemma3),
        ] {
            mine.premise_satisfied += theirs.premise_satisfied;
            mine.counterexamples += theirs.counterexamples;
        }
        let room = KEPT_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples
            .extend(other.counterexamples.into_iter().take(room));
    }
}

/// Which shifts and starts the sparse-certificate check covers.
enum CertificateScope {
    All,
    Sample(usize),
}

fn check_pair(
    text: &PatternString,
    pattern: &PatternString,
    scope: CertificateScope,
    rng: Option<&mut ChaCha8Rng>,
    report: &mut LemmaSuiteReport,
) {
    let (n, m) = (text.len(), pattern.len());
    let w = text.wildcard_count() + pattern.wildcard_count();

    // the separation premise fails for every larger k once it fails for one;
    // past n + m every pair is already within distance k
    for k in w..=n + m {
        match lemma1_check(text, pattern, k) {
            Ok(r) => report.record(LemmaId::NearMatchSeparation, r),
            Err(_) => break,
        }
    }

    // the conclusion weakens as k grows, so the least admissible k suffices
    for d in 1..m {
        let s = shifted_matching_sum(pattern, d).expect("d < m");
        let k = w.max(s.div_ceil(6));
        if let Ok(r) = lemma2_check(text, pattern, d, k) {
            report.record(LemmaId::WindowShiftBound, r);
        }
    }

    if m < 2 {
        return;
    }
    let mut lemma3 = |d: usize, i: usize| {
        let agrees = lemma3_check(text, pattern, d, i).expect("d and i in range");
        let r = (!agrees).then(|| CounterexampleReport {
            lemma: LemmaId::SparseCertificate,
            text: text.clone(),
            pattern: pattern.clone(),
            k: None,
            shift: Some(d),
            indices: vec![i],
            observed: vec![("matches".into(), matches_at(text, pattern, i) as usize)],
        });
        report.record(LemmaId::SparseCertificate, r);
    };
    match (scope, rng) {
        (CertificateScope::Sample(count), Some(rng)) => {
            for _ in 0..count {
                let d = rng.gen_range(1..m);
                let i = rng.gen_range(0..=n - m);
                lemma3(d, i);
            }
        }
        _ => {
            for d in 1..m {
                for i in 0..=n - m {
                    lemma3(d, i);
                }
            }
        }
    }
}

const BINARY_WILD: [Symbol; 3] = [Symbol::lit(0), Symbol::lit(1), Symbol::WILDCARD];

/// The `idx`-th string of length `len` over `{a, b, ?}` in base-3 order.
fn ternary(len: usize, mut idx: usize) -> PatternString {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(BINARY_WILD[idx % 3]);
        idx /= 3;
    }
    PatternString::new(out)
}

fn exhaustive(max_n: usize, exec: Exec) -> LemmaSuiteReport {
    // one job per text; the job sweeps every pattern no longer than it
    let texts: Vec<(usize, usize)> = (1..=max_n)
        .flat_map(|n| (0..3usize.pow(n as u32)).map(move |t| (n, t)))
        .collect();
    let parts = map_range(exec, 0..texts.len(), |j| {
        let (n, t) = texts[j];
        let text = ternary(n, t);
        let mut report = LemmaSuiteReport::default();
        for m in 1..=n {
            for p in 0..3usize.pow(m as u32) {
                let pattern = ternary(m, p);
                check_pair(&text, &pattern, CertificateScope::All, None, &mut report);
                report.exhaustive_pairs += 1;
            }
        }
        report
    });
    let mut total = LemmaSuiteReport::default();
    for p in parts {
        total.merge(p);
    }
    total
}

/// Random instance mixing uniform strings with the
/// generator's forced cases so each lemma's premise is hit regularly.
fn sample_instance(rng: &mut ChaCha8Rng) -> (PatternString, PatternString) {
    let n = rng.gen_range(2..=SAMPLE_MAX_N);
    let m = if rng.gen_bool(0.75) {
        rng.gen_range(n / 2 + 1..=n)
    } else {
        rng.gen_range(1..=n)
    };
    let alphabet = rng.gen_range(2..=8);
    let k = match rng.gen_range(0..3) {
        0 => 0,
        1 => rng.gen_range(0..=4.min(n + m)),
        _ => rng.gen_range(0..=(n + m) / 4),
    };
    let case_bias = match rng.gen_range(0..3) {
        0 => CaseBias::Any,
        1 => CaseBias::ForceCase1,
        _ => CaseBias::ForceCase2,
    };
    let plant = match rng.gen_range(0..3) {
        0 => Plant::None,
        1 => Plant::MatchAt(rng.gen_range(0..=n - m)),
        _ => Plant::NearMiss(rng.gen_range(0..=m.min(3))),
    };
    let spec = GenSpec {
        n,
        m,
        alphabet_size: alphabet,
        k,
        plant,
        case_bias,
        seed: rng.gen(),
    };
    gen_instance(&spec).unwrap_or_else(|_| {
        gen_instance(&GenSpec {
            case_bias: CaseBias::Any,
            ..spec
        })
        .expect("unbiased spec is feasible")
    })
}

fn sampled(samples: usize, seed: u64, exec: Exec) -> LemmaSuiteReport {
    const CHUNK: usize = 256;
    let chunks = samples.div_ceil(CHUNK);
    let parts = map_range(exec, 0..chunks, |c| {
        let mut report = LemmaSuiteReport::default();
        let lo = c * CHUNK;
        for idx in lo..(lo + CHUNK).min(samples) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(idx as u64);
            let (text, pattern) = sample_instance(&mut rng);
            check_pair(
                &text,
                &pattern,
                CertificateScope::Sample(8),
                Some(&mut rng),
                &mut report,
            );
            report.sampled_pairs += 1;
        }
        report
    });
    let mut total = LemmaSuiteReport::default();
    for p in parts {
        total.merge(p);
    }
    total
}

/// Every `{a, b, ?}` pair with `m <= n <= max_n`, then `samples` random pairs
/// with `n <= 64`, through the three lemma checks.
pub fn run_lemma_suite(
    max_n: usize,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<LemmaSuiteReport> {
    if max_n > MAX_EXHAUSTIVE_N {
        return Err(Error::usage(format!(
            "exhaustive bound {max_n} exceeds {MAX_EXHAUSTIVE_N}"
        )));
    }
    let mut report = exhaustive(max_n, exec);
    report.merge(sampled(samples, seed, exec));
    Ok(report)
}
