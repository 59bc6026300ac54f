//! Seeded instance generator.

use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wildstr::{
    shifted_matching_sum, PatternString, Symbol, ALPHABET_LIMIT, SENTINEL_BYTE, WILDCARD_BYTE,
};

/// Redraws allowed before a forced case is declared infeasible.
pub const MAX_RETRIES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Plant {
    None,
    /// Exact copy of the pattern at this start.
    MatchAt(usize),
    /// Copy of the pattern at a random start with this many positions altered.
    NearMiss(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseBias {
    Any,
    /// Every shift `1 <= d < min(k, m)` of the pattern has sum at least `3k`.
    ForceCase1,
    /// Some shift `1 <= d < min(k, m)` of the pattern has sum at most `6k`.
    ForceCase2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub alphabet_size: u32,
    /// Exact number of wildcards across text and pattern.
    pub k: usize,
    pub plant: Plant,
    pub case_bias: CaseBias,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, alphabet_size: u32, k: usize, seed: u64) -> Self {
        GenSpec {
            n,
            m,
            alphabet_size,
            k,
            plant: Plant::None,
            case_bias: CaseBias::Any,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let GenSpec { n, m, k, .. } = *self;
        if m == 0 || m > n {
            return Err(Error::usage(format!("need 1 <= m <= n, got n={n} m={m}")));
        }
        if k > n + m {
            return Err(Error::usage(format!("k={k} exceeds n + m = {}", n + m)));
        }
        if self.alphabet_size == 0 || self.alphabet_size > ALPHABET_LIMIT {
            return Err(Error::usage(format!(
                "alphabet size {} outside [1, {ALPHABET_LIMIT}]",
                self.alphabet_size
            )));
        }
        match self.plant {
            Plant::MatchAt(i) if i > n - m => Err(Error::usage(format!(
                "planted index {i} exceeds n - m = {}",
                n - m
            ))),
            Plant::NearMiss(c) if c > m => {
                Err(Error::usage(format!("near-miss count {c} exceeds m = {m}")))
            }
            _ => Ok(()),
        }
    }
}

/// Width of the window within which a forced Case-1 pattern is all distinct.
fn case1_width(spec: &GenSpec) -> usize {
    spec.k.min(spec.m)
}

/// Whether every shift `1 <= d < min(k, m)` of `pattern` has sum at least `3k`.
pub fn satisfies_case1(pattern: &[Symbol], k: usize) -> bool {
    (1..k.min(pattern.len())).all(|d| shifted_matching_sum(pattern, d).expect("d < m") >= 3 * k)
}

/// Smallest shift `1 <= d < min(k, m)` with sum at most `6k`.
pub fn case2_shift(pattern: &[Symbol], k: usize) -> Option<usize> {
    (1..k.min(pattern.len())).find(|&d| shifted_matching_sum(pattern, d).expect("d < m") <= 6 * k)
}

fn draw_symbol(rng: &mut ChaCha8Rng, alphabet: u32) -> Symbol {
    Symbol::lit(rng.gen_range(0..alphabet))
}

/// A symbol other than `avoid`; `alphabet >= 2`.
fn draw_other(rng: &mut ChaCha8Rng, alphabet: u32, avoid: Symbol) -> Symbol {
    let c = rng.gen_range(0..alphabet - 1);
    let s = Symbol::lit(c);
    if s >= avoid {
        Symbol::lit(c + 1)
    } else {
        s
    }
}

fn uniform(rng: &mut ChaCha8Rng, len: usize, alphabet: u32) -> Vec<Symbol> {
    (0..len).map(|_| draw_symbol(rng, alphabet)).collect()
}

/// Each symbol differs from the `width - 1` before it.
fn locally_distinct(rng: &mut ChaCha8Rng, len: usize, alphabet: u32, width: usize) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Vec::with_capacity(len);
    for i in 0..len {
        let recent = &out[i.saturating_sub(width.saturating_sub(1))..i];
        loop {
            let s = draw_symbol(rng, alphabet);
            if !recent.contains(&s) {
                out.push(s);
                break;
            }
        }
    }
    out
}

/// `len` symbols of period `d` starting at `phase`, with `noise` random positions redrawn.
fn periodic(
    rng: &mut ChaCha8Rng,
    base: &[Symbol],
    phase: usize,
    len: usize,
    noise: usize,
    alphabet: u32,
) -> Vec<Symbol> {
    let d = base.len();
    let mut out: Vec<Symbol> = (0..len).map(|i| base[(i + phase) % d]).collect();
    if alphabet >= 2 {
        for _ in 0..noise.min(len) {
            let p = rng.gen_range(0..len);
            out[p] = draw_other(rng, alphabet, out[p]);
        }
    }
    out
}

/// Text and pattern for `spec`; deterministic in the seed.
///
/// Wildcards go to exactly `k` positions drawn uniformly from the `n + m`
/// positions of both strings, after any planting. A planted exact match
/// survives since wildcards match anything.
pub fn gen_instance(spec: &GenSpec) -> Result<(PatternString, PatternString)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let tries = match spec.case_bias {
        CaseBias::Any => 1,
        _ => MAX_RETRIES,
    };
    for _ in 0..tries {
        let (a, b) = draw(spec, &mut rng)?;
        let ok = match spec.case_bias {
            CaseBias::Any => true,
            CaseBias::ForceCase1 => satisfies_case1(&b, spec.k),
            CaseBias::ForceCase2 => case2_shift(&b, spec.k).is_some(),
        };
        if ok {
            return Ok((a, b));
        }
    }
    Err(Error::Infeasible(format!(
        "{:?} not reached in {MAX_RETRIES} draws for n={} m={} k={} alphabet={}",
        spec.case_bias, spec.n, spec.m, spec.k, spec.alphabet_size
    )))
}

fn draw(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Result<(PatternString, PatternString)> {
    let GenSpec {
        n,
        m,
        k,
        alphabet_size: r,
        ..
    } = *spec;
    let (mut a, mut b) = match spec.case_bias {
        CaseBias::Any => (uniform(rng, n, r), uniform(rng, m, r)),
        CaseBias::ForceCase1 => {
            let width = case1_width(spec);
            if (r as usize) < width {
                return Err(Error::Infeasible(format!(
                    "alphabet {r} too small for distinct windows of length {width}"
                )));
            }
            (uniform(rng, n, r), locally_distinct(rng, m, r, width))
        }
        CaseBias::ForceCase2 => {
            if k.min(m) < 2 {
                return Err(Error::Infeasible(format!(
                    "no shift 1 <= d < min(k, m) with k={k} m={m}"
                )));
            }
            let d = rng.gen_range(1..k.min(m));
            let base = uniform(rng, d, r);
            let b_noise = rng.gen_range(0..=k);
            let a_noise = rng.gen_range(0..=4 * k);
            let phase = rng.gen_range(0..d);
            (
                periodic(rng, &base, phase, n, a_noise, r),
                periodic(rng, &base, 0, m, b_noise, r),
            )
        }
    };

    match spec.plant {
        Plant::None => {}
        Plant::MatchAt(i) => a[i..i + m].copy_from_slice(&b),
        Plant::NearMiss(c) => {
            let i = rng.gen_range(0..=n - m);
            a[i..i + m].copy_from_slice(&b);
            if r >= 2 {
                for j in sample(rng, m, c) {
                    a[i + j] = draw_other(rng, r, b[j]);
                }
            }
        }
    }

    for p in sample(rng, n + m, k) {
        if p < n {
            a[p] = Symbol::WILDCARD;
        } else {
            b[p - n] = Symbol::WILDCARD;
        }
    }
    Ok((PatternString::new(a), PatternString::new(b)))
}

/// Printable byte for alphabet code `c` in generated files.
///
/// Letters and digits come first, then the remaining non-reserved bytes.
pub fn code_byte(c: u32) -> Option<u8> {
    const FIRST: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    let c = c as usize;
    if c < FIRST.len() {
        return Some(FIRST[c]);
    }
    (0u8..=255)
        .filter(|b| !FIRST.contains(b) && ![WILDCARD_BYTE, SENTINEL_BYTE, b'\n', b'\r'].contains(b))
        .nth(c - FIRST.len())
}

/// File encoding of a generated string, one byte per symbol.
pub fn encode(s: &[Symbol]) -> Result<Vec<u8>> {
    s.iter()
        .map(|sym| match sym.code() {
            None => Ok(WILDCARD_BYTE),
            Some(c) => code_byte(c)
                .ok_or_else(|| Error::usage(format!("alphabet code {c} has no file byte"))),
        })
        .collect()
}

/// Writes `<prefix>.text` and `<prefix>.pattern`, each newline-terminated.
pub fn write_instance(
    prefix: &Path,
    text: &[Symbol],
    pattern: &[Symbol],
) -> Result<(PathBuf, PathBuf)> {
    let with_ext = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let paths = (with_ext(".text"), with_ext(".pattern"));
    for (path, s) in [(&paths.0, text), (&paths.1, pattern)] {
        let mut bytes = encode(s)?;
        bytes.push(b'\n');
        std::fs::write(path, bytes).map_err(|e| Error::io(path, e))?;
    }
    Ok(paths)
}
