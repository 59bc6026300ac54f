//! Classical ground truth: exact matchers and brute-force lemma checks.

mod lemmas;
mod ntt;

pub use lemmas::{
    lemma1_check, lemma2_check, lemma3_check, CounterexampleReport, LemmaId, PremiseUnmet,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wildstr::{chars_match, Symbol};

/// Sorted start indices of every alignment where the pattern matches.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatchSet(Vec<usize>);

impl MatchSet {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

pub(crate) fn check_lengths(text: &[Symbol], pattern: &[Symbol]) -> Result<()> {
    if pattern.is_empty() || pattern.len() > text.len() {
        Err(Error::usage(format!(
            "need 1 <= m <= n, got n={} m={}",
            text.len(),
            pattern.len()
        )))
    } else {
        Ok(())
    }
}

/// Whether the pattern matches the text window starting at `i`.
#[inline]
pub fn matches_at(text: &[Symbol], pattern: &[Symbol], i: usize) -> bool {
    text[i..i + pattern.len()]
        .iter()
        .zip(pattern)
        .all(|(&a, &b)| chars_match(a, b))
}

pub fn naive_match_positions(text: &[Symbol], pattern: &[Symbol]) -> Result<MatchSet> {
    check_lengths(text, pattern)?;
    Ok(MatchSet(
        (0..=text.len() - pattern.len())
            .filter(|&i| matches_at(text, pattern, i))
            .collect(),
    ))
}

/// Smallest matching start, scanning alignments in order.
pub fn naive_first_match(text: &[Symbol], pattern: &[Symbol]) -> Result<Option<usize>> {
    check_lengths(text, pattern)?;
    Ok((0..=text.len() - pattern.len()).find(|&i| matches_at(text, pattern, i)))
}

/// Mismatch count of every alignment.
pub fn mismatch_profile(text: &[Symbol], pattern: &[Symbol]) -> Result<Vec<usize>> {
    check_lengths(text, pattern)?;
    let m = pattern.len();
    Ok((0..=text.len() - m)
        .map(|i| {
            text[i..i + m]
                .iter()
                .zip(pattern)
                .filter(|(&a, &b)| !chars_match(a, b))
                .count()
        })
        .collect())
}

/// Fewest leading NTT moduli whose product exceeds `m * R^4`.
fn moduli_needed(m: usize, alphabet: usize) -> Result<usize> {
    let bound = (alphabet as u128)
        .checked_pow(4)
        .and_then(|r4| r4.checked_mul(m as u128));
    let mut product: u128 = 1;
    for (used, &(p, _, _)) in ntt::PRIMES.iter().enumerate() {
        product *= p as u128;
        if matches!(bound, Some(b) if b < product) {
            return Ok(used + 1);
        }
    }
    Err(Error::Overflow(format!(
        "convolution bound m*R^4 with m={m}, R={alphabet} exceeds modulus product {product}"
    )))
}

/// Exact matcher via three convolutions.
///
/// With wildcards encoded as 0 and symbols as ranks `1..=R`, alignment `i`
/// matches iff `sum_j p_j t_{i+j} (p_j - t_{i+j})^2 = 0`. The sum is below
/// `m * R^4`; enough NTT moduli are used for their product to exceed that,
/// so a zero residue under each of them certifies a true zero.
pub fn fft_match_positions(text: &[Symbol], pattern: &[Symbol]) -> Result<MatchSet> {
    check_lengths(text, pattern)?;
    SCRATCH.with_borrow_mut(|sc| sc.match_positions(text, pattern))
}

/// Buffers reused across calls on one thread.
#[derive(Default)]
struct Scratch {
    alphabet: Vec<Symbol>,
    text: Vec<u64>,
    pattern_rev: Vec<u64>,
    zero: Vec<bool>,
    spectra: Vec<u64>,
}

thread_local! {
    static SCRATCH: std::cell::RefCell<Scratch> = std::cell::RefCell::default();
}

impl Scratch {
    fn match_positions(&mut self, text: &[Symbol], pattern: &[Symbol]) -> Result<MatchSet> {
        let (n, m) = (text.len(), pattern.len());
        let alphabet = &mut self.alphabet;
        alphabet.clear();
        alphabet.extend(text.iter().chain(pattern).filter(|s| !s.is_wildcard()));
        alphabet.sort_unstable();
        alphabet.dedup();

        let moduli = moduli_needed(m, alphabet.len())?;
        let len = (n + m - 1).next_power_of_two();
        if len > ntt::MAX_LEN {
            return Err(Error::Overflow(format!(
                "transform length {len} exceeds supported {}",
                ntt::MAX_LEN
            )));
        }

        let rank = |s: &Symbol| -> u64 {
            if s.is_wildcard() {
                0
            } else {
                alphabet.binary_search(s).expect("symbol ranked") as u64 + 1
            }
        };
        self.text.clear();
        self.text.extend(text.iter().map(rank));
        self.pattern_rev.clear();
        self.pattern_rev.extend(pattern.iter().rev().map(rank));
        self.zero.clear();
        self.zero.resize(n - m + 1, true);

        for field in &ntt::fields()[..moduli] {
            let (t, p, buf) = (&self.text, &self.pattern_rev, &mut self.spectra);
            let acc = match field.p {
                ntt::P0 => cubic_correlation::<{ ntt::P0 }>(field, t, p, len, buf),
                ntt::P1 => cubic_correlation::<{ ntt::P1 }>(field, t, p, len, buf),
                ntt::P2 => cubic_correlation::<{ ntt::P2 }>(field, t, p, len, buf),
                _ => unreachable!("unknown modulus"),
            };
            for (z, &c) in self.zero.iter_mut().zip(&acc[m - 1..]) {
                *z &= c == 0;
            }
        }
        Ok(MatchSet(
            self.zero
                .iter()
                .enumerate()
                .filter_map(|(i, &z)| z.then_some(i))
                .collect(),
        ))
    }
}

/// `sum_j p_j t_{i+j} (p_j - t_{i+j})^2` modulo `P`, at index `i + m - 1`
/// of the returned slice.
fn cubic_correlation<'a, const P: u64>(
    field: &ntt::Field,
    t: &[u64],
    p_rev: &[u64],
    len: usize,
    buf: &'a mut Vec<u64>,
) -> &'a [u64] {
    buf.clear();
    buf.resize(6 * len, 0);
    let (ts, ps) = buf.split_at_mut(3 * len);
    for (src, out) in [(t, ts), (p_rev, ps)] {
        let (v1, rest) = out.split_at_mut(len);
        let (v2, v3) = rest.split_at_mut(len);
        for (i, &r) in src.iter().enumerate() {
            v1[i] = r % P;
            v2[i] = ntt::mul::<P>(v1[i], v1[i]);
            v3[i] = ntt::mul::<P>(v2[i], v1[i]);
        }
        for v in [v1, v2, v3] {
            ntt::transform_mod::<P>(v, field, false);
        }
    }
    let (ts, ps) = buf.split_at_mut(3 * len);
    let (t1, t23) = ts.split_at_mut(len);
    let (t2, t3) = t23.split_at(len);
    let (p1, p2, p3) = (&ps[..len], &ps[len..2 * len], &ps[2 * len..]);
    for i in 0..len {
        let pos = ntt::add::<P>(ntt::mul::<P>(p3[i], t1[i]), ntt::mul::<P>(p1[i], t3[i]));
        let neg = ntt::mul::<P>(p2[i], t2[i]);
        t1[i] = ntt::sub::<P>(pos, ntt::add::<P>(neg, neg));
    }
    ntt::transform_mod::<P>(t1, field, true);
    t1
}
