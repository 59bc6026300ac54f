//! Brute-force verifiers for the three structural lemmas behind the matcher.
//!
//! Each check evaluates its lemma's statement directly on one instance.
//! Threshold comparisons are done in integers (`2 * x >= k` for `x >= k/2`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{check_lengths, matches_at, mismatch_profile};
use crate::wildstr::{chars_match, shift_bit, shifted_matching_sum, PatternString, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    /// Two close alignments cannot both be near-matches when every small
    /// shift of the pattern has a large shifted matching sum.
    #[serde(rename = "lemma1")]
    NearMatchSeparation,
    /// A matching window of the text has a bounded shifted matching sum.
    #[serde(rename = "lemma2")]
    WindowShiftBound,
    /// A window matches iff the prefix and the listed shift positions match.
    #[serde(rename = "lemma3")]
    SparseCertificate,
}

/// An input on which a lemma's conclusion failed while its premise held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub lemma: LemmaId,
    pub text: PatternString,
    pub pattern: PatternString,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    /// Alignment start(s) the violation concerns.
    pub indices: Vec<usize>,
    /// Quantities that contradict the conclusion, by name.
    pub observed: Vec<(String, usize)>,
}

impl CounterexampleReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// The instance does not satisfy the lemma's premise; nothing was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseUnmet(pub String);

impl fmt::Display for PremiseUnmet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "premise not met: {}", self.0)
    }
}

impl std::error::Error for PremiseUnmet {}

fn unmet<T>(msg: impl Into<String>) -> Result<T, PremiseUnmet> {
    Err(PremiseUnmet(msg.into()))
}

fn total_wildcards(text: &[Symbol], pattern: &[Symbol]) -> usize {
    text.iter()
        .chain(pattern)
        .filter(|s| s.is_wildcard())
        .count()
}

/// For every pair of starts `a < b <= n - m` with `b - a < k`, at least one
/// of the two alignments has `>= k/2` mismatches.
///
/// Premise: at most `k` wildcards in total, `n/2 < m <= n`, and every shift
/// `1 <= d < min(k, m)` of the pattern has shifted matching sum `>= 3k`.
/// The length condition keeps every pair distance below `m`, where the
/// shifted matching array the argument relies on exists.
pub fn lemma1_check(
    text: &PatternString,
    pattern: &PatternString,
    k: usize,
) -> Result<Option<CounterexampleReport>, PremiseUnmet> {
    let (n, m) = (text.len(), pattern.len());
    if check_lengths(text, pattern).is_err() {
        return unmet(format!("need 1 <= m <= n, got n={n} m={m}"));
    }
    if 2 * m <= n {
        return unmet(format!("need n/2 < m, got n={n} m={m}"));
    }
    let w = total_wildcards(text, pattern);
    if w > k {
        return unmet(format!("{w} wildcards exceed budget {k}"));
    }
    for d in 1..k.min(m) {
        let s = shifted_matching_sum(pattern, d).expect("d < m");
        if s < 3 * k {
            return unmet(format!("shift {d} has sum {s} < 3k = {}", 3 * k));
        }
    }
    let profile = mismatch_profile(text, pattern).expect("lengths checked");
    for a in 0..profile.len() {
        for b in a + 1..profile.len().min(a + k) {
            if 2 * profile[a].max(profile[b]) < k {
                return Ok(Some(CounterexampleReport {
                    lemma: LemmaId::NearMatchSeparation,
                    text: text.clone(),
                    pattern: pattern.clone(),
                    k: Some(k),
                    shift: None,
                    indices: vec![a, b],
                    observed: vec![
                        ("mismatches_a".into(), profile[a]),
                        ("mismatches_b".into(), profile[b]),
                    ],
                }));
            }
        }
    }
    Ok(None)
}

/// Every matching start `i` has `sum_{j=i}^{i+m-d-1} S(A,d)_j <= 8k`.
///
/// Premise: at most `k` wildcards, `1 <= d < m <= n`, and the pattern's
/// shifted matching sum at `d` is at most `6k`.
pub fn lemma2_check(
    text: &PatternString,
    pattern: &PatternString,
    d: usize,
    k: usize,
) -> Result<Option<CounterexampleReport>, PremiseUnmet> {
    let (n, m) = (text.len(), pattern.len());
    if check_lengths(text, pattern).is_err() {
        return unmet(format!("need 1 <= m <= n, got n={n} m={m}"));
    }
    if d == 0 || d >= m {
        return unmet(format!("shift {d} outside [1, {m})"));
    }
    let w = total_wildcards(text, pattern);
    if w > k {
        return unmet(format!("{w} wildcards exceed budget {k}"));
    }
    let s = shifted_matching_sum(pattern, d).expect("d < m");
    if s > 6 * k {
        return unmet(format!("shift {d} has sum {s} > 6k = {}", 6 * k));
    }
    // prefix[j] = number of ones of S(A,d) before j
    let mut prefix = vec![0usize; n - d + 1];
    for j in 0..n - d {
        prefix[j + 1] = prefix[j] + shift_bit(text, d, j) as usize;
    }
    for i in 0..=n - m {
        if !matches_at(text, pattern, i) {
            continue;
        }
        let window = prefix[i + m - d] - prefix[i];
        if window > 8 * k {
            return Ok(Some(CounterexampleReport {
                lemma: LemmaId::WindowShiftBound,
                text: text.clone(),
                pattern: pattern.clone(),
                k: Some(k),
                shift: Some(d),
                indices: vec![i],
                observed: vec![("window_sum".into(), window)],
            }));
        }
    }
    Ok(None)
}

/// Evaluates the three conditions literally and reports whether their
/// conjunction agrees with the direct match test at `i`.
pub fn lemma3_check(
    text: &PatternString,
    pattern: &PatternString,
    d: usize,
    i: usize,
) -> Result<bool> {
    check_lengths(text, pattern)?;
    let (n, m) = (text.len(), pattern.len());
    if i > n - m {
        return Err(Error::usage(format!("start {i} outside [0, {}]", n - m)));
    }
    if d == 0 || d >= m {
        return Err(Error::usage(format!("shift {d} outside [1, {m})")));
    }
    let (a, b) = (text.symbols(), pattern.symbols());
    let pair_ok = |j: usize| chars_match(a[i + j], b[j]) && chars_match(a[i + j + d], b[j + d]);

    let prefix = (0..d).all(|j| chars_match(a[i + j], b[j]));
    let text_ones = (0..m - d).all(|j| !shift_bit(a, d, i + j) || pair_ok(j));
    let pattern_ones = (0..m - d).all(|j| !shift_bit(b, d, j) || pair_ok(j));

    Ok((prefix && text_ones && pattern_ones) == matches_at(a, b, i))
}
