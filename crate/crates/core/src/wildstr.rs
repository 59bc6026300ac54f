//! Strings over an integer alphabet extended with a wildcard symbol.
//!
//! Two characters match when they are equal or when either one is the
//! wildcard. Everything else in the crate is phrased in terms of
//! [`chars_match`] and the shifted matching arrays defined here.

use std::fmt;
use std::ops::Deref;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive upper bound of user alphabet codes.
pub const ALPHABET_LIMIT: u32 = 1 << 16;

/// Byte that encodes the wildcard in the text format.
pub const WILDCARD_BYTE: u8 = b'?';
/// Byte reserved for the padding sentinel; rejected in user input.
pub const SENTINEL_BYTE: u8 = b'$';

/// One position of a [`PatternString`]: an alphabet code or a reserved marker.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(u32);

impl Symbol {
    pub const WILDCARD: Symbol = Symbol(u32::MAX);
    /// Padding character introduced by [`pad_transform`]. Never produced by parsing.
    pub const SENTINEL: Symbol = Symbol(u32::MAX - 1);

    pub fn new(code: u32) -> Result<Self> {
        if code < ALPHABET_LIMIT {
            Ok(Symbol(code))
        } else {
            Err(Error::usage(format!(
                "alphabet code {code} outside [0, {ALPHABET_LIMIT})"
            )))
        }
    }

    /// Alphabet symbol without the range check; `code` must be below [`ALPHABET_LIMIT`].
    pub(crate) const fn lit(code: u32) -> Self {
        Symbol(code)
    }

    pub fn is_wildcard(self) -> bool {
        self == Symbol::WILDCARD
    }

    /// Alphabet code, or `None` for the two reserved markers.
    pub fn code(self) -> Option<u32> {
        (self.0 < ALPHABET_LIMIT).then_some(self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::WILDCARD => f.write_str("?"),
            Symbol::SENTINEL => f.write_str("$"),
            Symbol(c) if c < 128 && (c as u8).is_ascii_graphic() => {
                write!(f, "{}", c as u8 as char)
            }
            Symbol(c) => write!(f, "#{c}"),
        }
    }
}

/// Character match: equal, or at least one side is the wildcard.
#[inline]
pub fn chars_match(a: Symbol, b: Symbol) -> bool {
    a == b || a.is_wildcard() || b.is_wildcard()
}

/// A text or pattern. Indexing is 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PatternString(Vec<Symbol>);

impl PatternString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        PatternString(symbols)
    }

    /// Builds from raw alphabet codes; `None` entries become wildcards.
    pub fn from_codes<I>(codes: I) -> Result<Self>
    where
        I: IntoIterator<Item = Option<u32>>,
    {
        codes
            .into_iter()
            .map(|c| c.map_or(Ok(Symbol::WILDCARD), Symbol::new))
            .collect::<Result<Vec<_>>>()
            .map(PatternString)
    }

    /// Parses the on-disk format: bytes map 1:1 to codes, `?` is the
    /// wildcard, `$` is rejected, one trailing newline is stripped.
    pub fn parse_bytes(raw: &[u8]) -> Result<Self> {
        let mut body = raw;
        if let Some(rest) = body.strip_suffix(b"\n") {
            body = rest.strip_suffix(b"\r").unwrap_or(rest);
        }
        body.iter()
            .enumerate()
            .map(|(pos, &b)| match b {
                WILDCARD_BYTE => Ok(Symbol::WILDCARD),
                SENTINEL_BYTE => Err(Error::usage(format!(
                    "byte '$' at offset {pos} is reserved and may not appear in input"
                ))),
                _ => Ok(Symbol::lit(b as u32)),
            })
            .collect::<Result<Vec<_>>>()
            .map(PatternString)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let raw = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::parse_bytes(&raw).map_err(|e| match e {
            Error::Usage(msg) => Error::Usage(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Inverse of [`parse_bytes`](Self::parse_bytes), without the newline.
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        self.0
            .iter()
            .map(|&s| match s {
                Symbol::WILDCARD => Ok(WILDCARD_BYTE),
                Symbol::SENTINEL => Ok(SENTINEL_BYTE),
                Symbol(c) if c <= 0xff && c as u8 != WILDCARD_BYTE && c as u8 != SENTINEL_BYTE => {
                    Ok(c as u8)
                }
                Symbol(c) => Err(Error::usage(format!("code {c} has no byte encoding"))),
            })
            .collect()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn wildcard_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_wildcard()).count()
    }

    /// Inclusive substring `X[from, to]`.
    pub fn substring(&self, from: usize, to: usize) -> PatternString {
        PatternString(self.0[from..=to].to_vec())
    }
}

impl Deref for PatternString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for PatternString {
    fn from(v: Vec<Symbol>) -> Self {
        PatternString(v)
    }
}

impl FromStr for PatternString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_bytes(s.as_bytes())
    }
}

impl fmt::Debug for PatternString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        for s in &self.0 {
            write!(f, "{s:?}")?;
        }
        f.write_str("\"")
    }
}

/// Number of positions where `x` and `y` fail to match.
pub fn mismatch_count(x: &[Symbol], y: &[Symbol]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::usage(format!(
            "mismatch_count on lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter()
        .zip(y)
        .filter(|(&a, &b)| !chars_match(a, b))
        .count())
}

/// Entry `i` of the shifted matching array of `x` with shift `d`.
///
/// 0 exactly when `x[i] == x[i + d]` and `x[i]` is not the wildcard.
/// Callers guarantee `i + d < x.len()`.
#[inline]
pub fn shift_bit(x: &[Symbol], d: usize, i: usize) -> bool {
    let a = x[i];
    a.is_wildcard() || a != x[i + d]
}

/// Materialized shifted matching array `S(X, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftArray {
    shift: usize,
    bits: Vec<bool>,
    sum: usize,
}

impl ShiftArray {
    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn sum(&self) -> usize {
        self.sum
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Positions holding a 1, ascending.
    pub fn ones(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }
}

fn check_shift(len: usize, d: usize) -> Result<()> {
    if d == 0 || d >= len {
        Err(Error::usage(format!(
            "shift {d} outside [1, {len}) for a string of length {len}"
        )))
    } else {
        Ok(())
    }
}

pub fn shifted_matching_array(x: &[Symbol], d: usize) -> Result<ShiftArray> {
    check_shift(x.len(), d)?;
    let bits: Vec<bool> = (0..x.len() - d).map(|i| shift_bit(x, d, i)).collect();
    let sum = bits.iter().filter(|&&b| b).count();
    Ok(ShiftArray {
        shift: d,
        bits,
        sum,
    })
}

pub fn shifted_matching_sum(x: &[Symbol], d: usize) -> Result<usize> {
    check_shift(x.len(), d)?;
    Ok((0..x.len() - d).filter(|&i| shift_bit(x, d, i)).count())
}

/// Raises the wildcard count without changing match existence.
///
/// Each symbol `x` becomes the pair `$x` in both strings, then the first
/// `t` sentinels of the pattern become wildcards. A match at `i` in the
/// original corresponds to a match at `2i` in the transformed pair.
pub fn pad_transform(
    text: &PatternString,
    pattern: &PatternString,
    t: usize,
) -> Result<(PatternString, PatternString)> {
    if text.contains(&Symbol::SENTINEL) || pattern.contains(&Symbol::SENTINEL) {
        return Err(Error::usage("padding sentinel already present in input"));
    }
    if t >= pattern.len() {
        return Err(Error::usage(format!(
            "cannot convert {t} of {} pattern sentinels; one must remain",
            pattern.len()
        )));
    }
    let double =
        |s: &[Symbol]| -> Vec<Symbol> { s.iter().flat_map(|&x| [Symbol::SENTINEL, x]).collect() };
    let padded_text = double(text);
    let mut padded_pattern = double(pattern);
    for slot in padded_pattern.iter_mut().step_by(2).take(t) {
        *slot = Symbol::WILDCARD;
    }
    Ok((PatternString(padded_text), PatternString(padded_pattern)))
}
