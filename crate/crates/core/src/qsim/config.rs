use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a threshold count resolves a sum that falls strictly inside its promise gap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapPolicy {
    AlwaysLow,
    AlwaysHigh,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Mode {
    /// Gap sums resolve against the midpoint `floor(3*beta/2)`.
    #[default]
    Ideal,
    Gap(GapPolicy),
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Ideal,
        Mode::Gap(GapPolicy::AlwaysLow),
        Mode::Gap(GapPolicy::AlwaysHigh),
        Mode::Gap(GapPolicy::Random),
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Ideal => "ideal",
            Mode::Gap(GapPolicy::AlwaysLow) => "gap-low",
            Mode::Gap(GapPolicy::AlwaysHigh) => "gap-high",
            Mode::Gap(GapPolicy::Random) => "gap-random",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::usage(format!(
                    "unknown mode {s:?}; expected ideal, gap-low, gap-high or gap-random"
                ))
            })
    }
}

impl TryFrom<String> for Mode {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Mode> for String {
    fn from(m: Mode) -> String {
        m.as_str().to_owned()
    }
}

/// Which satisfying index a search reports when several exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    #[default]
    Smallest,
    /// Seeded uniform choice among all satisfying indices.
    Uniform,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub mode: Mode,
    pub seed: u64,
    pub c_grover: u64,
    pub c_list: u64,
    pub c_count: u64,
    /// Multiply outermost charges by `ceil(log2 n)` to model amplification
    /// to high success probability.
    pub whp: bool,
    pub tie_break: TieBreak,
    /// Probability that a threshold count or search returns a wrong answer.
    /// Robustness experiments only; zero everywhere else.
    pub failure_prob: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            mode: Mode::Ideal,
            seed: 0,
            c_grover: 1,
            c_list: 1,
            c_count: 1,
            whp: true,
            tie_break: TieBreak::Smallest,
            failure_prob: 0.0,
        }
    }
}

impl SimConfig {
    pub fn with_mode(mode: Mode, seed: u64) -> Self {
        SimConfig {
            mode,
            seed,
            ..SimConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c_grover == 0 || self.c_list == 0 || self.c_count == 0 {
            return Err(Error::usage("cost constants must be positive"));
        }
        if !(0.0..1.0).contains(&self.failure_prob) {
            return Err(Error::usage(format!(
                "failure_prob {} outside [0, 1)",
                self.failure_prob
            )));
        }
        Ok(())
    }
}
