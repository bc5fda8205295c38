//! Scoring a candidate list against the correct tag.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::suffix_index::CandidateList;

/// Reporting bucket of a score: `0`, `0.1` ... `0.5`, `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bin {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "0.1")]
    P1,
    #[serde(rename = "0.2")]
    P2,
    #[serde(rename = "0.3")]
    P3,
    #[serde(rename = "0.4")]
    P4,
    #[serde(rename = "0.5")]
    P5,
    #[serde(rename = "1")]
    One,
}

impl Bin {
    pub const ALL: [Bin; 7] = [Bin::Zero, Bin::P1, Bin::P2, Bin::P3, Bin::P4, Bin::P5, Bin::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        ["0", "0.1", "0.2", "0.3", "0.4", "0.5", "1"][self.index()]
    }

    /// Column key used by the CSV report.
    pub fn column(self) -> &'static str {
        ["b0", "b01", "b02", "b03", "b04", "b05", "b1"][self.index()]
    }

    fn from_tenths(t: u64) -> Bin {
        Bin::ALL[t.clamp(1, 5) as usize]
    }
}

impl fmt::Display for Bin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Exact score `numerator / denominator`: 0, 1, or a fraction below one half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvalScore {
    numerator: u64,
    denominator: u64,
}

impl EvalScore {
    pub const ZERO: EvalScore = EvalScore {
        numerator: 0,
        denominator: 1,
    };
    pub const ONE: EvalScore = EvalScore {
        numerator: 1,
        denominator: 1,
    };

    fn partial(count: u64, total: u64) -> Self {
        let g = gcd(count, total);
        EvalScore {
            numerator: count / g,
            denominator: total / g,
        }
    }

    pub fn numerator(self) -> u64 {
        self.numerator
    }

    pub fn denominator(self) -> u64 {
        self.denominator
    }

    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    pub fn is_partial(self) -> bool {
        self != Self::ZERO && self != Self::ONE
    }

    /// Fractions are rounded half away from zero to tenths; anything that
    /// would round to `0.0` still lands in `0.1`.
    pub fn bin(self) -> Bin {
        if self == Self::ZERO {
            Bin::Zero
        } else if self == Self::ONE {
            Bin::One
        } else {
            // round(10 n / d) with halves going up, in integers
            let tenths = (20 * self.numerator + self.denominator) / (2 * self.denominator);
            Bin::from_tenths(tenths)
        }
    }
}

impl fmt::Display for EvalScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// 0 when the correct tag is absent, 1 when it shares the top count,
/// otherwise its count over the sum of all counts.
pub fn eval_score(correct: &str, candidates: &CandidateList) -> EvalScore {
    let Some(top) = candidates.top() else {
        return EvalScore::ZERO;
    };
    let count = candidates.count_of(correct);
    if count == 0 {
        EvalScore::ZERO
    } else if count == top.count {
        EvalScore::ONE
    } else {
        EvalScore::partial(count, candidates.total())
    }
}
