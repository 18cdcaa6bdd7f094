//! Symbolic labels for orbit points.
//!
//! A point is labelled `R` when its switching coordinate is positive, `L`
//! when it is negative and `0` when it sits on the switching boundary
//! (within a tolerance band).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    R,
    L,
    #[serde(rename = "0")]
    Zero,
}

impl Symbol {
    /// Label of a switching coordinate `x`; `|x| <= zero_tol` maps to `Zero`.
    pub fn classify(x: f64, zero_tol: f64) -> Symbol {
        if x.abs() <= zero_tol {
            Symbol::Zero
        } else if x > 0.0 {
            Symbol::R
        } else {
            Symbol::L
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::R => 'R',
            Symbol::L => 'L',
            Symbol::Zero => '0',
        }
    }

    /// Whether a point labelled `self` may be driven by the branch of `branch`.
    ///
    /// A boundary point is compatible with both branches since the map is
    /// continuous there.
    pub fn compatible_with(self, branch: Symbol) -> bool {
        match (self, branch) {
            (Symbol::Zero, _) | (_, Symbol::Zero) => true,
            (s, b) => s == b,
        }
    }

    /// Mirror label under the conjugacy x -> -x.
    pub fn mirror(self) -> Symbol {
        match self {
            Symbol::R => Symbol::L,
            Symbol::L => Symbol::R,
            Symbol::Zero => Symbol::Zero,
        }
    }
}

impl TryFrom<char> for Symbol {
    type Error = Error;

    fn try_from(c: char) -> Result<Symbol> {
        match c {
            'R' | 'r' => Ok(Symbol::R),
            'L' | 'l' => Ok(Symbol::L),
            '0' => Ok(Symbol::Zero),
            other => Err(Error::InvalidSymbol(other)),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A word over `{R, L, 0}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Itinerary(pub Vec<Symbol>);

impl Itinerary {
    /// The basic word `R L^(n-1)`.
    pub fn basic(n: usize) -> Itinerary {
        let mut symbols = Vec::with_capacity(n);
        if n > 0 {
            symbols.push(Symbol::R);
            symbols.extend(std::iter::repeat_n(Symbol::L, n - 1));
        }
        Itinerary(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn mirror(&self) -> Itinerary {
        Itinerary(self.0.iter().map(|s| s.mirror()).collect())
    }

    /// The word started at letter `k`.
    pub fn rotated(&self, k: usize) -> Itinerary {
        let mut letters = self.0.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.len());
        }
        Itinerary(letters)
    }

    /// Whether this observed word is consistent with the branch word `branches`.
    pub fn realizes(&self, branches: &Itinerary) -> bool {
        self.len() == branches.len()
            && self
                .0
                .iter()
                .zip(&branches.0)
                .all(|(s, b)| s.compatible_with(*b))
    }
}

impl FromStr for Itinerary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Itinerary> {
        s.trim()
            .chars()
            .map(Symbol::try_from)
            .collect::<Result<Vec<_>>>()
            .map(Itinerary)
    }
}

impl TryFrom<String> for Itinerary {
    type Error = Error;

    fn try_from(s: String) -> Result<Itinerary> {
        s.parse()
    }
}

impl From<Itinerary> for String {
    fn from(it: Itinerary) -> String {
        it.to_string()
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Sign of the offset mu_hat. The negative case is handled through the
/// conjugacy that swaps the two slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MuSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl MuSign {
    /// Sign of `mu_hat`; zero maps to `Positive`.
    pub fn of(mu_hat: f64) -> MuSign {
        if mu_hat < 0.0 {
            MuSign::Negative
        } else {
            MuSign::Positive
        }
    }

    /// The slope pair on which the positive-offset formulas are evaluated.
    pub fn oriented(self, a: f64, d: f64) -> (f64, f64) {
        match self {
            MuSign::Positive => (a, d),
            MuSign::Negative => (d, a),
        }
    }
}

impl FromStr for MuSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<MuSign> {
        match s.trim() {
            "+" | "pos" | "positive" => Ok(MuSign::Positive),
            "-" | "neg" | "negative" => Ok(MuSign::Negative),
            other => Err(Error::InvalidArgument(format!(
                "mu sign must be '+' or '-', got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for MuSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuSign::Positive => write!(f, "+"),
            MuSign::Negative => write!(f, "-"),
        }
    }
}
