//! ReLU piecewise-linear recurrent networks
//!
//! ```text
//! z' = A z + W relu(z) + h,    A diagonal, W with zero diagonal
//! ```
//!
//! and their reduction, near one switching boundary, to a
//! [`CanonicalSystem`].
//!
//! State space splits into the `2^M` orthants. An orthant is named by its
//! activation bits `(d_1, ..., d_M)` with `d_i = 1` iff `z_i > 0`; the bits
//! are the binary digits of the region ordinal read from least significant
//! to most significant, so `z_1 > 0` alone is ordinal 1 and all negative is
//! ordinal 0. Coordinates are 0-based throughout the API.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cycle::{solve_cycle_with, CycleSolution};
use crate::error::{Error, Result};
use crate::skew_tent::{classify, ParamClassification, DEFAULT_CURVE_TOL};
use crate::symbolic::MuSign;
use crate::system::{CanonicalSystem, State};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct PlrnnSystem {
    pub a_diag: DVector<f64>,
    pub w: DMatrix<f64>,
    pub h: DVector<f64>,
    /// Allow a nonzero diagonal in `W`, which gives the two sides of a
    /// boundary different self-slopes.
    pub relaxed_diagonal: bool,
}

impl PlrnnSystem {
    pub fn new(
        a_diag: DVector<f64>,
        w: DMatrix<f64>,
        h: DVector<f64>,
        relaxed_diagonal: bool,
    ) -> Result<Self> {
        let m = a_diag.len();
        if m == 0 {
            return Err(Error::InvalidArgument(
                "PLRNN needs at least one unit".into(),
            ));
        }
        for (field, got) in [
            ("W rows", w.nrows()),
            ("W columns", w.ncols()),
            ("h", h.len()),
        ] {
            if got != m {
                return Err(Error::DimensionMismatch {
                    field,
                    expected: m,
                    actual: got,
                });
            }
        }
        for (name, values) in [
            ("A_diag", a_diag.as_slice()),
            ("W", w.as_slice()),
            ("h", h.as_slice()),
        ] {
            if let Some(&value) = values.iter().find(|v| !v.is_finite()) {
                return Err(Error::NonFinite { name, value });
            }
        }
        if !relaxed_diagonal {
            if let Some(index) = (0..m).find(|&i| w[(i, i)] != 0.0) {
                return Err(Error::DiagonalWeight {
                    index,
                    value: w[(index, index)],
                });
            }
        }
        Ok(PlrnnSystem {
            a_diag,
            w,
            h,
            relaxed_diagonal,
        })
    }

    pub fn dim(&self) -> usize {
        self.a_diag.len()
    }

    /// `diag(A) + W diag(bits)`: the linear part inside the orthant `r`.
    pub fn branch_matrix(&self, r: &RegionIndex) -> DMatrix<f64> {
        let mut out = self.w.clone();
        for (j, &on) in r.bits.iter().enumerate() {
            if !on {
                out.column_mut(j).fill(0.0);
            }
        }
        for i in 0..self.dim() {
            out[(i, i)] += self.a_diag[i];
        }
        out
    }

    /// One step through the branch matrix of the orthant containing `z`.
    pub fn step(&self, z: &DVector<f64>) -> DVector<f64> {
        self.branch_matrix(&region_of(z)) * z + &self.h
    }

    /// One step in the form `A z + W relu(z) + h`.
    pub fn step_relu(&self, z: &DVector<f64>) -> DVector<f64> {
        let relu = z.map(|v| v.max(0.0));
        self.a_diag.component_mul(z) + &self.w * relu + &self.h
    }
}

/// An orthant, stored as its activation bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RegionIndex {
    pub bits: Vec<bool>,
}

impl RegionIndex {
    pub fn new(bits: Vec<bool>) -> RegionIndex {
        RegionIndex { bits }
    }

    pub fn from_ordinal(ordinal: usize, dim: usize) -> Result<RegionIndex> {
        if dim >= usize::BITS as usize || ordinal >> dim != 0 {
            return Err(Error::RegionOutOfRange { ordinal, dim });
        }
        Ok(RegionIndex {
            bits: (0..dim).map(|i| ordinal >> i & 1 == 1).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    /// `sum_i bits[i] 2^i`, in `[0, 2^M)`.
    pub fn ordinal(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &on)| acc | (usize::from(on) << i))
    }

    /// 1-based label `k` of the region `S_{Omega^k}`.
    pub fn omega_label(&self) -> usize {
        self.ordinal() + 1
    }

    pub fn hamming(&self, other: &RegionIndex) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(u, v)| u != v)
            .count()
    }

    /// Whether `z` lies in the closure of the orthant.
    pub fn contains_closed(&self, z: &[f64]) -> bool {
        self.bits
            .iter()
            .zip(z)
            .all(|(&on, &v)| if on { v >= 0.0 } else { v <= 0.0 })
    }
}

impl fmt::Display for RegionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &on in &self.bits {
            f.write_str(if on { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for RegionIndex {
    type Err = Error;

    /// Parses a bit word such as `"100"` (first character is unit 0).
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidArgument("empty region word".into()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!(
                    "invalid region bit {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(RegionIndex::new)
    }
}

impl TryFrom<String> for RegionIndex {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RegionIndex> for String {
    fn from(r: RegionIndex) -> String {
        r.to_string()
    }
}

/// The orthant containing `z`; zero coordinates count as inactive.
pub fn region_of(z: &DVector<f64>) -> RegionIndex {
    RegionIndex::new(z.iter().map(|&v| v > 0.0).collect())
}

/// The coordinate separating two orthants that differ in exactly one bit.
pub fn adjacent(i: &RegionIndex, j: &RegionIndex) -> Result<usize> {
    if i.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            field: "region",
            expected: i.dim(),
            actual: j.dim(),
        });
    }
    match i.hamming(j) {
        0 => Err(Error::SameRegion),
        1 => Ok(i
            .bits
            .iter()
            .zip(&j.bits)
            .position(|(u, v)| u != v)
            .unwrap()),
        hamming => Err(Error::NotAdjacent { hamming }),
    }
}

/// Dynamics on two neighbouring orthants rewritten in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizedSystem {
    /// Switching coordinate (0-based).
    pub boundary: usize,
    /// The orthant with `z_s <= 0`.
    pub lower: RegionIndex,
    /// The orthant with `z_s > 0`.
    pub upper: RegionIndex,
    pub canonical: CanonicalSystem,
    /// `permutation[k]` is the original coordinate at canonical position `k`;
    /// the boundary comes first, the others keep their order.
    pub permutation: Vec<usize>,
    /// Both sides have the same self-slope, so the kink is gone.
    pub degenerate_kink: bool,
}

impl LocalizedSystem {
    /// Canonical state of an original PLRNN state.
    pub fn to_canonical(&self, z: &DVector<f64>) -> State {
        State::from_slice(&self.permutation.iter().map(|&k| z[k]).collect::<Vec<_>>())
    }

    /// Original PLRNN state of a canonical state.
    pub fn to_original(&self, s: &State) -> DVector<f64> {
        let flat = s.to_vec();
        let mut out = DVector::zeros(flat.len());
        for (pos, &k) in self.permutation.iter().enumerate() {
            out[k] = flat[pos];
        }
        out
    }
}

/// Rewrite the PLRNN on the orthant pair `(i, j)` as a canonical system in
/// the switching coordinate. The two regions may be given in either order.
pub fn localize(sys: &PlrnnSystem, i: &RegionIndex, j: &RegionIndex) -> Result<LocalizedSystem> {
    let m = sys.dim();
    if i.dim() != m {
        return Err(Error::DimensionMismatch {
            field: "region",
            expected: m,
            actual: i.dim(),
        });
    }
    let s = adjacent(i, j)?;
    let (lower, upper) = if i.bits[s] { (j, i) } else { (i, j) };

    let entries: Vec<(usize, f64)> = (0..m)
        .filter(|&k| k != s && sys.w[(s, k)] != 0.0)
        .map(|k| (k, sys.w[(s, k)]))
        .collect();
    if !entries.is_empty() {
        return Err(Error::StructureViolation { row: s, entries });
    }

    let a1 = sys.branch_matrix(lower);
    let a2 = sys.branch_matrix(upper);
    let permutation: Vec<usize> = std::iter::once(s)
        .chain((0..m).filter(|&k| k != s))
        .collect();
    let others = &permutation[1..];

    let b = DVector::from_iterator(m - 1, others.iter().map(|&k| a1[(k, s)]));
    let e = DVector::from_iterator(m - 1, others.iter().map(|&k| a2[(k, s)]));
    let block = DMatrix::from_fn(m - 1, m - 1, |r, c| a2[(others[r], others[c])]);
    let h_y = DVector::from_iterator(m - 1, others.iter().map(|&k| sys.h[k]));
    let (a, d) = (a1[(s, s)], a2[(s, s)]);
    let canonical = CanonicalSystem::new(a, d, b, e, block, h_y, sys.h[s])?;

    Ok(LocalizedSystem {
        boundary: s,
        lower: lower.clone(),
        upper: upper.clone(),
        canonical,
        permutation,
        degenerate_kink: a == d,
    })
}

/// A cycle coordinate outside the shared sign pattern of the region pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalityIssue {
    /// Index of the cycle point.
    pub point: usize,
    /// Original coordinate index.
    pub coordinate: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct LocalityCheck {
    /// Coordinates with the wrong sign.
    pub violations: Vec<LocalityIssue>,
    /// Coordinates exactly on a secondary boundary (accepted).
    pub on_boundary: Vec<LocalityIssue>,
}

impl LocalityCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that every non-switching coordinate of every point has the sign
/// required by the closed region pair.
pub fn check_locality(loc: &LocalizedSystem, points: &[State]) -> LocalityCheck {
    let mut out = LocalityCheck::default();
    for (p, state) in points.iter().enumerate() {
        let z = loc.to_original(state);
        for k in (0..z.len()).filter(|&k| k != loc.boundary) {
            let issue = LocalityIssue {
                point: p,
                coordinate: k,
                value: z[k],
            };
            let active = loc.lower.bits[k];
            if z[k] == 0.0 {
                out.on_boundary.push(issue);
            } else if (z[k] > 0.0) != active {
                out.violations.push(issue);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalCycleReport {
    pub localized: LocalizedSystem,
    pub classification: ParamClassification,
    /// The closed-form cycle, or why it does not exist.
    pub cycle: std::result::Result<CycleSolution, Error>,
    /// Present when the cycle was found.
    pub locality: Option<LocalityCheck>,
}

/// Localize, classify the canonical parameters for the basic `n`-cycle and
/// solve for it, then check that the cycle stays in the region pair.
pub fn local_cycle_analysis(
    sys: &PlrnnSystem,
    i: &RegionIndex,
    j: &RegionIndex,
    n: usize,
) -> Result<LocalCycleReport> {
    local_cycle_analysis_with(sys, i, j, n, &Tolerances::default())
}

pub fn local_cycle_analysis_with(
    sys: &PlrnnSystem,
    i: &RegionIndex,
    j: &RegionIndex,
    n: usize,
    tol: &Tolerances,
) -> Result<LocalCycleReport> {
    let localized = localize(sys, i, j)?;
    let c = &localized.canonical;
    let classification = classify(c.a, c.d, n, MuSign::of(c.mu_hat), DEFAULT_CURVE_TOL);
    let cycle = solve_cycle_with(c, n, tol);
    let locality = cycle
        .as_ref()
        .ok()
        .map(|sol| check_locality(&localized, &sol.points));
    Ok(LocalCycleReport {
        localized,
        classification,
        cycle,
        locality,
    })
}
