//! The one-dimensional skew tent map
//!
//! ```text
//! f(x) = a x + mu_hat   (x <= 0)
//!        d x + mu_hat   (x >= 0)
//! ```
//!
//! and the parameter regions of its basic cycles `R L^(n-1)`: existence,
//! border-collision curves, stability and the cyclic chaotic band regions.
//!
//! All `(1 - a^k) / (1 - a)` factors are evaluated as geometric sums, so
//! `a = 1` is a regular point everywhere in this module. Region tests are
//! stated for `mu_hat > 0`; the negative offset is handled by evaluating on
//! the swapped pair `(d, a)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::geometric_sum;
use crate::symbolic::{Itinerary, MuSign, Symbol};
use crate::tolerance::Tolerances;

/// Default tolerance for membership of a bifurcation curve.
pub const DEFAULT_CURVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkewTentParams {
    /// Left slope, branch `x <= 0`.
    pub a: f64,
    /// Right slope, branch `x >= 0`.
    pub d: f64,
    pub mu_hat: f64,
}

impl SkewTentParams {
    pub fn new(a: f64, d: f64, mu_hat: f64) -> Result<Self> {
        for (name, value) in [("a", a), ("d", d), ("mu_hat", mu_hat)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        Ok(SkewTentParams { a, d, mu_hat })
    }

    /// One iterate of the map.
    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        if x <= 0.0 {
            self.a * x + self.mu_hat
        } else {
            self.d * x + self.mu_hat
        }
    }

    /// Apply the branch named by `branch` regardless of the sign of `x`.
    #[inline]
    pub fn apply_branch(&self, branch: Symbol, x: f64) -> f64 {
        match branch {
            Symbol::R => self.d * x + self.mu_hat,
            Symbol::L | Symbol::Zero => self.a * x + self.mu_hat,
        }
    }

    /// Parameters of the conjugate map `y = -x`.
    pub fn mirrored(&self) -> SkewTentParams {
        SkewTentParams {
            a: self.d,
            d: self.a,
            mu_hat: -self.mu_hat,
        }
    }
}

/// x-components of a basic cycle `R L^(n-1)`, starting at the R-point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XCycle {
    pub xs: Vec<f64>,
    pub sequence: Itinerary,
}

impl XCycle {
    pub fn n(&self) -> usize {
        self.xs.len()
    }

    /// Largest deviation of `f(x_i)` from `x_{i+1}` when each point is
    /// advanced by the branch its letter names.
    pub fn closure_residual(&self, p: &SkewTentParams) -> f64 {
        let n = self.xs.len();
        (0..n)
            .map(|i| {
                let next = p.apply_branch(self.sequence.0[i], self.xs[i]);
                (next - self.xs[(i + 1) % n]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Closed-form x-components of the candidate cycle `R L^(n-1)`:
///
/// ```text
/// x_1 = mu_hat S(n) / (1 - a^(n-1) d)
/// x_i = mu_hat (S(i-1) + a^(i-2) d S(n-i+1)) / (1 - a^(n-1) d),  i >= 2
/// ```
///
/// with `S(k) = sum_{j<k} a^j`.
pub fn cycle_x_components(p: &SkewTentParams, n: usize) -> Result<XCycle> {
    cycle_x_components_with(p, n, &Tolerances::default())
}

pub fn cycle_x_components_with(p: &SkewTentParams, n: usize, tol: &Tolerances) -> Result<XCycle> {
    if n < 2 {
        return Err(Error::InvalidCycleLength { n, min: 2 });
    }
    if p.mu_hat == 0.0 {
        return Err(Error::DegenerateOffset);
    }
    let SkewTentParams { a, d, mu_hat } = *p;
    let denom = 1.0 - a.powi(n as i32 - 1) * d;
    if denom.abs() <= tol.singular_tol {
        return Err(Error::SingularDenominator {
            value: denom.abs(),
            tol: tol.singular_tol,
        });
    }

    let mut xs = Vec::with_capacity(n);
    xs.push(mu_hat * geometric_sum(a, n) / denom);
    for i in 2..=n {
        let num = geometric_sum(a, i - 1) + a.powi(i as i32 - 2) * d * geometric_sum(a, n - i + 1);
        xs.push(mu_hat * num / denom);
    }

    let zero_tol = tol.zero_tol(mu_hat);
    let mut sequence = vec![Symbol::R];
    sequence.extend(xs[1..].iter().map(|&x| Symbol::classify(x, zero_tol)));
    let admissible = xs[0] > 0.0 && xs[1..].iter().all(|&x| x <= zero_tol);
    let sequence = Itinerary(sequence);
    if !admissible {
        return Err(Error::NotAdmissible {
            xs,
            sequence: Itinerary::basic(n).to_string(),
        });
    }
    Ok(XCycle { xs, sequence })
}

/// The value `-(1 - a^(n-1)) / ((1 - a) a^(n-2))` bounding the existence
/// region; the bifurcation curve is `d = existence_bound(a, n)`.
pub fn existence_bound(a: f64, n: usize) -> f64 {
    -geometric_sum(a, n - 1) / a.powi(n as i32 - 2)
}

/// Lower edge `-1 / a^(n-1)` of the stability region.
pub fn stability_bound(a: f64, n: usize) -> f64 {
    -1.0 / a.powi(n as i32 - 1)
}

fn positive_region(a: f64, d: f64, n: usize) -> bool {
    n >= 2 && a > 0.0 && d < existence_bound(a, n)
}

/// Interior of the existence region of `R L^(n-1)` (strict inequality).
pub fn region_exists(a: f64, d: f64, n: usize, sign: MuSign) -> bool {
    let (a, d) = sign.oriented(a, d);
    positive_region(a, d, n)
}

/// Membership of the border-collision curve within `tol`.
pub fn on_bifurcation_curve(a: f64, d: f64, n: usize, sign: MuSign, tol: f64) -> bool {
    let (a, d) = sign.oriented(a, d);
    n >= 2 && a > 0.0 && (d - existence_bound(a, n)).abs() <= tol
}

/// Stability region of `R L^(n-1)` for a positive offset:
/// `a > 0` and `-1/a^(n-1) < d < existence_bound(a, n)`.
pub fn region_stable(a: f64, d: f64, n: usize) -> bool {
    positive_region(a, d, n) && d > stability_bound(a, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandRegion {
    NBand,
    TwoNBand,
    Neither,
}

/// Residuals of the cyclic band inequalities. Negative `cubic` favours the
/// n-band attractor, positive the 2n-band one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandResiduals {
    /// `d - existence_bound(a, n)`; must be negative.
    pub existence: f64,
    /// `a^(2(n-1)) d^3 + a - d`.
    pub cubic: f64,
    /// `a^(n-1) d^2 + d - a`; must be negative for n bands.
    pub quadratic: f64,
    /// `d + 1/a^(n-1)`; must be negative for 2n bands.
    pub stability: f64,
}

pub fn band_residuals(a: f64, d: f64, n: usize) -> BandResiduals {
    let an1 = a.powi(n as i32 - 1);
    BandResiduals {
        existence: d - existence_bound(a, n),
        cubic: an1 * an1 * d * d * d + a - d,
        quadratic: an1 * d * d + d - a,
        stability: d - stability_bound(a, n),
    }
}

/// Which cyclic chaotic band region `(a, d)` belongs to.
pub fn chaotic_band_region(a: f64, d: f64, n: usize) -> BandRegion {
    if !positive_region(a, d, n) {
        return BandRegion::Neither;
    }
    let r = band_residuals(a, d, n);
    if r.cubic < 0.0 && r.quadratic < 0.0 {
        BandRegion::NBand
    } else if r.stability < 0.0 && r.cubic > 0.0 {
        BandRegion::TwoNBand
    } else {
        BandRegion::Neither
    }
}

/// Whether the map has an admissible 3-cycle `RLL` (or its mirror for a
/// negative offset), which for a continuous interval map implies chaos in
/// the sense of Li and Yorke.
pub fn li_yorke_chaos_flag(p: &SkewTentParams) -> Result<bool> {
    if p.mu_hat == 0.0 {
        return Err(Error::DegenerateOffset);
    }
    Ok(region_exists(p.a, p.d, 3, MuSign::of(p.mu_hat)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    OutsideRegion,
    ExistsUnstable,
    ExistsStable,
    OnBifurcationCurve,
    NBandChaos,
    TwoNBandChaos,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::OutsideRegion => "OutsideRegion",
            Verdict::ExistsUnstable => "ExistsUnstable",
            Verdict::ExistsStable => "ExistsStable",
            Verdict::OnBifurcationCurve => "OnBifurcationCurve",
            Verdict::NBandChaos => "NBandChaos",
            Verdict::TwoNBandChaos => "TwoNBandChaos",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamClassification {
    pub verdict: Verdict,
    pub n: usize,
    /// Every evaluated condition and its residual.
    pub details: BTreeMap<String, f64>,
}

/// Single verdict for `(a, d)` and cycle length `n`, with precedence
/// curve > stable > chaotic bands > unstable > outside.
pub fn classify(a: f64, d: f64, n: usize, sign: MuSign, tol: f64) -> ParamClassification {
    let (pa, pd) = sign.oriented(a, d);
    let bound = existence_bound(pa, n);
    let bands = band_residuals(pa, pd, n);

    let mut details = BTreeMap::new();
    details.insert("a_positive".to_string(), pa);
    details.insert("existence_bound".to_string(), bound);
    details.insert("existence".to_string(), pd - bound);
    details.insert("curve_distance".to_string(), (pd - bound).abs());
    details.insert("stability_lower".to_string(), bands.stability);
    details.insert("multiplier".to_string(), pa.powi(n as i32 - 1) * pd);
    details.insert("band_cubic".to_string(), bands.cubic);
    details.insert("band_quadratic".to_string(), bands.quadratic);

    let verdict = if n < 2 {
        Verdict::OutsideRegion
    } else if on_bifurcation_curve(a, d, n, sign, tol) {
        Verdict::OnBifurcationCurve
    } else if region_stable(pa, pd, n) {
        Verdict::ExistsStable
    } else {
        match chaotic_band_region(pa, pd, n) {
            BandRegion::NBand => Verdict::NBandChaos,
            BandRegion::TwoNBand => Verdict::TwoNBandChaos,
            BandRegion::Neither if positive_region(pa, pd, n) => Verdict::ExistsUnstable,
            BandRegion::Neither => Verdict::OutsideRegion,
        }
    };

    ParamClassification {
        verdict,
        n,
        details,
    }
}
