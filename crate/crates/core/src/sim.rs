//! Forward iteration and numerical orbit analysis.
//!
//! This is the brute-force side of the toolkit: long trajectories, cycle
//! detection on them, symbolic itineraries, band counting for chaotic
//! attractors, and the raw data for cobweb and bifurcation diagrams.

use crate::error::{Error, Result};
use crate::skew_tent::SkewTentParams;
use crate::symbolic::{Itinerary, Symbol};
use crate::system::{CanonicalSystem, State};

/// Coordinates beyond this magnitude count as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;
pub const DEFAULT_TRANSIENT: usize = 1_000;
pub const DEFAULT_STEPS: usize = 10_000;
/// Orbit length used for band counting.
pub const DEFAULT_BAND_STEPS: usize = 100_000;

/// Post-transient part of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub states: Vec<State>,
    /// Number of initial iterates that were discarded.
    pub transient: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.x).collect()
    }
}

fn escaped(v: f64) -> bool {
    v.is_nan() || v.abs() > DIVERGENCE_THRESHOLD
}

fn diverged(z: &State) -> bool {
    escaped(z.x) || z.y.iter().any(|&v| escaped(v))
}

/// Iterate `steps` times from `z0` and keep the states with index
/// `k >= transient` (the seed has index 0).
pub fn trajectory(
    sys: &CanonicalSystem,
    z0: State,
    steps: usize,
    transient: usize,
) -> Result<Orbit> {
    if steps <= transient {
        return Err(Error::InvalidArgument(format!(
            "steps ({steps}) must exceed transient ({transient})"
        )));
    }
    if z0.dim() != sys.state_dim() {
        return Err(Error::DimensionMismatch {
            field: "seed",
            expected: sys.state_dim(),
            actual: z0.dim(),
        });
    }
    let mut states = Vec::with_capacity(steps - transient);
    let mut z = z0;
    for k in 0..steps {
        if diverged(&z) {
            return Err(Error::Diverged {
                step: k,
                threshold: DIVERGENCE_THRESHOLD,
            });
        }
        let next = sys.step(&z);
        if k >= transient {
            states.push(z);
        }
        z = next;
    }
    Ok(Orbit { states, transient })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionMethod {
    Convergence,
    Floyd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectedCycle {
    pub period: usize,
    /// One period of states, starting at the point with the largest x.
    pub points: Vec<State>,
    pub tol_used: f64,
    pub method: DetectionMethod,
}

fn rotate_to_max_x(mut points: Vec<State>) -> Vec<State> {
    if let Some(start) = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.x.total_cmp(&b.1.x))
        .map(|(i, _)| i)
    {
        points.rotate_left(start);
    }
    points
}

/// Smallest period `p <= max_period` for which the tail of the orbit
/// repeats within `tol` (max-norm), comparing every state of the final
/// `2 * max_period` window with its image `p` steps later.
pub fn detect_cycle(orbit: &Orbit, max_period: usize, tol: f64) -> Option<DetectedCycle> {
    let states = &orbit.states;
    let len = states.len();
    let window_start = len.saturating_sub(2 * max_period);
    (1..=max_period)
        .take_while(|&p| 2 * p <= len)
        .find(|&p| (window_start..len - p).all(|k| states[k].distance(&states[k + p]) <= tol))
        .map(|p| DetectedCycle {
            period: p,
            points: rotate_to_max_x(states[len - p..].to_vec()),
            tol_used: tol,
            method: DetectionMethod::Convergence,
        })
}

/// Tortoise-and-hare detection directly on the map, without storing the
/// orbit. After the two runners meet within `tol` the tortoise is advanced
/// a further `4 * max_period` steps before the period is measured.
pub fn detect_cycle_floyd(
    sys: &CanonicalSystem,
    z0: State,
    max_iter: usize,
    max_period: usize,
    tol: f64,
) -> Result<Option<DetectedCycle>> {
    let advance = |z: &State, step: usize| -> Result<State> {
        let next = sys.step(z);
        if diverged(&next) {
            Err(Error::Diverged {
                step,
                threshold: DIVERGENCE_THRESHOLD,
            })
        } else {
            Ok(next)
        }
    };

    let mut tortoise = advance(&z0, 1)?;
    let mut hare = advance(&advance(&z0, 1)?, 2)?;
    let mut k = 1;
    while tortoise.distance(&hare) > tol {
        if k >= max_iter {
            return Ok(None);
        }
        tortoise = advance(&tortoise, k + 1)?;
        hare = advance(&advance(&hare, 2 * k + 1)?, 2 * k + 2)?;
        k += 1;
    }
    for _ in 0..4 * max_period {
        tortoise = advance(&tortoise, k)?;
        k += 1;
    }

    let mut points = vec![tortoise.clone()];
    let mut probe = advance(&tortoise, k)?;
    for p in 1..=max_period {
        if probe.distance(&tortoise) <= tol {
            return Ok(Some(DetectedCycle {
                period: p,
                points: rotate_to_max_x(points),
                tol_used: tol,
                method: DetectionMethod::Floyd,
            }));
        }
        points.push(probe.clone());
        probe = advance(&probe, k + p)?;
    }
    Ok(None)
}

/// One letter per recorded state from the sign of x.
pub fn itinerary(orbit: &Orbit, zero_tol: f64) -> Itinerary {
    Itinerary(
        orbit
            .states
            .iter()
            .map(|s| Symbol::classify(s.x, zero_tol))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandOptions {
    /// A gap must exceed `gap_factor` times the median gap.
    pub gap_factor: f64,
    /// A gap must also exceed this fraction of the orbit's x-span.
    pub min_span_fraction: f64,
}

impl Default for BandOptions {
    fn default() -> Self {
        BandOptions {
            gap_factor: 10.0,
            min_span_fraction: 3e-3,
        }
    }
}

/// Number of disjoint clusters among the x-values of the orbit.
///
/// The values are sorted and split at every gap that is both larger than
/// `gap_factor` times the median gap and larger than `min_span_fraction`
/// of the total span. The second condition keeps sparse tails of a chaotic
/// band together; inside a band the largest gaps shrink with orbit length
/// while gaps between bands do not.
pub fn band_count(orbit: &Orbit, opts: &BandOptions) -> usize {
    count_clusters(&orbit.xs(), opts)
}

pub fn count_clusters(values: &[f64], opts: &BandOptions) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.is_empty() {
        return 1;
    }
    let mut ordered = gaps.clone();
    ordered.sort_by(f64::total_cmp);
    let median = ordered[ordered.len() / 2];
    let span = sorted[sorted.len() - 1] - sorted[0];
    let threshold = (opts.gap_factor * median).max(opts.min_span_fraction * span);
    1 + gaps.iter().filter(|&&g| g > threshold).count()
}

/// Representatives of the values after merging neighbours closer than `tol`.
pub fn distinct_values(values: &[f64], tol: f64) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for v in sorted {
        match out.last() {
            Some(&last) if v - last <= tol => {}
            _ => out.push(v),
        }
    }
    out
}

/// Symmetric Hausdorff distance between two finite point sets (max-norm).
pub fn hausdorff(a: &[State], b: &[State]) -> f64 {
    let directed = |from: &[State], to: &[State]| {
        from.iter()
            .map(|p| {
                to.iter()
                    .map(|q| p.distance(q))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    directed(a, b).max(directed(b, a))
}

/// A cobweb line segment in the `(x, f(x))` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
}

/// Cobweb path starting on the axis at `(x0, 0)`: each step adds a
/// vertical segment to the graph and a horizontal one to the diagonal.
pub fn cobweb_data(p: &SkewTentParams, x0: f64, steps: usize) -> Vec<Segment> {
    let mut out = Vec::with_capacity(2 * steps);
    let mut x = x0;
    let mut y = 0.0;
    for _ in 0..steps {
        let fx = p.apply(x);
        out.push(Segment {
            from: (x, y),
            to: (x, fx),
        });
        out.push(Segment {
            from: (x, fx),
            to: (fx, fx),
        });
        x = fx;
        y = fx;
    }
    out
}

/// Samples of the graph of the k-th iterate `f^k` on `[lo, hi]`.
pub fn iterate_graph(
    p: &SkewTentParams,
    k: usize,
    range: (f64, f64),
    samples: usize,
) -> Vec<(f64, f64)> {
    let (lo, hi) = range;
    let count = samples.max(2);
    (0..count)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (count - 1) as f64;
            let y = (0..k).fold(x, |v, _| p.apply(v));
            (x, y)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationRow {
    pub d: f64,
    /// Recorded post-transient x-values (empty on divergence).
    pub xs: Vec<f64>,
    /// Step at which the orbit left the divergence threshold, if it did.
    pub diverged_at: Option<usize>,
}

/// Sweep `d` over `d_range` (inclusive, `d_steps` points) for the scalar
/// skew tent map and record `samples` post-transient x-values per column.
/// Every column starts from `mu_hat / 2`.
pub fn bifurcation_scan(
    a: f64,
    d_range: (f64, f64),
    d_steps: usize,
    mu_hat: f64,
    samples: usize,
) -> Vec<BifurcationRow> {
    bifurcation_scan_with(a, d_range, d_steps, mu_hat, samples, DEFAULT_TRANSIENT)
}

pub fn bifurcation_scan_with(
    a: f64,
    d_range: (f64, f64),
    d_steps: usize,
    mu_hat: f64,
    samples: usize,
    transient: usize,
) -> Vec<BifurcationRow> {
    let (lo, hi) = d_range;
    let columns = if lo == hi { 1 } else { d_steps.max(1) };
    (0..columns)
        .map(|i| {
            let d = if columns == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (columns - 1) as f64
            };
            let map = SkewTentParams { a, d, mu_hat };
            let mut x = mu_hat / 2.0;
            let mut xs = Vec::with_capacity(samples);
            let mut diverged_at = None;
            for k in 0..transient + samples {
                x = map.apply(x);
                if escaped(x) {
                    diverged_at = Some(k + 1);
                    xs.clear();
                    break;
                }
                if k >= transient {
                    xs.push(x);
                }
            }
            BifurcationRow { d, xs, diverged_at }
        })
        .collect()
}
