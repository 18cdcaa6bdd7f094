//! Sampled classification of the `(a, d)` parameter plane.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skew_tent::{
    classify, existence_bound, region_exists, ParamClassification, DEFAULT_CURVE_TOL,
};
use crate::symbolic::MuSign;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub a_min: f64,
    pub a_max: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub a_steps: usize,
    pub d_steps: usize,
    pub n_list: Vec<usize>,
    pub mu_sign: MuSign,
    pub tol: f64,
}

impl GridSpec {
    /// A grid over `[a_min, a_max) x [d_min, d_max)` with the default curve
    /// tolerance and a positive offset.
    pub fn new(
        a: (f64, f64),
        d: (f64, f64),
        steps: (usize, usize),
        n_list: Vec<usize>,
    ) -> GridSpec {
        GridSpec {
            a_min: a.0,
            a_max: a.1,
            d_min: d.0,
            d_max: d.1,
            a_steps: steps.0,
            d_steps: steps.1,
            n_list,
            mu_sign: MuSign::Positive,
            tol: DEFAULT_CURVE_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        for (name, v) in [
            ("a_min", self.a_min),
            ("a_max", self.a_max),
            ("d_min", self.d_min),
            ("d_max", self.d_max),
            ("tol", self.tol),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite { name, value: v });
            }
        }
        if self.a_min >= self.a_max {
            return bad(format!("a range [{}, {}) is empty", self.a_min, self.a_max));
        }
        if self.d_min >= self.d_max {
            return bad(format!("d range [{}, {}) is empty", self.d_min, self.d_max));
        }
        if self.a_steps < 2 || self.d_steps < 2 {
            return bad(format!(
                "grid needs at least 2 steps per axis, got {}x{}",
                self.a_steps, self.d_steps
            ));
        }
        if self.n_list.is_empty() {
            return bad("n_list is empty".into());
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidCycleLength { n, min: 2 });
        }
        if self.tol < 0.0 {
            return bad(format!("negative tolerance {}", self.tol));
        }
        Ok(())
    }

    /// Cell centres along `a`.
    pub fn a_values(&self) -> Vec<f64> {
        centres(self.a_min, self.a_max, self.a_steps)
    }

    /// Cell centres along `d`.
    pub fn d_values(&self) -> Vec<f64> {
        centres(self.d_min, self.d_max, self.d_steps)
    }
}

fn centres(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let width = (hi - lo) / steps as f64;
    (0..steps).map(|i| lo + (i as f64 + 0.5) * width).collect()
}

/// Classifications for one cycle length, indexed `[ia * d_steps + id]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionLayer {
    pub n: usize,
    pub cells: Vec<ParamClassification>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub spec: GridSpec,
    pub a_values: Vec<f64>,
    pub d_values: Vec<f64>,
    pub layers: Vec<RegionLayer>,
}

impl RegionGrid {
    pub fn cell(&self, layer: usize, ia: usize, id: usize) -> &ParamClassification {
        &self.layers[layer].cells[ia * self.d_values.len() + id]
    }

    pub fn cell_count(&self) -> usize {
        self.layers.iter().map(|l| l.cells.len()).sum()
    }

    /// Every cell as `(a, d, classification)`, layer by layer, `a` outermost.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &ParamClassification)> + '_ {
        self.layers.iter().flat_map(move |layer| {
            layer.cells.iter().enumerate().map(move |(k, c)| {
                let nd = self.d_values.len();
                (self.a_values[k / nd], self.d_values[k % nd], c)
            })
        })
    }
}

/// Classify every cell centre of the grid for every cycle length.
pub fn scan(spec: &GridSpec) -> Result<RegionGrid> {
    spec.validate()?;
    let a_values = spec.a_values();
    let d_values = spec.d_values();
    let layers = spec
        .n_list
        .iter()
        .map(|&n| RegionLayer {
            n,
            cells: a_values
                .iter()
                .flat_map(|&a| {
                    d_values
                        .iter()
                        .map(move |&d| classify(a, d, n, spec.mu_sign, spec.tol))
                })
                .collect(),
        })
        .collect();
    Ok(RegionGrid {
        spec: spec.clone(),
        a_values,
        d_values,
        layers,
    })
}

/// `count` evenly spaced points of the border-collision curve of
/// `R L^(n-1)` for slopes `a` in `a_range` (inclusive).
///
/// For a negative offset the curve is mirrored, so the returned pairs are
/// `(bound, a)`: the range then runs along the second coordinate.
pub fn curve_samples(
    n: usize,
    a_range: (f64, f64),
    count: usize,
    mu_sign: MuSign,
) -> Vec<(f64, f64)> {
    let (lo, hi) = a_range;
    let count = count.max(1);
    (0..count)
        .map(|i| {
            let a = if count == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            };
            let d = existence_bound(a, n);
            match mu_sign {
                MuSign::Positive => (a, d),
                MuSign::Negative => (d, a),
            }
        })
        .collect()
}

/// A cell where the longer cycle exists but the shorter one does not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NestingViolation {
    pub a: f64,
    pub d: f64,
    pub n_shorter: usize,
    pub n_longer: usize,
}

/// Check on every cell that existence for each length in `n_list` implies
/// existence for the preceding length.
pub fn nesting_report(spec: &GridSpec) -> Result<Vec<NestingViolation>> {
    spec.validate()?;
    if spec.n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "n_list must be strictly ascending, got {:?}",
            spec.n_list
        )));
    }
    let d_values = spec.d_values();
    let mut out = Vec::new();
    for a in spec.a_values() {
        for &d in &d_values {
            for w in spec.n_list.windows(2) {
                if region_exists(a, d, w[1], spec.mu_sign)
                    && !region_exists(a, d, w[0], spec.mu_sign)
                {
                    out.push(NestingViolation {
                        a,
                        d,
                        n_shorter: w[0],
                        n_longer: w[1],
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew_tent::{on_bifurcation_curve, Verdict};

    fn nearest(grid: &RegionGrid, a: f64, d: f64) -> &ParamClassification {
        let pick = |vals: &[f64], v: f64| {
            (0..vals.len())
                .min_by(|&i, &j| (vals[i] - v).abs().total_cmp(&(vals[j] - v).abs()))
                .unwrap()
        };
        grid.cell(0, pick(&grid.a_values, a), pick(&grid.d_values, d))
    }

    #[test]
    fn scan_examples() {
        let grid = scan(&GridSpec::new((0.37, 0.43), (-7.0, -3.0), (3, 4), vec![3])).unwrap();
        assert_eq!(grid.cell_count(), 12);
        assert!((grid.a_values[1] - 0.4).abs() < 1e-12);
        assert_eq!(grid.d_values, vec![-6.5, -5.5, -4.5, -3.5]);
        assert_eq!(nearest(&grid, 0.4, -4.5).verdict, Verdict::ExistsStable);
        assert_eq!(nearest(&grid, 0.4, -6.5).verdict, Verdict::NBandChaos);
        assert_eq!(
            nearest(&grid, 0.4, -3.5).verdict,
            Verdict::OnBifurcationCurve
        );

        let upper = scan(&GridSpec::new((0.1, 2.0), (0.5, 3.0), (2, 2), vec![3, 4])).unwrap();
        assert!(upper
            .iter()
            .all(|(_, _, c)| c.verdict == Verdict::OutsideRegion));
    }

    #[test]
    fn scan_is_deterministic() {
        let spec = GridSpec::new((0.01, 3.0), (-40.0, -0.01), (17, 23), vec![3, 5]);
        assert_eq!(scan(&spec).unwrap(), scan(&spec).unwrap());
    }

    #[test]
    fn invalid_specs() {
        let mut spec = GridSpec::new((0.0, 1.0), (-1.0, 0.0), (1, 4), vec![3]);
        assert!(scan(&spec).is_err());
        spec.a_steps = 4;
        spec.a_max = 0.0;
        assert!(scan(&spec).is_err());
        spec.a_max = 1.0;
        spec.n_list = vec![1];
        assert!(matches!(scan(&spec), Err(Error::InvalidCycleLength { .. })));
        spec.n_list = vec![4, 3];
        assert!(nesting_report(&spec).is_err());
    }

    #[test]
    fn curve_points() {
        let pts = curve_samples(3, (0.4, 0.4), 1, MuSign::Positive);
        assert!((pts[0].1 + 3.5).abs() < 1e-12);
        assert!((curve_samples(4, (2.0, 2.0), 1, MuSign::Positive)[0].1 + 1.75).abs() < 1e-12);
        assert!((curve_samples(3, (1.0, 1.0), 1, MuSign::Positive)[0].1 + 2.0).abs() < 1e-12);

        for sign in [MuSign::Positive, MuSign::Negative] {
            for (a, d) in curve_samples(5, (0.05, 2.5), 40, sign) {
                assert!(on_bifurcation_curve(a, d, 5, sign, 1e-12));
                let (pa, pd) = sign.oriented(a, d);
                let (below, above) = match sign {
                    MuSign::Positive => ((pa, pd - 1e-3), (pa, pd + 1e-3)),
                    MuSign::Negative => ((pd - 1e-3, pa), (pd + 1e-3, pa)),
                };
                assert!(region_exists(below.0, below.1, 5, sign));
                assert!(!region_exists(above.0, above.1, 5, sign));
            }
        }
    }

    #[test]
    fn nesting_examples() {
        let wide = GridSpec::new((0.0, 3.0), (-40.0, 0.0), (60, 80), (3..=9).collect());
        assert!(nesting_report(&wide).unwrap().is_empty());

        let single = |a: f64, d: f64, n_list: Vec<usize>| {
            let spec = GridSpec::new((a - 1e-6, a + 1e-6), (d - 1e-6, d + 1e-6), (2, 2), n_list);
            nesting_report(&spec).unwrap()
        };
        // the 6-cycle bound at a = 0.4 is about -64.4, so only n = 3 exists here
        assert!(region_exists(0.4, -31.0, 3, MuSign::Positive));
        assert!(!region_exists(0.4, -31.0, 6, MuSign::Positive));
        assert!(single(0.4, -31.0, vec![3, 6]).is_empty());
        assert!(!region_exists(0.4, -3.4, 3, MuSign::Positive));
        assert!(!region_exists(0.4, -3.4, 4, MuSign::Positive));
        assert!(single(0.4, -3.4, vec![3, 4]).is_empty());
    }
}
