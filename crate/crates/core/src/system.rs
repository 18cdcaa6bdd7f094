//! The partitioned piecewise-linear system
//!
//! ```text
//! x' = a x + mu_hat,        Y' = b x + A Y + h_Y    (x <= 0)
//! x' = d x + mu_hat,        Y' = e x + A Y + h_Y    (x >= 0)
//! ```
//!
//! i.e. a skew tent map in `x` driving an `m`-dimensional affine block.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::skew_tent::SkewTentParams;
use crate::symbolic::Symbol;

/// A state `(x, Y)` of the canonical system.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub x: f64,
    pub y: DVector<f64>,
}

impl State {
    pub fn new(x: f64, y: DVector<f64>) -> State {
        State { x, y }
    }

    pub fn from_slice(z: &[f64]) -> State {
        assert!(
            !z.is_empty(),
            "state needs at least the switching coordinate"
        );
        State {
            x: z[0],
            y: DVector::from_column_slice(&z[1..]),
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        std::iter::once(self.x)
            .chain(self.y.iter().copied())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.y.len() + 1
    }

    /// Max-norm distance to another state of the same dimension.
    pub fn distance(&self, other: &State) -> f64 {
        let dy = self
            .y
            .iter()
            .zip(other.y.iter())
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max);
        (self.x - other.x).abs().max(dy)
    }

    pub fn max_abs(&self) -> f64 {
        self.y.iter().fold(self.x.abs(), |acc, v| acc.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalSystem {
    pub a: f64,
    pub d: f64,
    /// Coupling of `x` into the block on the left branch.
    pub b: DVector<f64>,
    /// Coupling of `x` into the block on the right branch.
    pub e: DVector<f64>,
    pub block: DMatrix<f64>,
    pub h_y: DVector<f64>,
    pub mu_hat: f64,
}

impl CanonicalSystem {
    pub fn new(
        a: f64,
        d: f64,
        b: DVector<f64>,
        e: DVector<f64>,
        block: DMatrix<f64>,
        h_y: DVector<f64>,
        mu_hat: f64,
    ) -> Result<Self> {
        let m = block.nrows();
        if block.ncols() != m {
            return Err(Error::DimensionMismatch {
                field: "block columns",
                expected: m,
                actual: block.ncols(),
            });
        }
        for (field, v) in [("b", &b), ("e", &e), ("h_y", &h_y)] {
            if v.len() != m {
                return Err(Error::DimensionMismatch {
                    field,
                    expected: m,
                    actual: v.len(),
                });
            }
        }
        for (name, value) in [("a", a), ("d", d), ("mu_hat", mu_hat)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        for (name, values) in [
            ("b", b.as_slice()),
            ("e", e.as_slice()),
            ("block", block.as_slice()),
            ("h_y", h_y.as_slice()),
        ] {
            if let Some(&value) = values.iter().find(|v| !v.is_finite()) {
                return Err(Error::NonFinite { name, value });
            }
        }
        Ok(CanonicalSystem {
            a,
            d,
            b,
            e,
            block,
            h_y,
            mu_hat,
        })
    }

    /// The pure skew tent map (empty block).
    pub fn scalar(a: f64, d: f64, mu_hat: f64) -> Result<Self> {
        Self::new(
            a,
            d,
            DVector::zeros(0),
            DVector::zeros(0),
            DMatrix::zeros(0, 0),
            DVector::zeros(0),
            mu_hat,
        )
    }

    /// Copy with a diagonal block `diag(block_diag)`.
    #[allow(clippy::too_many_arguments)]
    pub fn with_diagonal_block(
        a: f64,
        d: f64,
        b: &[f64],
        e: &[f64],
        block_diag: &[f64],
        h_y: &[f64],
        mu_hat: f64,
    ) -> Result<Self> {
        Self::new(
            a,
            d,
            DVector::from_column_slice(b),
            DVector::from_column_slice(e),
            DMatrix::from_diagonal(&DVector::from_column_slice(block_diag)),
            DVector::from_column_slice(h_y),
            mu_hat,
        )
    }

    /// Dimension `m` of the block.
    pub fn block_dim(&self) -> usize {
        self.block.nrows()
    }

    pub fn state_dim(&self) -> usize {
        self.block_dim() + 1
    }

    pub fn skew_tent(&self) -> SkewTentParams {
        SkewTentParams {
            a: self.a,
            d: self.d,
            mu_hat: self.mu_hat,
        }
    }

    /// Default simulation seed `(mu_hat / 2, 0, ..., 0)`.
    pub fn default_seed(&self) -> State {
        State::new(self.mu_hat / 2.0, DVector::zeros(self.block_dim()))
    }

    /// One iterate of the map; the branch is picked from the sign of `x`.
    pub fn step(&self, z: &State) -> State {
        let branch = if z.x <= 0.0 { Symbol::L } else { Symbol::R };
        self.step_branch(branch, z)
    }

    /// Apply the affine branch named by `branch` (`0` uses the left branch,
    /// which agrees with the right one on `x = 0`).
    pub fn step_branch(&self, branch: Symbol, z: &State) -> State {
        let (slope, coupling) = match branch {
            Symbol::R => (self.d, &self.e),
            Symbol::L | Symbol::Zero => (self.a, &self.b),
        };
        let mut y = &self.block * &z.y;
        y.axpy(z.x, coupling, 1.0);
        y += &self.h_y;
        State::new(slope * z.x + self.mu_hat, y)
    }

    /// Linear part of the branch named by `branch` as an `(m+1)x(m+1)` matrix.
    pub fn branch_matrix(&self, branch: Symbol) -> DMatrix<f64> {
        let m = self.block_dim();
        let (slope, coupling) = match branch {
            Symbol::R => (self.d, &self.e),
            Symbol::L | Symbol::Zero => (self.a, &self.b),
        };
        let mut out = DMatrix::zeros(m + 1, m + 1);
        out[(0, 0)] = slope;
        out.view_mut((1, 0), (m, 1)).copy_from(coupling);
        out.view_mut((1, 1), (m, m)).copy_from(&self.block);
        out
    }

    /// Offset `(mu_hat, h_Y)` shared by both branches.
    pub fn offset(&self) -> DVector<f64> {
        let mut out = DVector::zeros(self.state_dim());
        out[0] = self.mu_hat;
        out.rows_mut(1, self.block_dim()).copy_from(&self.h_y);
        out
    }

    /// The system seen through `x -> -x`: slopes and couplings swap sides,
    /// couplings change sign and the offset flips.
    ///
    /// If `(x_i, Y_i)` is a cycle of `self` with word `w`, then `(-x_i, Y_i)`
    /// is a cycle of the conjugate with the mirrored word.
    pub fn conjugate(&self) -> CanonicalSystem {
        CanonicalSystem {
            a: self.d,
            d: self.a,
            b: -&self.e,
            e: -&self.b,
            block: self.block.clone(),
            h_y: self.h_y.clone(),
            mu_hat: -self.mu_hat,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_one() -> CanonicalSystem {
        CanonicalSystem::with_diagonal_block(
            0.4,
            -4.0,
            &[1.0, 0.5, 0.6],
            &[0.5, 1.0, 1.0],
            &[0.4, 0.5, 0.6],
            &[1.0, 0.0, 1.0],
            0.8,
        )
        .unwrap()
    }

    #[test]
    fn step_reproduces_listed_point() {
        let sys = example_one();
        let z = State::from_slice(&[0.7610, 0.6685, -0.4794, 1.7444]);
        let next = sys.step(&z).to_vec();
        let expected = [-2.2439, 1.6479, 0.5213, 2.8076];
        for (x, y) in next.iter().zip(expected) {
            assert!((x - y).abs() < 2e-4, "{next:?}");
        }
    }

    #[test]
    fn decoupled_block_stays_at_zero() {
        let sys = CanonicalSystem::with_diagonal_block(
            0.4,
            -4.0,
            &[0.0, 0.0],
            &[0.0, 0.0],
            &[0.3, -0.2],
            &[0.0, 0.0],
            0.8,
        )
        .unwrap();
        for x in [-3.0, 0.0, 2.5] {
            let next = sys.step(&State::new(x, DVector::zeros(2)));
            assert_eq!(next.y, DVector::zeros(2));
        }
    }

    #[test]
    fn continuous_on_boundary() {
        let sys = example_one();
        let z = State::from_slice(&[0.0, 1.0, -2.0, 3.0]);
        let left = sys.step_branch(Symbol::L, &z);
        let right = sys.step_branch(Symbol::R, &z);
        assert_eq!(left, right);
        assert_eq!(left.x, sys.mu_hat);
    }

    #[test]
    fn branch_matrix_matches_step() {
        let sys = example_one();
        let z = State::from_slice(&[1.3, -0.2, 0.7, 0.1]);
        for branch in [Symbol::L, Symbol::R] {
            let lin = sys.branch_matrix(branch) * DVector::from_vec(z.to_vec()) + sys.offset();
            let direct = sys.step_branch(branch, &z).to_vec();
            for (u, v) in lin.iter().zip(&direct) {
                assert!((u - v).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn dimension_checks() {
        let err = CanonicalSystem::new(
            0.4,
            -4.0,
            DVector::zeros(2),
            DVector::zeros(3),
            DMatrix::zeros(3, 3),
            DVector::zeros(3),
            1.0,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                field: "b",
                expected: 3,
                actual: 2
            }
        );
        assert!(CanonicalSystem::scalar(0.4, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn conjugate_intertwines_steps() {
        let sys = example_one();
        let conj = sys.conjugate();
        for z in [
            State::from_slice(&[0.7, 0.1, 0.2, 0.3]),
            State::from_slice(&[-1.7, -0.1, 0.2, 3.0]),
        ] {
            let flipped = State::new(-z.x, z.y.clone());
            let lhs = conj.step(&flipped);
            let rhs = sys.step(&z);
            assert!((lhs.x + rhs.x).abs() < 1e-14);
            assert!((&lhs.y - &rhs.y).amax() < 1e-14);
        }
        assert_eq!(conj.conjugate(), sys);
    }
}
