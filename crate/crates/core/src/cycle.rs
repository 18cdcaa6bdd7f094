//! Closed-form cycles of the canonical system.
//!
//! The basic cycle `R L^(n-1)` is built in two stages: the x-components come
//! from the skew tent map alone, then `Y_1` solves
//!
//! ```text
//! (I - A^n) Y_1 = x_n b + x_(n-1) A b + ... + x_2 A^(n-2) b + x_1 A^(n-1) e
//!                 + (A^(n-1) + ... + A + I) h_Y
//! ```
//!
//! and `Y_2 .. Y_n` follow by forward iteration. Arbitrary words over
//! `{R, L, 0}` use the same triangular structure: each x-component is the
//! fixed point of a scalar composition, then `Y_1` solves against `A^n`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{closest_to_one, eigenvalues, first_off_diagonal, geometric_sum, matrix_power};
use crate::skew_tent::{cycle_x_components_with, XCycle};
use crate::symbolic::{Itinerary, Symbol};
use crate::system::{CanonicalSystem, State};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct CycleSolution {
    /// Cycle points, starting at the point the first letter of `branches` acts on.
    pub points: Vec<State>,
    /// Letters observed from the signs of the x-components.
    pub sequence: Itinerary,
    /// Branch word the cycle was solved for.
    pub branches: Itinerary,
    /// Eigenvalues of the linear part of the n-fold composition.
    pub multipliers: Vec<Complex64>,
    pub stable: bool,
    /// Largest closure error over one period.
    pub residual: f64,
    /// Whether every point lies on the side of the boundary its branch requires.
    pub admissible: bool,
}

impl CycleSolution {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.x).collect()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.multipliers
            .iter()
            .map(|l| l.norm())
            .fold(0.0, f64::max)
    }
}

fn check_not_one(eigs: &[Complex64], power: usize, tol: &Tolerances) -> Result<()> {
    match closest_to_one(eigs) {
        Some((lambda, dist)) if dist <= tol.eig_tol => Err(Error::EigenvalueOne {
            re: lambda.re,
            im: lambda.im,
            power,
            tol: tol.eig_tol,
        }),
        _ => Ok(()),
    }
}

fn is_stable(multipliers: &[Complex64]) -> bool {
    multipliers.iter().all(|l| l.norm() < 1.0)
}

/// Residual of `points` as a cycle of the branch word, and the check
/// against the verification tolerance.
fn closure(
    sys: &CanonicalSystem,
    points: &[State],
    branches: &Itinerary,
    tol: &Tolerances,
) -> Result<f64> {
    let n = points.len();
    let residual = (0..n)
        .map(|i| {
            sys.step_branch(branches.0[i], &points[i])
                .distance(&points[(i + 1) % n])
        })
        .fold(0.0, f64::max);
    let magnitude = points.iter().map(State::max_abs).fold(0.0, f64::max);
    let limit = tol.verify_tol(sys.mu_hat, magnitude);
    if residual.is_finite() && residual <= limit {
        Ok(residual)
    } else {
        Err(Error::ClosureFailure {
            residual,
            tol: limit,
        })
    }
}

fn forward(
    sys: &CanonicalSystem,
    xs: &[f64],
    branches: &Itinerary,
    y1: DVector<f64>,
) -> Vec<State> {
    let mut points = Vec::with_capacity(xs.len());
    let mut y = y1;
    for (i, &x) in xs.iter().enumerate() {
        let current = State::new(x, y);
        if i + 1 < xs.len() {
            y = sys.step_branch(branches.0[i], &current).y;
        } else {
            y = DVector::zeros(0);
        }
        points.push(current);
    }
    points
}

/// The basic cycle `R L^(n-1)` via the closed form.
pub fn solve_cycle(sys: &CanonicalSystem, n: usize) -> Result<CycleSolution> {
    solve_cycle_with(sys, n, &Tolerances::default())
}

pub fn solve_cycle_with(
    sys: &CanonicalSystem,
    n: usize,
    tol: &Tolerances,
) -> Result<CycleSolution> {
    let block = &sys.block;
    let m = sys.block_dim();
    check_not_one(&eigenvalues(block), 1, tol)?;

    let xc = cycle_x_components_with(&sys.skew_tent(), n, tol)?;
    let xs = &xc.xs;

    // powers[j] = A^j, j < n
    let mut powers = Vec::with_capacity(n);
    powers.push(DMatrix::identity(m, m));
    for j in 1..n {
        let next = &powers[j - 1] * block;
        powers.push(next);
    }
    let block_n = &powers[n - 1] * block;
    let eig_n = eigenvalues(&block_n);
    check_not_one(&eig_n, n, tol)?;

    let mut rhs = DVector::zeros(m);
    for k in 2..=n {
        rhs += &powers[n - k] * &sys.b * xs[k - 1];
    }
    rhs += &powers[n - 1] * &sys.e * xs[0];
    for power in &powers {
        rhs += power * &sys.h_y;
    }

    let y1 = if m == 0 {
        rhs
    } else {
        let lhs = DMatrix::identity(m, m) - &block_n;
        lhs.lu().solve(&rhs).ok_or(Error::EigenvalueOne {
            re: 1.0,
            im: 0.0,
            power: n,
            tol: tol.eig_tol,
        })?
    };

    let branches = Itinerary::basic(n);
    let points = forward(sys, xs, &branches, y1);
    let residual = closure(sys, &points, &branches, tol)?;

    let mut multipliers = Vec::with_capacity(m + 1);
    multipliers.push(Complex64::new(sys.a.powi(n as i32 - 1) * sys.d, 0.0));
    multipliers.extend(eig_n);

    Ok(CycleSolution {
        points,
        sequence: xc.sequence,
        branches,
        stable: is_stable(&multipliers),
        multipliers,
        residual,
        admissible: true,
    })
}

/// `Y_1 .. Y_n` of the basic cycle when the block is diagonal, componentwise
/// with scalar geometric sums instead of a matrix solve.
pub fn y_components_diagonal(sys: &CanonicalSystem, xc: &XCycle) -> Result<Vec<DVector<f64>>> {
    y_components_diagonal_with(sys, xc, &Tolerances::default())
}

pub fn y_components_diagonal_with(
    sys: &CanonicalSystem,
    xc: &XCycle,
    tol: &Tolerances,
) -> Result<Vec<DVector<f64>>> {
    if let Some((row, col, value)) = first_off_diagonal(&sys.block) {
        return Err(Error::NotDiagonal { row, col, value });
    }
    let n = xc.n();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let xs = &xc.xs;
    let m = sys.block_dim();
    let mut y1 = DVector::zeros(m);
    for i in 0..m {
        let ai = sys.block[(i, i)];
        if (ai - 1.0).abs() <= tol.eig_tol {
            return Err(Error::EigenvalueOne {
                re: ai,
                im: 0.0,
                power: 1,
                tol: tol.eig_tol,
            });
        }
        let denom = 1.0 - ai.powi(n as i32);
        if denom.abs() <= tol.eig_tol {
            return Err(Error::EigenvalueOne {
                re: ai,
                im: 0.0,
                power: n,
                tol: tol.eig_tol,
            });
        }
        // x_n + x_(n-1) a + ... + x_2 a^(n-2)
        let left: f64 = (2..=n).map(|k| xs[k - 1] * ai.powi((n - k) as i32)).sum();
        let num = left * sys.b[i]
            + xs[0] * ai.powi(n as i32 - 1) * sys.e[i]
            + geometric_sum(ai, n) * sys.h_y[i];
        y1[i] = num / denom;
    }
    Ok(forward(sys, xs, &xc.sequence, y1)
        .into_iter()
        .map(|s| s.y)
        .collect())
}

/// Linear part and offset of the composition `F_(w_n) o ... o F_(w_1)`.
pub fn composed_map(sys: &CanonicalSystem, word: &Itinerary) -> (DMatrix<f64>, DVector<f64>) {
    let dim = sys.state_dim();
    let offset = sys.offset();
    let mut lin = DMatrix::identity(dim, dim);
    let mut c = DVector::zeros(dim);
    for &letter in word.symbols() {
        let branch = sys.branch_matrix(letter);
        c = &branch * c + &offset;
        lin = branch * lin;
    }
    (lin, c)
}

/// Eigenvalues of the linear part of the composition along `word`.
pub fn multipliers(sys: &CanonicalSystem, word: &Itinerary) -> Vec<Complex64> {
    let (lin, _) = composed_map(sys, word);
    eigenvalues(&lin)
}

/// Multipliers of `R L^(n-1)` from the block-triangular structure:
/// `{a^(n-1) d} ∪ eig(A^n)`.
pub fn basic_multipliers(sys: &CanonicalSystem, n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(sys.a.powi(n as i32 - 1) * sys.d, 0.0)];
    out.extend(eigenvalues(&matrix_power(&sys.block, n)));
    out
}

fn letter_admissible(requested: Symbol, observed: Symbol) -> bool {
    match requested {
        Symbol::R => matches!(observed, Symbol::R | Symbol::Zero),
        Symbol::L => matches!(observed, Symbol::L | Symbol::Zero),
        Symbol::Zero => observed == Symbol::Zero,
    }
}

/// Fixed point of the composition along an arbitrary word.
///
/// Inadmissible solutions (a point on the wrong side of the boundary for
/// its letter) are returned with `admissible == false`.
pub fn solve_symbolic_cycle(sys: &CanonicalSystem, word: &Itinerary) -> Result<CycleSolution> {
    solve_symbolic_cycle_with(sys, word, &Tolerances::default())
}

pub fn solve_symbolic_cycle_with(
    sys: &CanonicalSystem,
    word: &Itinerary,
    tol: &Tolerances,
) -> Result<CycleSolution> {
    if word.is_empty() {
        return Err(Error::EmptySequence);
    }
    let n = word.len();
    let m = sys.block_dim();
    let slope = |letter: Symbol| match letter {
        Symbol::R => sys.d,
        Symbol::L | Symbol::Zero => sys.a,
    };
    let product: f64 = word.symbols().iter().map(|&l| slope(l)).product();
    let block_n = matrix_power(&sys.block, n);
    let mut mults = vec![Complex64::new(product, 0.0)];
    mults.extend(eigenvalues(&block_n));
    check_not_one(&mults, n, tol)?;

    // x does not feed back from Y, so each x_i is the fixed point of the
    // scalar composition started at letter i.
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            let c = (0..n).fold(0.0, |c, k| slope(word.0[(i + k) % n]) * c + sys.mu_hat);
            c / (1.0 - product)
        })
        .collect();

    let mut rhs = DVector::zeros(m);
    for (k, &x) in xs.iter().enumerate() {
        let coupling = match word.0[k] {
            Symbol::R => &sys.e,
            Symbol::L | Symbol::Zero => &sys.b,
        };
        rhs = &sys.block * rhs;
        rhs.axpy(x, coupling, 1.0);
        rhs += &sys.h_y;
    }
    let y1 = if m == 0 {
        rhs
    } else {
        (DMatrix::identity(m, m) - &block_n)
            .lu()
            .solve(&rhs)
            .ok_or(Error::EigenvalueOne {
                re: 1.0,
                im: 0.0,
                power: n,
                tol: tol.eig_tol,
            })?
    };
    let points = forward(sys, &xs, word, y1);
    let residual = closure(sys, &points, word, tol)?;

    let zero_tol = tol.zero_tol(sys.mu_hat);
    let sequence = Itinerary(
        points
            .iter()
            .map(|p| Symbol::classify(p.x, zero_tol))
            .collect(),
    );
    let admissible = word
        .symbols()
        .iter()
        .zip(sequence.symbols())
        .all(|(&r, &o)| letter_admissible(r, o));

    Ok(CycleSolution {
        points,
        sequence,
        branches: word.clone(),
        stable: is_stable(&mults),
        multipliers: mults,
        residual,
        admissible,
    })
}
