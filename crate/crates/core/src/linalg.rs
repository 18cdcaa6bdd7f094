//! Small dense helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// `sum_{j<k} a^j`, i.e. `(1 - a^k) / (1 - a)` without the removable
/// singularity at `a = 1`.
pub fn geometric_sum(a: f64, k: usize) -> f64 {
    let mut acc = 0.0;
    let mut term = 1.0;
    for _ in 0..k {
        acc += term;
        term *= a;
    }
    acc
}

/// `m^k` by repeated multiplication.
pub fn matrix_power(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let mut out = DMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// Eigenvalues of a square matrix. Empty for a 0x0 matrix.
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    m.complex_eigenvalues().iter().copied().collect()
}

pub fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    eigenvalues(m).iter().map(|l| l.norm()).fold(0.0, f64::max)
}

/// The eigenvalue closest to 1 and its distance, if any.
pub fn closest_to_one(eigs: &[Complex64]) -> Option<(Complex64, f64)> {
    eigs.iter()
        .map(|&l| (l, (l - Complex64::new(1.0, 0.0)).norm()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
}

/// Whether every off-diagonal entry is exactly zero; returns the first
/// offending entry otherwise.
pub fn first_off_diagonal(m: &DMatrix<f64>) -> Option<(usize, usize, f64)> {
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            if r != c && m[(r, c)] != 0.0 {
                return Some((r, c, m[(r, c)]));
            }
        }
    }
    None
}
