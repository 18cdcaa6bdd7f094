/// Numerical tolerances shared by the cycle constructions.
///
/// `zero_rel` and `verify_rel` are relative to `max(1, |mu_hat|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Band around `x = 0` labelled with the boundary symbol `0`.
    pub zero_rel: f64,
    /// Allowed closure error of a computed cycle.
    pub verify_rel: f64,
    /// Minimum distance of a linear-part eigenvalue from 1.
    pub eig_tol: f64,
    /// Minimum `|1 - a^(n-1) d|` for the closed-form x-components.
    pub singular_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero_rel: 1e-9,
            verify_rel: 1e-8,
            eig_tol: 1e-9,
            singular_tol: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn zero_tol(&self, mu_hat: f64) -> f64 {
        self.zero_rel * mu_hat.abs().max(1.0)
    }

    /// Closure tolerance; `magnitude` is the largest coordinate of the cycle,
    /// so that cycles with large Y components are not rejected for round-off.
    pub fn verify_tol(&self, mu_hat: f64, magnitude: f64) -> f64 {
        self.verify_rel * mu_hat.abs().max(1.0).max(magnitude)
    }
}
