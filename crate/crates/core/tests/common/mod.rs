#![allow(dead_code)]

use pwl_cycles::linalg::spectral_radius;
use pwl_cycles::sim::{self, DetectedCycle};
use pwl_cycles::{CanonicalSystem, CycleSolution, State};

/// Greatest distance between the two multisets after greedy matching.
pub fn multiset_distance(a: &[num_complex::Complex64], b: &[num_complex::Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut unused: Vec<_> = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, dist) = unused
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        worst = worst.max(dist);
        unused.swap_remove(k);
    }
    worst
}

/// Iterate from the default seed for long enough that the contraction rate
/// of the stable cycle `sol` brings the orbit to round-off, then detect a
/// cycle on the tail.
pub fn simulate_to_cycle(
    sys: &CanonicalSystem,
    sol: &CycleSolution,
    max_period: usize,
) -> Option<DetectedCycle> {
    let n = sol.n();
    let rate = sol
        .spectral_radius()
        .max(spectral_radius(&sys.block).powi(n as i32));
    let periods = if rate <= 0.0 {
        10.0
    } else {
        (1e-14f64).ln() / rate.ln()
    };
    let transient = 1_000 + n * periods.ceil() as usize;
    let orbit = sim::trajectory(
        sys,
        sys.default_seed(),
        transient + 4 * max_period,
        transient,
    )
    .ok()?;
    sim::detect_cycle(&orbit, max_period, 1e-9)
}

pub fn state_set_distance(a: &[State], b: &[State]) -> f64 {
    sim::hausdorff(a, b)
}
