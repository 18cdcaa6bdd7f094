//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pwl_cycles::atlas::{nesting_report, GridSpec};
use pwl_cycles::cycle::{solve_cycle, solve_symbolic_cycle};
use pwl_cycles::plrnn::{localize, region_of, PlrnnSystem, RegionIndex};
use pwl_cycles::sim::{
    band_count, detect_cycle, trajectory, BandOptions, DEFAULT_BAND_STEPS, DEFAULT_TRANSIENT,
};
use pwl_cycles::skew_tent::{
    chaotic_band_region, classify, on_bifurcation_curve, region_stable, BandRegion,
};
use pwl_cycles::{CanonicalSystem, Itinerary, MuSign, State, Verdict};

use common::{simulate_to_cycle, state_set_distance};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn example_one(d: f64) -> CanonicalSystem {
    CanonicalSystem::with_diagonal_block(
        0.4,
        d,
        &[1.0, 0.5, 0.6],
        &[0.5, 1.0, 1.0],
        &[0.4, 0.5, 0.6],
        &[1.0, 0.0, 1.0],
        0.8,
    )
    .unwrap()
}

fn max_point_error(points: &[State], expected: &[[f64; 4]]) -> f64 {
    points
        .iter()
        .zip(expected)
        .flat_map(|(p, e)| {
            p.to_vec()
                .into_iter()
                .zip(e.iter())
                .map(|(u, v)| (u - v).abs())
        })
        .fold(0.0, f64::max)
}

fn sorted(mut xs: Vec<f64>) -> Vec<f64> {
    xs.sort_by(f64::total_cmp);
    xs
}

fn max_set_error(got: &[f64], expected: &[f64]) -> f64 {
    let (g, e) = (sorted(got.to_vec()), sorted(expected.to_vec()));
    g.iter()
        .zip(&e)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}

fn example_one_cycle() -> Check {
    let expected = [
        [0.7610, 0.6685, -0.4794, 1.7444],
        [-2.2439, 1.6479, 0.5213, 2.8076],
        [-0.0976, -0.5847, -0.8613, 1.3382],
    ];
    let sys = example_one(-4.0);
    let start = Instant::now();
    let sol = solve_cycle(&sys, 3).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let err = max_point_error(&sol.points, &expected);
    ensure(sol.n() == 3, || format!("got {} points", sol.n()))?;
    ensure(err <= 1e-3, || {
        format!("max coordinate error {err:.2e} > 1e-3")
    })?;
    within_time(elapsed, Duration::from_millis(1))?;
    Ok(format!("max coordinate error {err:.1e}, {elapsed:?}"))
}

fn border_collision() -> Check {
    let expected = [
        [0.8, 0.8803, -0.3429, 1.9490],
        [-2.0, 1.7521, 0.6286, 2.9694],
        [0.0, -0.2991, -0.6857, 1.5816],
    ];
    let sol = solve_cycle(&example_one(-3.5), 3).map_err(|e| e.to_string())?;
    let (x1, x3) = (sol.points[0].x, sol.points[2].x);
    ensure((x1 - 0.8).abs() <= 1e-12 && x3.abs() <= 1e-12, || {
        format!("x1 = {x1:e}, x3 = {x3:e}")
    })?;
    let err = max_point_error(&sol.points, &expected);
    ensure(err <= 1e-3, || {
        format!("max coordinate error {err:.2e} > 1e-3")
    })?;
    ensure(sol.sequence.to_string() == "RL0", || {
        format!("sequence {}", sol.sequence)
    })?;
    for mu in [0.1, 0.8, 10.0] {
        ensure(
            on_bifurcation_curve(0.4, -3.5, 3, MuSign::Positive, 1e-9),
            || "not on curve".into(),
        )?;
        let sys = CanonicalSystem::scalar(0.4, -3.5, mu).unwrap();
        let sol = solve_cycle(&sys, 3).map_err(|e| e.to_string())?;
        let (x1, x3) = (sol.points[0].x, sol.points[2].x);
        ensure(
            (x1 - mu).abs() <= 1e-12 * mu.max(1.0) && x3.abs() <= 1e-12 * mu.max(1.0),
            || format!("mu = {mu}: x1 = {x1:e}, x3 = {x3:e}"),
        )?;
    }
    Ok(format!(
        "x1 - mu = {:.1e}, x3 = {:.1e}, max coordinate error {err:.1e}",
        x1 - 0.8,
        x3
    ))
}

fn period_three_pair() -> Check {
    let sys = CanonicalSystem::scalar(0.16, -7.29, 2.0).unwrap();
    let direct = solve_cycle(&sys, 3).map_err(|e| e.to_string())?;
    let err = max_set_error(&direct.xs(), &[1.9982, -12.5674, -0.0107]);
    ensure(err <= 1e-3, || format!("RLL x-points {:?}", direct.xs()))?;
    let verdict = classify(0.16, -7.29, 3, MuSign::Positive, 1e-9).verdict;
    ensure(verdict == Verdict::ExistsStable, || {
        format!("verdict {verdict:?}")
    })?;

    let conj = CanonicalSystem::scalar(-7.29, 0.16, -2.0).unwrap();
    let word: Itinerary = "RLR".parse().unwrap();
    let mirrored = solve_symbolic_cycle(&conj, &word).map_err(|e| e.to_string())?;
    let err2 = max_set_error(&mirrored.xs(), &[0.0107, -1.9982, 12.5674]);
    ensure(err2 <= 1e-3, || format!("RLR x-points {:?}", mirrored.xs()))?;
    ensure(mirrored.admissible, || "RLR solution not admissible".into())?;

    let (u, v) = (direct.xs(), mirrored.xs());
    let flip = (0..3)
        .map(|k| {
            (0..3)
                .map(|i| (v[i] + u[(i + k) % 3]).abs())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    ensure(flip <= 1e-12, || format!("sign-flip mismatch {flip:e}"))?;
    Ok(format!(
        "errors {err:.1e} / {err2:.1e}, sign flip {flip:.1e}"
    ))
}

fn border_cases_n4_n6() -> Check {
    ensure(
        on_bifurcation_curve(2.0, -1.75, 4, MuSign::Positive, 1e-9),
        || "(2, -1.75) not on curve".into(),
    )?;
    let sol = solve_cycle(&CanonicalSystem::scalar(2.0, -1.75, 1.0).unwrap(), 4)
        .map_err(|e| e.to_string())?;
    let mult = sol.multipliers[0];
    ensure((mult.re + 14.0).abs() <= 1e-12 && mult.im == 0.0, || {
        format!("multiplier {mult}")
    })?;
    ensure(!sol.stable, || "n = 4 cycle reported stable".into())?;

    let sys = CanonicalSystem::scalar(0.5, -31.0, 1.0).unwrap();
    let sol = solve_cycle(&sys, 6).map_err(|e| e.to_string())?;
    let (x1, x6) = (sol.points[0].x, sol.points[5].x);
    ensure(sol.n() == 6, || format!("{} points", sol.n()))?;
    ensure((x1 - 1.0).abs() <= 1e-9 && x6.abs() <= 1e-9, || {
        format!("x1 = {x1:e}, x6 = {x6:e}")
    })?;
    ensure(sol.residual <= 1e-9, || {
        format!("closure residual {:e}", sol.residual)
    })?;
    Ok(format!(
        "a^3 d = {}, n = 6 residual {:.1e}",
        mult.re, sol.residual
    ))
}

fn chaotic_bands() -> Check {
    let start = Instant::now();
    let opts = BandOptions::default();
    let mut counts = Vec::new();
    for (d, bands, region) in [
        (-6.5, 3, BandRegion::NBand),
        (-6.4, 6, BandRegion::TwoNBand),
    ] {
        let found = chaotic_band_region(0.4, d, 3);
        ensure(found == region, || format!("d = {d}: {found:?}"))?;
        let sys = CanonicalSystem::scalar(0.4, d, 0.8).unwrap();
        for x0 in [0.4, -0.55, 1.3] {
            let orbit = trajectory(
                &sys,
                State::from_slice(&[x0]),
                DEFAULT_TRANSIENT + DEFAULT_BAND_STEPS,
                DEFAULT_TRANSIENT,
            )
            .map_err(|e| e.to_string())?;
            let count = band_count(&orbit, &opts);
            ensure(count == bands, || {
                format!("d = {d}, x0 = {x0}: {count} bands")
            })?;
            if let Some(c) = detect_cycle(&orbit, 64, 1e-9) {
                return Err(format!("d = {d}, x0 = {x0}: period {}", c.period));
            }
            counts.push(count);
        }
    }
    let elapsed = start.elapsed();
    within_time(elapsed, Duration::from_secs(5))?;
    Ok(format!("band counts {counts:?}, {elapsed:?}"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut worst: f64 = 0.0;
    let mut systems = 0;
    while systems < 100 {
        let (a, d) = (rng.random_range(0.05..0.618), rng.random_range(-40.0..0.0));
        if !region_stable(a, d, 3) {
            continue;
        }
        let m = rng.random_range(1..=3);
        let mut draw =
            |lo: f64, hi: f64| (0..m).map(|_| rng.random_range(lo..hi)).collect::<Vec<_>>();
        let (diag, b, e, h) = (
            draw(-0.9, 0.9),
            draw(-1.0, 1.0),
            draw(-1.0, 1.0),
            draw(-1.0, 1.0),
        );
        let mu = rng.random_range(0.1..2.0);
        let sys = CanonicalSystem::with_diagonal_block(a, d, &b, &e, &diag, &h, mu).unwrap();
        let sol = solve_cycle(&sys, 3).map_err(|err| format!("(a, d) = ({a}, {d}): {err}"))?;
        let found = simulate_to_cycle(&sys, &sol, 16)
            .ok_or_else(|| format!("(a, d) = ({a}, {d}): no cycle found"))?;
        ensure(found.period == 3, || {
            format!("(a, d) = ({a}, {d}): period {}", found.period)
        })?;
        let dist = state_set_distance(&found.points, &sol.points);
        ensure(dist <= 1e-6, || {
            format!("(a, d) = ({a}, {d}): distance {dist:e}")
        })?;
        worst = worst.max(dist);
        systems += 1;
    }
    let elapsed = start.elapsed();
    within_time(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "worst Hausdorff distance {worst:.1e} over {systems} systems, {elapsed:?}"
    ))
}

fn region_nesting() -> Check {
    let spec = GridSpec::new((0.01, 3.0), (-40.0, -0.01), (200, 200), (3..=9).collect());
    let start = Instant::now();
    let violations = nesting_report(&spec).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(violations.is_empty(), || {
        format!("{} violations, first {:?}", violations.len(), violations[0])
    })?;
    within_time(elapsed, Duration::from_secs(2))?;
    Ok(format!(
        "0 violations on {} cells, {elapsed:?}",
        200 * 200 * 7
    ))
}

/// Multiples of 1/64: products and short sums of these are exact in f64.
fn dyadic(rng: &mut ChaCha8Rng, bound: f64) -> f64 {
    let k = (bound * 64.0) as i64;
    rng.random_range(-k..=k) as f64 / 64.0
}

fn random_plrnn(rng: &mut ChaCha8Rng, m: usize, relaxed: bool) -> PlrnnSystem {
    let a = DVector::from_fn(m, |_, _| dyadic(rng, 0.9));
    let mut w = DMatrix::from_fn(m, m, |_, _| dyadic(rng, 1.5));
    if !relaxed {
        w.fill_diagonal(0.0);
    }
    let h = DVector::from_fn(m, |_, _| dyadic(rng, 1.0));
    PlrnnSystem::new(a, w, h, relaxed).unwrap()
}

fn without_row_coupling(sys: &PlrnnSystem, s: usize) -> PlrnnSystem {
    let mut w = sys.w.clone();
    for k in (0..sys.dim()).filter(|&k| k != s) {
        w[(s, k)] = 0.0;
    }
    PlrnnSystem::new(sys.a_diag.clone(), w, sys.h.clone(), sys.relaxed_diagonal).unwrap()
}

fn random_pair(rng: &mut ChaCha8Rng, m: usize) -> (usize, RegionIndex, RegionIndex) {
    let s = rng.random_range(0..m);
    let mut lower = RegionIndex::new((0..m).map(|_| rng.random_bool(0.5)).collect());
    lower.bits[s] = false;
    let mut upper = lower.clone();
    upper.bits[s] = true;
    (s, lower, upper)
}

fn sign_pattern_state(rng: &mut ChaCha8Rng, bits: &[bool]) -> DVector<f64> {
    DVector::from_fn(bits.len(), |i, _| {
        let mag = rng.random_range(1..=256) as f64 / 64.0;
        if bits[i] {
            mag
        } else {
            -mag
        }
    })
}

fn plrnn_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut step_gap: f64 = 0.0;
    let mut pairs = 0;
    for case in 0..200 {
        let m = 1 + case % 8;
        let strict = random_plrnn(&mut rng, m, false);
        let relaxed = random_plrnn(&mut rng, m, true);

        for sys in [&strict, &relaxed] {
            for _ in 0..20 {
                let z = DVector::from_fn(m, |_, _| rng.random_range(-5.0..5.0));
                step_gap = step_gap.max((sys.step(&z) - sys.step_relu(&z)).amax());
            }
        }
        ensure(step_gap <= 1e-12, || {
            format!("M = {m}: step forms differ by {step_gap:e}")
        })?;

        // The listed orthants: all off, z1 on, z2 on, z1 and z2 on, z3 on, all on.
        let listed: [(&[usize], usize); 5] =
            [(&[], 1), (&[0], 2), (&[1], 3), (&[0, 1], 4), (&[2], 5)];
        for (on, label) in listed.iter().filter(|(on, _)| on.iter().all(|&k| k < m)) {
            let bits: Vec<bool> = (0..m).map(|k| on.contains(&k)).collect();
            let r = region_of(&sign_pattern_state(&mut rng, &bits));
            ensure(
                r.bits == bits && r.omega_label() == *label && r.ordinal() == label - 1,
                || {
                    format!(
                        "M = {m}: pattern {on:?} gave {r} (label {})",
                        r.omega_label()
                    )
                },
            )?;
        }
        let top = region_of(&sign_pattern_state(&mut rng, &vec![true; m]));
        ensure(top.omega_label() == 1 << m, || {
            format!("M = {m}: all-positive label {}", top.omega_label())
        })?;

        for _ in 0..4 {
            let (s, lower, upper) = random_pair(&mut rng, m);
            let loc = localize(&without_row_coupling(&strict, s), &lower, &upper)
                .map_err(|e| e.to_string())?;
            ensure(loc.degenerate_kink, || {
                format!("M = {m}, s = {s}: strict pair kept its kink")
            })?;

            let (s, lower, upper) = random_pair(&mut rng, m);
            let sys = without_row_coupling(&relaxed, s);
            let loc = localize(&sys, &lower, &upper).map_err(|e| e.to_string())?;
            for _ in 0..8 {
                let mut z = sign_pattern_state(&mut rng, &lower.bits);
                z[s] = dyadic(&mut rng, 4.0);
                let via_canonical = loc.to_original(&loc.canonical.step(&loc.to_canonical(&z)));
                let direct = sys.step(&z);
                ensure(via_canonical == direct, || {
                    format!("M = {m}, s = {s}: {via_canonical:?} != {direct:?}")
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "step-form gap {step_gap:.1e}, {pairs} localized pairs exact"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 example-1 cycle", example_one_cycle),
        ("2 border collision at d = -3.5", border_collision),
        ("3 period-3 cycle and its sign conjugate", period_three_pair),
        ("4 border cases n = 4 and n = 6", border_cases_n4_n6),
        ("5 chaotic bands", chaotic_bands),
        ("6 closed form vs simulation", oracle_equivalence),
        ("7 region nesting", region_nesting),
        ("8 PLRNN identities", plrnn_identities),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
