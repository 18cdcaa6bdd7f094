use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use pwl_cycles::atlas::{self, GridSpec};
use pwl_cycles::cycle::{self, CycleSolution};
use pwl_cycles::plrnn::{self, PlrnnSystem, RegionIndex};
use pwl_cycles::sim::{self, BandOptions};
use pwl_cycles::skew_tent::{classify, li_yorke_chaos_flag};
use pwl_cycles::{CanonicalSystem, Itinerary, MuSign, SkewTentParams, State, Tolerances};
use serde_json::{json, Value};

use crate::config::{CanonicalConfig, ConfigError, PlrnnConfig, SystemConfig};

/// A failed command: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_STRUCTURE: i32 = 5;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<pwl_cycles::Error> for Failure {
    fn from(e: pwl_cycles::Error) -> Failure {
        use pwl_cycles::Error::*;
        let code = match &e {
            StructureViolation { .. } | NotAdjacent { .. } | SameRegion | DiagonalWeight { .. } => {
                EXIT_STRUCTURE
            }
            InvalidArgument(_)
            | InvalidSymbol(_)
            | EmptySequence
            | DimensionMismatch { .. }
            | NonFinite { .. }
            | RegionOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_SOLVER,
        };
        Failure {
            code,
            message: format!("{}: {e}", e.name()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Failure {
        match e {
            ConfigError::System(inner) => inner.into(),
            ConfigError::Io { .. } => Failure {
                code: EXIT_IO,
                message: e.to_string(),
            },
            other => Failure::usage(other.to_string()),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    Csv,
    Json,
}

/// Write to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, contents: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure {
                    code: EXIT_IO,
                    message: format!("cannot write to stdout: {e}"),
                })
        }
    }
}

fn csv_string(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn num(v: f64) -> String {
    format!("{v}")
}

/// Fixed six decimals, without a sign on zero.
fn fix6(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

pub fn load_canonical(path: &Path, what: &str) -> Result<CanonicalSystem, Failure> {
    match SystemConfig::load(path)? {
        SystemConfig::Canonical(c) => Ok(c.build()?),
        SystemConfig::Plrnn(_) => Err(Failure::usage(format!(
            "{what} needs a canonical system config; localize a PLRNN with `pwlc plrnn` first"
        ))),
    }
}

pub fn load_plrnn(path: &Path) -> Result<PlrnnSystem, Failure> {
    match SystemConfig::load(path)? {
        SystemConfig::Plrnn(p) => Ok(p.build()?),
        SystemConfig::Canonical(_) => Err(Failure::usage(
            "plrnn needs a config with \"kind\": \"plrnn\"",
        )),
    }
}

/// Replace the switching parameters of a loaded system.
pub fn override_params(
    sys: &mut CanonicalSystem,
    a: Option<f64>,
    d: Option<f64>,
    mu: Option<f64>,
) -> CmdResult {
    for (name, v) in [("a", a), ("d", d), ("mu", mu)] {
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(Failure::usage(format!("--{name} must be finite")));
            }
        }
    }
    sys.a = a.unwrap_or(sys.a);
    sys.d = d.unwrap_or(sys.d);
    sys.mu_hat = mu.unwrap_or(sys.mu_hat);
    Ok(())
}

pub fn classify_cmd(a: f64, d: f64, n: usize, sign: MuSign, tol: f64, format: Format) -> CmdResult {
    if !(a.is_finite() && d.is_finite()) {
        return Err(Failure::usage("--a and --d must be finite"));
    }
    let c = classify(a, d, n, sign, tol);
    let mu = match sign {
        MuSign::Positive => 1.0,
        MuSign::Negative => -1.0,
    };
    let li_yorke = li_yorke_chaos_flag(&SkewTentParams { a, d, mu_hat: mu }).unwrap_or(false);
    let out = match format {
        Format::Json => json_text(&json!({
            "a": a,
            "d": d,
            "n": n,
            "mu_sign": sign,
            "tol": tol,
            "verdict": c.verdict,
            "li_yorke_chaos": li_yorke,
            "details": c.details,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "verdict: {}", c.verdict).unwrap();
            writeln!(s, "a: {a}\nd: {d}\nn: {n}\nmu_sign: {sign}").unwrap();
            writeln!(s, "li_yorke_chaos: {li_yorke}").unwrap();
            for (k, v) in &c.details {
                writeln!(s, "{k}: {v}").unwrap();
            }
            s
        }
    };
    write_output(None, &out)
}

fn point_rows(points: &[State]) -> Vec<Vec<String>> {
    points
        .iter()
        .enumerate()
        .map(|(k, p)| {
            std::iter::once((k + 1).to_string())
                .chain(p.to_vec().into_iter().map(num))
                .collect()
        })
        .collect()
}

fn state_header(first: &str, m: usize) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(std::iter::once("x".to_string()))
        .chain((1..=m).map(|i| format!("Y{i}")))
        .collect()
}

fn cycle_json(sol: &CycleSolution) -> Value {
    json!({
        "sequence": sol.sequence.to_string(),
        "requested": sol.branches.to_string(),
        "admissible": sol.admissible,
        "stable": sol.stable,
        "spectral_radius": sol.spectral_radius(),
        "residual": sol.residual,
        "points": sol.points.iter().map(State::to_vec).collect::<Vec<_>>(),
        "multipliers": sol.multipliers.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
    })
}

fn cycle_text(sol: &CycleSolution) -> String {
    let mut s = String::new();
    writeln!(s, "sequence: {}", sol.sequence).unwrap();
    writeln!(s, "requested: {}", sol.branches).unwrap();
    writeln!(s, "admissible: {}", sol.admissible).unwrap();
    writeln!(s, "stable: {}", sol.stable).unwrap();
    writeln!(s, "spectral_radius: {}", fix6(sol.spectral_radius())).unwrap();
    writeln!(s, "residual: {:e}", sol.residual).unwrap();
    writeln!(s, "points:").unwrap();
    for (k, p) in sol.points.iter().enumerate() {
        let coords: Vec<String> = p.to_vec().into_iter().map(fix6).collect();
        writeln!(s, "  {}: {}", k + 1, coords.join(" ")).unwrap();
    }
    writeln!(s, "multipliers:").unwrap();
    for z in &sol.multipliers {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        writeln!(s, "  {}{sign}{}i", fix6(z.re), fix6(z.im.abs())).unwrap();
    }
    s
}

pub struct CycleArgs {
    pub n: usize,
    pub sequence: Option<String>,
    pub emit: Option<Emit>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn cycle_cmd(sys: &CanonicalSystem, args: &CycleArgs) -> CmdResult {
    let sol = match &args.sequence {
        Some(word) => {
            let word: Itinerary = word.parse()?;
            cycle::solve_symbolic_cycle(sys, &word)?
        }
        None => cycle::solve_cycle(sys, args.n)?,
    };
    let emitted = args.emit.map(|e| match e {
        Emit::Csv => csv_string(&state_header("k", sys.block_dim()), point_rows(&sol.points)),
        Emit::Json => json_text(&cycle_json(&sol)),
    });
    match (emitted, &args.out) {
        (Some(data), Some(path)) => {
            write_output(Some(path), &data)?;
        }
        (Some(data), None) => return write_output(None, &data),
        (None, Some(_)) => return Err(Failure::usage("--out requires --emit csv|json")),
        (None, None) => {}
    }
    let report = match args.format {
        Format::Text => cycle_text(&sol),
        Format::Json => json_text(&cycle_json(&sol)),
    };
    write_output(None, &report)
}

pub struct ScanArgs {
    pub spec: GridSpec,
    pub out: Option<PathBuf>,
}

pub fn scan_csv(spec: &GridSpec) -> Result<String, Failure> {
    let grid = atlas::scan(spec)?;
    let rows = grid.layers.iter().flat_map(|layer| {
        let nd = grid.d_values.len();
        let (a_values, d_values) = (&grid.a_values, &grid.d_values);
        layer.cells.iter().enumerate().map(move |(k, c)| {
            vec![
                num(a_values[k / nd]),
                num(d_values[k % nd]),
                layer.n.to_string(),
                c.verdict.to_string(),
            ]
        })
    });
    let header = ["a", "d", "n", "verdict"].map(String::from);
    Ok(csv_string(&header, rows))
}

pub fn scan_cmd(args: &ScanArgs) -> CmdResult {
    let data = scan_csv(&args.spec)?;
    write_output(args.out.as_deref(), &data)
}

pub struct SimulateArgs {
    pub steps: usize,
    pub transient: usize,
    pub seed: Option<Vec<f64>>,
    pub max_period: usize,
    pub tol: f64,
    pub bands: BandOptions,
    pub out: Option<PathBuf>,
    pub format: Format,
}

const ITINERARY_PREFIX: usize = 30;

pub fn simulate_cmd(sys: &CanonicalSystem, args: &SimulateArgs) -> CmdResult {
    let seed = match &args.seed {
        Some(z) if z.len() != sys.state_dim() => {
            return Err(Failure::usage(format!(
                "--seed needs {} values (x, Y1..Y{}), got {}",
                sys.state_dim(),
                sys.block_dim(),
                z.len()
            )))
        }
        Some(z) => State::from_slice(z),
        None => sys.default_seed(),
    };
    let orbit = match sim::trajectory(sys, seed, args.steps, args.transient) {
        Ok(orbit) => orbit,
        Err(pwl_cycles::Error::Diverged { step, threshold }) => {
            let report = match args.format {
                Format::Text => format!("diverged: step {step} (|z| > {threshold:e})\n"),
                Format::Json => json_text(&json!({ "diverged_at": step, "threshold": threshold })),
            };
            return write_output(None, &report);
        }
        Err(e) => return Err(e.into()),
    };

    if let Some(path) = &args.out {
        let rows = orbit.states.iter().enumerate().map(|(k, s)| {
            std::iter::once((orbit.transient + k).to_string())
                .chain(s.to_vec().into_iter().map(num))
                .collect()
        });
        write_output(
            Some(path),
            &csv_string(&state_header("t", sys.block_dim()), rows),
        )?;
    }

    let zero_tol = Tolerances::default().zero_tol(sys.mu_hat);
    let detected = sim::detect_cycle(&orbit, args.max_period, args.tol);
    let word = sim::itinerary(&orbit, zero_tol).to_string();
    let prefix: String = word.chars().take(ITINERARY_PREFIX).collect();
    let period_word: Option<String> = detected.as_ref().map(|c| {
        Itinerary(
            c.points
                .iter()
                .map(|p| pwl_cycles::Symbol::classify(p.x, zero_tol))
                .collect(),
        )
        .to_string()
    });
    let bands = sim::band_count(&orbit, &args.bands);

    let report = match args.format {
        Format::Json => json_text(&json!({
            "steps": args.steps,
            "transient": args.transient,
            "recorded": orbit.len(),
            "period": detected.as_ref().map(|c| c.period),
            "cycle_sequence": period_word,
            "cycle_points": detected.as_ref().map(|c| c.points.iter().map(State::to_vec).collect::<Vec<_>>()),
            "itinerary_prefix": prefix,
            "bands": bands,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "steps: {}", args.steps).unwrap();
            writeln!(s, "transient: {}", args.transient).unwrap();
            writeln!(s, "recorded: {}", orbit.len()).unwrap();
            match &detected {
                Some(c) => {
                    writeln!(s, "period: {}", c.period).unwrap();
                    writeln!(
                        s,
                        "cycle_sequence: {}",
                        period_word.as_deref().unwrap_or("")
                    )
                    .unwrap();
                    let xs: Vec<String> = c.points.iter().map(|p| fix6(p.x)).collect();
                    writeln!(s, "cycle_x: {}", xs.join(" ")).unwrap();
                }
                None => writeln!(s, "period: none (no cycle up to {})", args.max_period).unwrap(),
            }
            writeln!(s, "itinerary: {prefix}").unwrap();
            writeln!(s, "bands: {bands}").unwrap();
            s
        }
    };
    write_output(None, &report)
}

/// A region given as a bit word (`"1000"`) or as its 1-based label `k`.
pub fn parse_region(text: &str, dim: usize) -> Result<RegionIndex, Failure> {
    if text.len() == dim && text.chars().all(|c| c == '0' || c == '1') {
        return Ok(text.parse()?);
    }
    let k: usize = text.parse().map_err(|_| {
        Failure::usage(format!(
            "region {text:?} is neither a {dim}-bit word nor a label"
        ))
    })?;
    if k == 0 {
        return Err(Failure::usage("region labels start at 1"));
    }
    Ok(RegionIndex::from_ordinal(k - 1, dim)?)
}

fn vec_str(v: &DVector<f64>) -> String {
    let parts: Vec<String> = v.iter().map(|&x| num(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn rows_json(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn plrnn_cmd(sys: &PlrnnSystem, pair: (&str, &str), n: usize, format: Format) -> CmdResult {
    let i = parse_region(pair.0, sys.dim())?;
    let j = parse_region(pair.1, sys.dim())?;
    let report = plrnn::local_cycle_analysis(sys, &i, &j, n)?;
    let loc = &report.localized;
    let c = &loc.canonical;

    let out = match format {
        Format::Json => json_text(&json!({
            "boundary": loc.boundary + 1,
            "lower": { "bits": loc.lower.to_string(), "label": loc.lower.omega_label() },
            "upper": { "bits": loc.upper.to_string(), "label": loc.upper.omega_label() },
            "permutation": loc.permutation.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "degenerate_kink": loc.degenerate_kink,
            "canonical": CanonicalConfig::from_system(c),
            "verdict": report.classification.verdict,
            "details": report.classification.details,
            "cycle": match &report.cycle {
                Ok(sol) => cycle_json(sol),
                Err(e) => json!({ "error": e.name(), "message": e.to_string() }),
            },
            "locality": report.locality.as_ref().map(|l| json!({
                "holds": l.holds(),
                "violations": l.violations.iter().map(|v| json!({
                    "point": v.point + 1, "coordinate": v.coordinate + 1, "value": v.value
                })).collect::<Vec<_>>(),
                "on_boundary": l.on_boundary.iter().map(|v| json!({
                    "point": v.point + 1, "coordinate": v.coordinate + 1, "value": v.value
                })).collect::<Vec<_>>(),
            })),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "boundary: z{}", loc.boundary + 1).unwrap();
            writeln!(
                s,
                "lower: {} (Omega^{})",
                loc.lower,
                loc.lower.omega_label()
            )
            .unwrap();
            writeln!(
                s,
                "upper: {} (Omega^{})",
                loc.upper,
                loc.upper.omega_label()
            )
            .unwrap();
            let order: Vec<String> = loc
                .permutation
                .iter()
                .map(|k| format!("z{}", k + 1))
                .collect();
            writeln!(s, "order: {}", order.join(" ")).unwrap();
            writeln!(
                s,
                "a: {}\nd: {}\nmu_hat: {}",
                num(c.a),
                num(c.d),
                num(c.mu_hat)
            )
            .unwrap();
            writeln!(
                s,
                "b: {}\ne: {}\nh_y: {}",
                vec_str(&c.b),
                vec_str(&c.e),
                vec_str(&c.h_y)
            )
            .unwrap();
            writeln!(s, "block: {:?}", rows_json(&c.block)).unwrap();
            if loc.degenerate_kink {
                writeln!(
                    s,
                    "warning: DegenerateKink: a = d = {}; both sides share the same self-slope",
                    num(c.a)
                )
                .unwrap();
            }
            writeln!(s, "verdict: {}", report.classification.verdict).unwrap();
            match &report.cycle {
                Ok(sol) => s.push_str(&cycle_text(sol)),
                Err(e) => writeln!(s, "cycle: none ({}: {e})", e.name()).unwrap(),
            }
            if let Some(l) = &report.locality {
                if l.holds() {
                    writeln!(s, "locality: holds").unwrap();
                } else {
                    writeln!(s, "locality: violated").unwrap();
                    for v in &l.violations {
                        writeln!(
                            s,
                            "  point {} z{} = {}",
                            v.point + 1,
                            v.coordinate + 1,
                            num(v.value)
                        )
                        .unwrap();
                    }
                }
                for v in &l.on_boundary {
                    writeln!(
                        s,
                        "warning: point {} lies on the boundary z{} = 0",
                        v.point + 1,
                        v.coordinate + 1
                    )
                    .unwrap();
                }
            }
            s
        }
    };
    write_output(None, &out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExampleName {
    /// Three-dimensional block with a stable RLL cycle.
    Example1,
    /// Same system at the border collision d = -3.5.
    Border,
    /// Scalar map with the RLL cycle of slopes (0.16, -7.29).
    Period3,
    /// Scalar map on the RLLL curve, (2, -1.75).
    CurveN4,
    /// Scalar map on the 6-cycle curve, (0.5, -31).
    CurveN6,
    /// Scalar map with a six-band chaotic attractor, (0.4, -6.4).
    Bands,
    /// Relaxed PLRNN whose first unit localizes to slopes (0.4, -4).
    Plrnn,
    /// Strict PLRNN (zero-diagonal W).
    PlrnnStrict,
}

pub fn example_config(name: ExampleName) -> SystemConfig {
    let example1 = |d: f64| CanonicalConfig {
        m: 3,
        a: 0.4,
        d,
        mu_hat: 0.8,
        b: vec![1.0, 0.5, 0.6],
        e: vec![0.5, 1.0, 1.0],
        block: vec![
            vec![0.4, 0.0, 0.0],
            vec![0.0, 0.5, 0.0],
            vec![0.0, 0.0, 0.6],
        ],
        h_y: vec![1.0, 0.0, 1.0],
    };
    let scalar = |a: f64, d: f64, mu: f64| {
        SystemConfig::Canonical(CanonicalConfig {
            m: 0,
            a,
            d,
            mu_hat: mu,
            b: vec![],
            e: vec![],
            block: vec![],
            h_y: vec![],
        })
    };
    match name {
        ExampleName::Example1 => SystemConfig::Canonical(example1(-4.0)),
        ExampleName::Border => SystemConfig::Canonical(example1(-3.5)),
        ExampleName::Period3 => scalar(0.16, -7.29, 2.0),
        ExampleName::CurveN4 => scalar(2.0, -1.75, 1.0),
        ExampleName::CurveN6 => scalar(0.5, -31.0, 1.0),
        ExampleName::Bands => scalar(0.4, -6.4, 0.8),
        ExampleName::Plrnn => SystemConfig::Plrnn(PlrnnConfig {
            m: 4,
            a_diag: vec![0.4, 0.4, 0.5, 0.6],
            w: vec![
                vec![-4.4, 0.0, 0.0, 0.0],
                vec![0.5, 0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0, 0.0],
            ],
            h: vec![0.8, 1.0, 0.0, 1.0],
            relaxed_diagonal: true,
        }),
        ExampleName::PlrnnStrict => SystemConfig::Plrnn(PlrnnConfig {
            m: 3,
            a_diag: vec![0.4, 0.5, 0.6],
            w: vec![
                vec![0.0, 0.0, 0.0],
                vec![0.5, 0.0, 0.2],
                vec![1.0, -0.3, 0.0],
            ],
            h: vec![0.8, 0.1, -0.2],
            relaxed_diagonal: false,
        }),
    }
}

pub fn curve_cmd(
    n: usize,
    a_range: (f64, f64),
    count: usize,
    sign: MuSign,
    out: Option<&Path>,
) -> CmdResult {
    if n < 2 {
        return Err(pwl_cycles::Error::InvalidCycleLength { n, min: 2 }.into());
    }
    if !(a_range.0 > 0.0 && a_range.1 > 0.0) || count < 2 {
        return Err(Failure::usage(
            "curve needs a positive slope range and --count >= 2",
        ));
    }
    let pts = atlas::curve_samples(n, a_range, count, sign);
    let header = ["a", "d"].map(String::from);
    write_output(
        out,
        &csv_string(&header, pts.into_iter().map(|(a, d)| vec![num(a), num(d)])),
    )
}

pub fn cobweb_cmd(p: &SkewTentParams, x0: f64, steps: usize, out: Option<&Path>) -> CmdResult {
    let segs = sim::cobweb_data(p, x0, steps);
    let header = ["x0", "y0", "x1", "y1"].map(String::from);
    let rows = segs
        .into_iter()
        .map(|s| vec![num(s.from.0), num(s.from.1), num(s.to.0), num(s.to.1)]);
    write_output(out, &csv_string(&header, rows))
}

pub fn iterate_cmd(
    p: &SkewTentParams,
    k: usize,
    range: (f64, f64),
    samples: usize,
    out: Option<&Path>,
) -> CmdResult {
    let pts = sim::iterate_graph(p, k, range, samples);
    let header = ["x", "y"].map(String::from);
    write_output(
        out,
        &csv_string(&header, pts.into_iter().map(|(x, y)| vec![num(x), num(y)])),
    )
}

pub struct BifurcationArgs {
    pub a: f64,
    pub d_range: (f64, f64),
    pub d_steps: usize,
    pub mu: f64,
    pub samples: usize,
    pub transient: usize,
    pub out: Option<PathBuf>,
}

pub fn bifurcation_cmd(args: &BifurcationArgs) -> CmdResult {
    let rows = sim::bifurcation_scan_with(
        args.a,
        args.d_range,
        args.d_steps,
        args.mu,
        args.samples,
        args.transient,
    );
    let header = ["d", "x"].map(String::from);
    let data = csv_string(
        &header,
        rows.iter()
            .flat_map(|r| r.xs.iter().map(move |&x| vec![num(r.d), num(x)])),
    );
    let diverged = rows.iter().filter(|r| r.diverged_at.is_some()).count();
    if diverged > 0 {
        eprintln!(
            "note: {diverged} of {} columns diverged and were left out",
            rows.len()
        );
    }
    write_output(args.out.as_deref(), &data)
}
