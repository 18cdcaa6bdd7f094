//! `pwlc`: cycles, regions and orbit data for piecewise-linear maps.
//!
//! Exit codes: 0 success, 2 flag or config error, 3 solver precondition,
//! 4 I/O, 5 structural (PLRNN localization).

mod commands;
mod config;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pwl_cycles::atlas::GridSpec;
use pwl_cycles::sim::{BandOptions, DEFAULT_STEPS, DEFAULT_TRANSIENT};
use pwl_cycles::skew_tent::DEFAULT_CURVE_TOL;
use pwl_cycles::{MuSign, SkewTentParams};

use commands::{
    BifurcationArgs, CmdResult, CycleArgs, Emit, ExampleName, Failure, Format, ScanArgs,
    SimulateArgs,
};

#[derive(Parser)]
#[command(
    name = "pwlc",
    version,
    about = "Cycles and border-collision bifurcations of piecewise-linear maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify slopes (a, d) for the basic n-cycle R L^(n-1).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Sign of the offset: + or -.
        #[arg(long, default_value = "+")]
        mu_sign: MuSign,
        /// Distance from the border-collision curve counted as "on" it.
        #[arg(long, default_value_t = DEFAULT_CURVE_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve for a cycle of a canonical system given as a JSON config.
    Cycle {
        config: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Solve for an arbitrary itinerary such as RLR or RL0 instead.
        #[arg(long)]
        sequence: Option<String>,
        #[command(flatten)]
        overrides: Overrides,
        /// Write the cycle points in this format.
        #[arg(long, value_enum)]
        emit: Option<Emit>,
        /// Destination for --emit (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify a grid of the (a, d) plane; CSV columns a,d,n,verdict.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        a_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        a_max: f64,
        #[arg(long, allow_negative_numbers = true)]
        d_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        d_max: f64,
        #[arg(long, default_value_t = 100)]
        a_steps: usize,
        #[arg(long, default_value_t = 100)]
        d_steps: usize,
        /// Cycle lengths: `3`, `3,5,7` or an inclusive range `2..9`.
        #[arg(long, default_value = "3", value_parser = parse_n_list)]
        n: NList,
        #[arg(long, default_value = "+")]
        mu_sign: MuSign,
        #[arg(long, default_value_t = DEFAULT_CURVE_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate a canonical system; prints period, itinerary and band count.
    Simulate {
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_TRANSIENT)]
        transient: usize,
        /// Initial state `x,Y1,...,Ym` (default: mu_hat/2 and zeros).
        #[arg(long, allow_negative_numbers = true, value_delimiter = ',')]
        seed: Option<Vec<f64>>,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, default_value_t = 64)]
        max_period: usize,
        /// Max-norm tolerance for cycle detection.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 10.0)]
        band_gap_factor: f64,
        #[arg(long, default_value_t = 3e-3)]
        band_span_fraction: f64,
        /// Write the recorded states as CSV (columns t,x,Y1..Ym).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Localize a PLRNN at the boundary between two orthants and analyse
    /// the basic n-cycle there.
    Plrnn {
        config: PathBuf,
        /// Two regions as bit words (`1000`) or 1-based labels.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Vec<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write a built-in example config.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Points of the border-collision curve; CSV columns a,d.
    Curve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value = "+")]
        mu_sign: MuSign,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cobweb path of the scalar map; CSV columns x0,y0,x1,y1.
    Cobweb {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        x0: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph of the k-th iterate of the scalar map; CSV columns x,y.
    Iterate {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Post-transient x-values of the scalar map over a sweep of d;
    /// CSV columns d,x.
    Bifurcation {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        d_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        d_max: f64,
        #[arg(long, default_value_t = 400)]
        d_steps: usize,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TRANSIENT)]
        transient: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Overrides {
    /// Replace the left slope of the config.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Replace the right slope of the config.
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    /// Replace the offset of the config.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
}

#[derive(clap::Args)]
struct MapArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
    #[arg(long, allow_negative_numbers = true)]
    mu: f64,
}

impl MapArgs {
    fn params(&self) -> Result<SkewTentParams, Failure> {
        Ok(SkewTentParams::new(self.a, self.d, self.mu)?)
    }
}

#[derive(Debug, Clone)]
struct NList(Vec<usize>);

fn parse_n_list(s: &str) -> Result<NList, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        return Ok(NList((lo..=hi).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(NList)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify {
            a,
            d,
            n,
            mu_sign,
            tol,
            format,
        } => commands::classify_cmd(a, d, n, mu_sign, tol, format),
        Command::Cycle {
            config,
            n,
            sequence,
            overrides,
            emit,
            out,
            format,
        } => {
            let mut sys = commands::load_canonical(&config, "cycle")?;
            commands::override_params(&mut sys, overrides.a, overrides.d, overrides.mu)?;
            commands::cycle_cmd(
                &sys,
                &CycleArgs {
                    n,
                    sequence,
                    emit,
                    out,
                    format,
                },
            )
        }
        Command::Scan {
            a_min,
            a_max,
            d_min,
            d_max,
            a_steps,
            d_steps,
            n,
            mu_sign,
            tol,
            out,
        } => {
            let mut spec = GridSpec::new((a_min, a_max), (d_min, d_max), (a_steps, d_steps), n.0);
            spec.mu_sign = mu_sign;
            spec.tol = tol;
            commands::scan_cmd(&ScanArgs { spec, out })
        }
        Command::Simulate {
            config,
            steps,
            transient,
            seed,
            overrides,
            max_period,
            tol,
            band_gap_factor,
            band_span_fraction,
            out,
            format,
        } => {
            let mut sys = commands::load_canonical(&config, "simulate")?;
            commands::override_params(&mut sys, overrides.a, overrides.d, overrides.mu)?;
            commands::simulate_cmd(
                &sys,
                &SimulateArgs {
                    steps,
                    transient,
                    seed,
                    max_period,
                    tol,
                    bands: BandOptions {
                        gap_factor: band_gap_factor,
                        min_span_fraction: band_span_fraction,
                    },
                    out,
                    format,
                },
            )
        }
        Command::Plrnn {
            config,
            pair,
            n,
            format,
        } => {
            let sys = commands::load_plrnn(&config)?;
            commands::plrnn_cmd(&sys, (&pair[0], &pair[1]), n, format)
        }
        Command::Example { name, out } => {
            commands::write_output(out.as_deref(), &commands::example_config(name).to_json())
        }
        Command::Curve {
            n,
            a_min,
            a_max,
            count,
            mu_sign,
            out,
        } => commands::curve_cmd(n, (a_min, a_max), count, mu_sign, out.as_deref()),
        Command::Cobweb {
            map,
            x0,
            steps,
            out,
        } => commands::cobweb_cmd(&map.params()?, x0, steps, out.as_deref()),
        Command::Iterate {
            map,
            k,
            x_min,
            x_max,
            samples,
            out,
        } => commands::iterate_cmd(&map.params()?, k, (x_min, x_max), samples, out.as_deref()),
        Command::Bifurcation {
            a,
            d_min,
            d_max,
            d_steps,
            mu,
            samples,
            transient,
            out,
        } => commands::bifurcation_cmd(&BifurcationArgs {
            a,
            d_range: (d_min, d_max),
            d_steps,
            mu,
            samples,
            transient,
            out,
        }),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(f) = run(cli) {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}
