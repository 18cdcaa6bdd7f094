//! Periodic orbits and border-collision bifurcations of piecewise-linear
//! continuous maps, and their use for local cycle analysis of ReLU-based
//! piecewise-linear recurrent neural networks (PLRNNs).
//!
//! The central object is the [`CanonicalSystem`]: a skew tent map in the
//! switching coordinate `x` driving an affine block `Y`. Its basic cycles
//! `R L^(n-1)` are available in closed form ([`cycle::solve_cycle`]), their
//! parameter regions are classified by [`skew_tent::classify`], and
//! [`sim`] provides the brute-force counterpart used to check them.
//! [`plrnn`] reduces a PLRNN near one switching boundary to the canonical
//! form.
//!
//! ```
//! use pwl_cycles::{cycle, CanonicalSystem};
//!
//! let sys = CanonicalSystem::with_diagonal_block(
//!     0.4, -4.0,
//!     &[1.0, 0.5, 0.6], &[0.5, 1.0, 1.0],
//!     &[0.4, 0.5, 0.6], &[1.0, 0.0, 1.0],
//!     0.8,
//! )?;
//! let orbit = cycle::solve_cycle(&sys, 3)?;
//! assert_eq!(orbit.sequence.to_string(), "RLL");
//! assert!(orbit.stable);
//! # Ok::<(), pwl_cycles::Error>(())
//! ```

pub mod atlas;
pub mod cycle;
mod error;
pub mod linalg;
pub mod plrnn;
pub mod sim;
pub mod skew_tent;
pub mod symbolic;
pub mod system;
mod tolerance;

pub use cycle::CycleSolution;
pub use error::{Error, Result};
pub use skew_tent::{ParamClassification, SkewTentParams, Verdict, XCycle};
pub use symbolic::{Itinerary, MuSign, Symbol};
pub use system::{CanonicalSystem, State};
pub use tolerance::Tolerances;

// The guide under book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/skew_tent.md")]
    mod skew_tent {}
    #[doc = include_str!("../../../book/src/cycles.md")]
    mod cycles {}
    #[doc = include_str!("../../../book/src/atlas.md")]
    mod atlas {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/plrnn.md")]
    mod plrnn {}
}
