//! Derivative-free search for curves that minimise classical variational
//! functionals.
//!
//! Candidates are piecewise-linear functions on a fixed uniform grid
//! ([`plfunc`]). A (1,λ) evolution strategy ([`es`]) perturbs the node
//! heights with Gaussian noise, repairs each offspring into the feasible set
//! and keeps the best offspring. Objectives are integrated exactly per
//! segment ([`functionals`]) and compared against closed-form optima
//! ([`exact`]). [`problems`] wires these together for four instances:
//!
//! * the brachistochrone from `(0,10)` to `(10,0)`;
//! * the brachistochrone restricted to convex curves under the chord from
//!   `(0,1)` to `(b,0)`;
//! * Newton's body of minimal resistance of radius `r` and height `H`;
//! * a two-sided body in a rarefied medium of chaotically moving particles.
//!
//! ```
//! use plevo::{es, problems};
//!
//! let problem = problems::make_brachistochrone(20).unwrap();
//! let config = es::EsConfig { iterations: 2_000, seed: 1, ..Default::default() };
//! let outcome = es::run(&problem, &config).unwrap();
//! assert!(outcome.best_objective < 2.0);
//! ```

// NaN must fail parameter checks, so `!(x > 0.0)` is intended
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod es;
pub mod exact;
pub mod functionals;
pub mod plfunc;
pub mod problems;
pub mod quadrature;
pub mod rng;

pub use error::{Error, Result};
pub use es::{run, EsConfig, EsState, Problem, RunOutcome, RunTrace, TraceRecord};
pub use plfunc::{Curve, Grid, PlFunction};
pub use problems::{ProblemKind, ProblemSpec, ReferenceSolution, Shape};
pub use rng::GaussianSource;
