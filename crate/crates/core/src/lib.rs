//! Exact exponent calculus for a coupled elliptic regularity bootstrap in two
//! dimensions: integrability-gain rules, the abstract iteration and its stall
//! at `q_-`, the Euler–Lagrange refinement, traces and a scheme language.
//!
//! ```
//! use exponent_bootstrap::{classify, Exponent, Regime};
//!
//! let p: Exponent = "21/5".parse().unwrap();
//! let c = classify(&p).unwrap();
//! assert_eq!(c.regime, Regime::Two);
//! assert_eq!(c.stall.unwrap().q_star.to_string(), "42/17-o");
//! ```

pub mod bootstrap;
pub mod cli;
pub mod dsl;
pub mod error;
pub mod euler_lagrange;
pub mod exponents;
pub mod rules;
pub mod trace;

pub use bootstrap::{
    bootstrap_run, bootstrap_run_with, bootstrap_step, classify, critical_p, fixed_points,
    map_update, q_barrier, spinor_update, stall_radicand, BootstrapOptions, BootstrapRun,
    Classification, DiscriminantSign, FixedPointReport, Regime, RegularityState, Stall,
};
pub use error::{Error, Result};
pub use euler_lagrange::{el_run, el_step, el_steps_needed, ElRun};
pub use exponents::{
    exp_compare, exp_holder, exp_sobolev_conj_2d, parse_rational, surd_eval, ExpValue, Exponent,
    QuadraticSurd,
};
pub use trace::{CaseTag, IterationTrace, StateSnapshot, TraceStep};
