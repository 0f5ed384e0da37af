//! Exact statistics of a two-parameter persistent random walk.
//!
//! A walker on the integer lattice keeps its direction with probability
//! `eps_r` (moving right) or `eps_l` (moving left) and reverses otherwise.
//! This crate computes the exact joint distribution of the endpoint `x`
//! and the reversal count `k` after `n` steps, maps the parameters to and
//! from their exponential-family coordinates, and estimates the parameters
//! back from observed walk statistics — all cross-validated against
//! exhaustive enumeration and seeded Monte Carlo.
//!
//! # Quick start
//!
//! ```
//! use prwalk::{JointPmf, ModelParams};
//!
//! let params = ModelParams::new(0.7, 0.4).unwrap();
//! let table = JointPmf::closed_form(20, &params);
//! assert!((table.total_mass() - 1.0).abs() < 1e-12);
//! assert!((table.mean_k() - prwalk::genfunc::mean_k(20, &params)).abs() < 1e-10);
//! ```
//!
//! The `prwalk` binary exposes the same machinery as subcommands
//! (`pmf`, `moments`, `simulate`, `estimate`, `figure1`).

pub mod combinatorics;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod genfunc;
pub mod io;
pub mod logspace;
pub mod model;
pub mod rational;
pub mod sim;
pub mod thermo;
pub mod tolerances;

pub use error::{Error, Result};
pub use estimate::{estimate_confidence, estimate_params, ConfidenceIntervals, SampleStats};
pub use exact::{dp_pmf, joint_pmf, q_pmf, DpPmf, JointPmf, PmfEntry};
pub use model::{Direction, ModelParams, StationaryDist, WalkOutcome};
pub use rational::RationalParams;
pub use sim::{enumerate_exact, simulate, EmpiricalDist, Sigma0Mode, SimConfig};
pub use thermo::{boundary_averages, from_thermo, to_thermo, BoundaryAverages, ThermoParams};
