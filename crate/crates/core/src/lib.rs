//! Minimal cross-domain genetic programming.
//!
//! Two program representations, tree-based ([`tgp`]) and Cartesian
//! ([`cgp`]), share one model contract ([`GpModel`]) and one evolutionary
//! loop ([`evolve`]). Problems come from three domains: symbolic regression
//! and logic synthesis ([`blackbox`]) and policy search ([`policy`]). The
//! [`harness`] runs seeded, repeatable experiments and writes reports.
//!
//! Real-valued code is generic over the [`Scalar`] type; the aliases at the
//! crate root fix it to `f64`, with `*32` variants for `f32`.

pub mod blackbox;
pub mod cgp;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod policy;
pub mod primitives;
pub mod rng;
pub mod scalar;
pub mod tgp;

pub use error::{GpError, Result};
pub use evolution::{
    evolve, is_ideal, tournament_select, tournament_winner, EvolutionOutcome, Fitness, GpModel,
    Hyperparameters, Individual, Problem, Program, Scheme,
};
pub use primitives::{Domain, FunctionSet, Primitive};
pub use rng::{derive_rng, GpRng};
pub use scalar::{Scalar, Value, Word};

pub type TreeNode = tgp::TreeNode<f64>;
pub type TreeForest = tgp::TreeForest<f64>;
pub type TreeModel = tgp::TreeModel<f64>;
pub type Dataset = blackbox::Dataset<f64>;
pub type BlackBoxProblem = blackbox::BlackBoxProblem<f64>;

pub type TreeForest32 = tgp::TreeForest<f32>;
pub type TreeModel32 = tgp::TreeModel<f32>;
pub type Dataset32 = blackbox::Dataset<f32>;
pub type BlackBoxProblem32 = blackbox::BlackBoxProblem<f32>;
