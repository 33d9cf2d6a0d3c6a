//! Cartesian GP: fixed-length integer genomes on a feed-forward node grid.

mod genome;
mod model;

pub use genome::{
    cgp_to_expression, decode_active, evaluate_cgp, init_random_cgp, point_mutation, ActiveSet,
    CgpConfig, CgpGenome, CompiledCgp,
};
pub use model::CgpModel;
