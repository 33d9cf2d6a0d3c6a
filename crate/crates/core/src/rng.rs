//! Seeded, splittable random streams.
//!
//! Every stream is a ChaCha8 generator keyed by a 64-bit seed and selected by
//! a 64-bit stream id, so streams are platform independent and two ids never
//! share state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GpRng = ChaCha8Rng;

/// Stream used for initialization, selection and breeding.
pub const MASTER_STREAM: u64 = 0;

const EVAL_TAG: u64 = 1 << 63;
const DATA_TAG: u64 = 1 << 62;

pub fn derive_rng(seed: u64, stream_id: u64) -> GpRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Stream id for evaluating individual `index` of `generation`.
pub fn eval_stream(generation: u64, index: u64) -> u64 {
    EVAL_TAG | ((generation & 0x7fff_ffff) << 32) | (index & 0xffff_ffff)
}

/// Stream id for data sampling (benchmark datasets and the like).
pub fn data_stream(tag: u64) -> u64 {
    DATA_TAG | (tag & (DATA_TAG - 1))
}
