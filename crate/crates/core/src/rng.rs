//! Seeded random streams. Every randomized routine in the crate draws from
//! `stream_rng(seed, stream)`, so results depend only on the user seed and
//! the parameters that pick the stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type ExperimentRng = ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> ExperimentRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
