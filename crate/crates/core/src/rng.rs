//! Counter-based random streams.
//!
//! A stream is identified by `(base_seed, stream_index)`. The seed keys a
//! ChaCha8 generator and the index selects its 64-bit stream word, so every
//! replicate owns an independent, reproducible substream regardless of which
//! worker runs it.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub base_seed: u64,
    pub stream_index: u64,
}

impl RngStream {
    pub fn new(base_seed: u64, stream_index: u64) -> Self {
        Self {
            base_seed,
            stream_index,
        }
    }

    /// Stream for replicate `rep` of a study at sample size `n`.
    ///
    /// The sample size occupies the high 32 bits so adding sizes to a study
    /// never shifts the streams of sizes already present.
    pub fn for_replicate(base_seed: u64, n: usize, rep: usize) -> Self {
        Self::new(base_seed, ((n as u64) << 32) | (rep as u64 & 0xffff_ffff))
    }

    pub fn generator(&self) -> StreamRng {
        let mut inner = ChaCha8Rng::seed_from_u64(self.base_seed);
        inner.set_stream(self.stream_index);
        StreamRng { inner }
    }
}

pub struct StreamRng {
    inner: ChaCha8Rng,
}

impl StreamRng {
    /// Uniform variate on the open interval (0, 1), the midpoint of one of
    /// `2^52` equal cells.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        ((self.inner.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}
