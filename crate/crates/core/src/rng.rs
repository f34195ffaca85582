//! Keyed, counter-based random streams.
//!
//! Every random quantity in the crate is drawn from a [`Stream`] identified by
//! a key `(master_seed, tag, indices...)`. The key is folded into a 64-bit
//! stream id with the SplitMix64 finalizer, and the stream then emits
//! `mix64(id + counter * GOLDEN)` for `counter = 1, 2, ...` (this is exactly
//! SplitMix64 started at `id`). Output depends only on the key and the draw
//! position, never on thread scheduling or platform word size, so experiments
//! are reproducible bit-for-bit across machines and worker counts.
//!
//! Derived draws:
//! - `uniform_below(n)`: Lemire's multiply-shift with rejection on `u64`.
//! - `bernoulli(p)`: the top 53 bits as a float in `[0, 1)`, compared `< p`.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// Tags separating the purposes streams are used for.
pub mod tag {
    pub const LINE: u64 = 0x4C49_4E45;
    pub const GAME: u64 = 0x4741_4D45;
    pub const RUN: u64 = 0x5255_4E53;
    pub const DYN_GAME: u64 = 0x4459_4E47;
    pub const SEARCH: u64 = 0x5345_4152;
}

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a key into a 64-bit stream id.
pub fn derive_seed(master: u64, tag: u64, indices: &[u64]) -> u64 {
    let mut h = mix64(master ^ GOLDEN);
    h = mix64(h.wrapping_add(tag).wrapping_mul(GOLDEN) ^ h.rotate_left(17));
    for &i in indices {
        h = mix64(
            h.wrapping_add(GOLDEN)
                .wrapping_add(mix64(i.wrapping_add(0xA076_1D64_78BD_642F))),
        );
    }
    h
}

#[derive(Debug, Clone)]
pub struct Stream {
    id: u64,
    counter: u64,
}

impl Stream {
    pub fn new(master: u64, tag: u64, indices: &[u64]) -> Self {
        Self::from_id(derive_seed(master, tag, indices))
    }

    pub fn from_id(id: u64) -> Self {
        Stream { id, counter: 0 }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.id.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    #[inline]
    pub fn uniform_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        let mut m = (self.next_u64() as u128) * (n as u128);
        let mut low = m as u64;
        if low < n {
            let threshold = n.wrapping_neg() % n;
            while low < threshold {
                m = (self.next_u64() as u128) * (n as u128);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    /// Uniform float in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// In-place Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.uniform_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
