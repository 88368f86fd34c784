//! Counter-based SplitMix64.
//!
//! Draw `i` is a pure function of `(seed, i)`:
//! `mix(seed + (i + 1) · 0x9E3779B97F4A7C15)` with wrapping arithmetic.
//! Any language with 64-bit unsigned integers reproduces the stream from
//! the test vectors below.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    seed: u64,
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { seed }
    }

    pub fn u64_at(&self, counter: u64) -> u64 {
        mix(self.seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn unit_at(&self, counter: u64) -> f64 {
        (self.u64_at(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform_at(&self, counter: u64, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit_at(counter)
    }
}

/// Sequential view over the counter stream.
#[derive(Debug, Clone)]
pub struct Stream {
    rng: SplitMix64,
    next: u64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream {
            rng: SplitMix64::new(seed),
            next: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = self.rng.u64_at(self.next);
        self.next += 1;
        v
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let v = self.rng.uniform_at(self.next, lo, hi);
        self.next += 1;
        v
    }
}
