use crate::{Error, Result};

/// xorshift128+ with the (23, 18, 5) shift triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Xorshift128Plus {
    s0: u64,
    s1: u64,
}

impl Xorshift128Plus {
    /// Seeds the generator from its raw state. The all-zero state is a fixed
    /// point and is rejected.
    pub fn new(s0: u64, s1: u64) -> Result<Self> {
        if s0 == 0 && s1 == 0 {
            return Err(Error::InvalidArgument("xorshift128+ state must not be all zero".into()));
        }
        Ok(Self { s0, s1 })
    }

    /// Expands a single 64-bit seed with splitmix64.
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = seed;
        let mut next = || {
            sm = sm.wrapping_add(0x9e37_79b9_7f4a_7c15);
            mix64(sm)
        };
        let s0 = next();
        let s1 = next();
        if s0 == 0 && s1 == 0 {
            Self { s0: 0, s1: 1 }
        } else {
            Self { s0, s1 }
        }
    }

    pub fn state(&self) -> (u64, u64) {
        (self.s0, self.s1)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.s0;
        let y = self.s1;
        x ^= x << 23;
        x ^= x >> 18;
        x ^= y ^ (y >> 5);
        self.s0 = y;
        self.s1 = x;
        y.wrapping_add(x)
    }

    /// Uniform draw in `(0, 1]`.
    #[inline]
    pub fn uniform01(&mut self) -> f64 {
        uniform_from_bits(self.next_u64())
    }

    /// Uniform index in `0..bound` (multiply-shift reduction).
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }
}

/// Maps 64 random bits to `((x >> 11) + 1) / 2^53`, which is never zero.
#[inline]
pub fn uniform_from_bits(x: u64) -> f64 {
    ((x >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal pair from two uniforms; `u1` must be positive.
#[inline]
pub fn box_muller(u1: f64, u2: f64) -> (f64, f64) {
    let radius = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    (radius * theta.cos(), radius * theta.sin())
}

/// splitmix64 finaliser.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for one frame of one sweep point.
pub fn frame_rng(seed: u64, point: u64, frame: u64) -> Xorshift128Plus {
    Xorshift128Plus::from_seed(mix64(mix64(mix64(seed) ^ point) ^ frame))
}
