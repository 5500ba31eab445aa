//! Counter-based SplitMix64 streams.
//!
//! ```text
//! GAMMA = 0x9E3779B97F4A7C15
//! mix(z):
//!     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!     return z ^ (z >> 31)
//! key(seed, index) = mix(seed ^ mix(index * GAMMA + GAMMA))
//! draw(seed, index, c) = mix(key(seed, index) + (c + 1) * GAMMA)   for c = 0, 1, 2, …
//! ```
//!
//! All arithmetic is wrapping on unsigned 64-bit integers. Stream `index` of a
//! seed depends on nothing else, so samples can be generated in any order or
//! in parallel and stay bit-identical.

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct Stream {
    key: u64,
    counter: u64,
}

impl Stream {
    pub fn new(seed: u64, index: u64) -> Self {
        let key = mix(seed ^ mix(index.wrapping_mul(GAMMA).wrapping_add(GAMMA)));
        Stream { key, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix(self.key.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Draw threshold for probability `p`: an event fires when `draw < threshold`.
/// `None` means always (p = 1).
pub fn bernoulli_threshold(p: f64) -> Option<u64> {
    if p >= 1.0 {
        None
    } else if p <= 0.0 {
        Some(0)
    } else {
        Some((p * 18_446_744_073_709_551_616.0) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        // mix of the plain SplitMix64 state after one step from 0.
        assert_eq!(mix(GAMMA), 0xE220_A839_7B1D_CDAF);
        let mut a = Stream::new(42, 7);
        let mut b = Stream::new(42, 7);
        let xs: Vec<u64> = (0..5).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..5).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(Stream::new(42, 8).next_u64(), xs[0]);
        assert_ne!(Stream::new(43, 7).next_u64(), xs[0]);
    }

    #[test]
    fn uniformity_rough() {
        let mut s = Stream::new(1, 0);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| s.next_f64()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.005);
    }

    #[test]
    fn thresholds() {
        assert_eq!(bernoulli_threshold(0.0), Some(0));
        assert_eq!(bernoulli_threshold(1.0), None);
        assert_eq!(bernoulli_threshold(0.5), Some(1 << 63));
    }
}
