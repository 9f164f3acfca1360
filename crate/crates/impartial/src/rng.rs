//! Minimal splitmix64-based randomness, pinned here so that seeded runs stay
//! byte-stable across platforms and dependency upgrades.

/// 64-bit finalizer from the splitmix64 generator. Bijective, so distinct
/// inputs never collide.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Maps a word to the unit interval [0, 1) using the top 53 bits.
pub(crate) fn unit_f64(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

/// Sequential splitmix64 stream.
#[derive(Clone, Debug)]
pub(crate) struct Stream {
    state: u64,
}

impl Stream {
    pub(crate) fn new(seed: u64) -> Self {
        Stream { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        mix64(self.state)
    }

    pub(crate) fn next_unit(&mut self) -> f64 {
        unit_f64(self.next_u64())
    }

    /// Unbiased draw from [0, bound) by rejection sampling.
    pub(crate) fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // Largest multiple of `bound` representable in u64 arithmetic.
        let cutoff = u64::MAX - u64::MAX % bound;
        loop {
            let word = self.next_u64();
            if word < cutoff {
                return word % bound;
            }
        }
    }

    /// In-place Fisher-Yates shuffle.
    pub(crate) fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix64_is_deterministic() {
        assert_eq!(mix64(0), mix64(0));
        assert_ne!(mix64(0), mix64(1));
    }

    #[test]
    fn unit_f64_stays_in_range() {
        let mut s = Stream::new(7);
        for _ in 0..10_000 {
            let u = s.next_unit();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn next_below_is_in_range_and_covers_small_bounds() {
        let mut s = Stream::new(42);
        let mut seen = [false; 5];
        for _ in 0..1_000 {
            let x = s.next_below(5) as usize;
            assert!(x < 5);
            seen[x] = true;
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn shuffle_produces_a_permutation() {
        let mut s = Stream::new(3);
        let mut v: Vec<usize> = (0..100).collect();
        s.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<_>>());
        assert_ne!(v, (0..100).collect::<Vec<_>>());
    }
}
