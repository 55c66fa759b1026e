//! Seedable uniform/normal variate source shared by every sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Deterministic stream of variates.
///
/// A stream is identified by `(seed, substream)`. Substreams of the same seed
/// are independent ChaCha streams, which is how batches are split over
/// workers without changing results.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    substream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    pub fn substream(seed: u64, index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(index);
        Self {
            seed,
            substream: index,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn substream_index(&self) -> u64 {
        self.substream
    }

    /// Uniform variate on `[0, 1)` with 53 bits of resolution.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Standard normal variate (ziggurat).
    #[inline]
    pub fn next_standard_normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniform index in `0..n`.
    #[inline]
    pub fn next_index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..1000 {
            assert_eq!(a.next_uniform().to_bits(), b.next_uniform().to_bits());
            assert_eq!(
                a.next_standard_normal().to_bits(),
                b.next_standard_normal().to_bits()
            );
        }
    }

    #[test]
    fn substreams_differ() {
        let mut a = RngStream::substream(42, 0);
        let mut b = RngStream::substream(42, 1);
        let va: Vec<f64> = (0..8).map(|_| a.next_uniform()).collect();
        let vb: Vec<f64> = (0..8).map(|_| b.next_uniform()).collect();
        assert_ne!(va, vb);
        assert_eq!(b.substream_index(), 1);
        assert_eq!(b.seed(), 42);
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = RngStream::new(7);
        for _ in 0..100_000 {
            let u = rng.next_uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }

    // Smoke checks of the kind a dieharder run starts with: moments, serial
    // correlation and bit balance.
    #[test]
    fn uniform_smoke_statistics() {
        let n = 200_000;
        let mut rng = RngStream::new(2024);
        let u: Vec<f64> = (0..n).map(|_| rng.next_uniform()).collect();
        let mean = u.iter().sum::<f64>() / n as f64;
        let var = u.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 4.0 * (1.0 / 12.0 / n as f64).sqrt());
        assert!((var - 1.0 / 12.0).abs() < 1e-3);

        let lag1: f64 = u.windows(2).map(|w| (w[0] - 0.5) * (w[1] - 0.5)).sum::<f64>()
            / (n - 1) as f64
            / (1.0 / 12.0);
        assert!(lag1.abs() < 4.0 / (n as f64).sqrt());

        let mut counts = [0usize; 10];
        for x in &u {
            counts[(x * 10.0) as usize] += 1;
        }
        let expected = n as f64 / 10.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 9 degrees of freedom, 0.1% upper point.
        assert!(chi2 < 27.88, "chi2 = {chi2}");
    }

    #[test]
    fn normal_moments() {
        let n = 200_000;
        let mut rng = RngStream::new(99);
        let z: Vec<f64> = (0..n).map(|_| rng.next_standard_normal()).collect();
        let mean = z.iter().sum::<f64>() / n as f64;
        let var = z.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 4.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 0.02);
    }

    #[test]
    fn index_covers_range() {
        let mut rng = RngStream::new(1);
        let mut seen = [false; 6];
        for _ in 0..1000 {
            seen[rng.next_index(6)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
