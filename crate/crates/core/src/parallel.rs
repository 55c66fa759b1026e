//! Deterministic batch splitting.
//!
//! A batch of `n` draws is cut into `workers` contiguous chunks; chunk `i`
//! always consumes substream `i` of the master seed. Chunks run on rayon when
//! the `parallel` feature is enabled and in order otherwise. Results are
//! concatenated in chunk order either way, so output depends only on
//! `(seed, n, workers)`.

use crate::rng::RngStream;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sizes of the chunks a batch of `n` is split into; the first `n % workers`
/// chunks carry one extra item.
pub fn chunk_sizes(n: usize, workers: usize) -> Vec<usize> {
    let workers = workers.max(1);
    let base = n / workers;
    let extra = n % workers;
    (0..workers).map(|i| base + usize::from(i < extra)).collect()
}

/// Runs `job(rng, chunk_len)` once per chunk, in parallel when available.
pub fn map_chunks<T, F>(seed: u64, n: usize, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RngStream, usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        chunk_sizes(n, workers)
            .into_par_iter()
            .enumerate()
            .map(|(i, len)| job(&mut RngStream::substream(seed, i as u64), len))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_chunks_sequential(seed, n, workers, job)
    }
}

/// Same chunk layout as [`map_chunks`], always on the calling thread.
pub fn map_chunks_sequential<T, F>(seed: u64, n: usize, workers: usize, job: F) -> Vec<T>
where
    F: Fn(&mut RngStream, usize) -> T,
{
    chunk_sizes(n, workers)
        .into_iter()
        .enumerate()
        .map(|(i, len)| job(&mut RngStream::substream(seed, i as u64), len))
        .collect()
}

/// Order-preserving map over a slice.
pub fn map_slice<A, B, F>(items: &[A], f: F) -> Vec<B>
where
    A: Sync,
    B: Send,
    F: Fn(&A) -> B + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
