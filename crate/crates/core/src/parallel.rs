//! Data-parallel helpers for the per-node and per-mode loops.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it
//! they are plain sequential loops. Only element-wise maps go through here:
//! reductions (norms, errors) are always summed sequentially so results do
//! not depend on the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum number of nodes handed to a single rayon task.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 4096;

/// Element-wise loops shorter than this stay on the calling thread: per-step
/// work on typical grids is a few microseconds, well under the cost of a
/// hand-off to the pool.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 1 << 15;

#[cfg(feature = "parallel")]
fn worth_splitting(n: usize) -> bool {
    n >= PAR_THRESHOLD && rayon::current_num_threads() > 1
}

/// Applies `f(index, &mut item)` to every element.
pub fn for_each_indexed<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !worth_splitting(items.len()) {
        items.iter_mut().enumerate().for_each(|(i, v)| f(i, v));
    } else {
        items
            .par_iter_mut()
            .with_min_len(MIN_CHUNK)
            .enumerate()
            .for_each(|(i, v)| f(i, v));
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter_mut().enumerate().for_each(|(i, v)| f(i, v));
    }
}

/// Builds a vector of length `n` from `f(index)`.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !worth_splitting(n) {
        (0..n).map(f).collect()
    } else {
        (0..n).into_par_iter().with_min_len(MIN_CHUNK).map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Runs two independent closures, concurrently when the feature allows it.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if rayon::current_num_threads() > 1 {
        rayon::join(a, b)
    } else {
        (a(), b())
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}

/// Maps a slice of independent jobs, preserving order.
pub fn map_jobs<T, R, F>(jobs: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if rayon::current_num_threads() > 1 {
        jobs.par_iter().map(f).collect()
    } else {
        jobs.iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(f).collect()
    }
}

/// True when the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Like [`map_indices`] for items that each carry real work (a small matrix
/// exponential or inverse), so splitting pays off on ordinary grid sizes.
pub fn map_heavy<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= 64 && rayon::current_num_threads() > 1 {
        return (0..n).into_par_iter().with_min_len(32).map(f).collect();
    }
    (0..n).map(f).collect()
}
