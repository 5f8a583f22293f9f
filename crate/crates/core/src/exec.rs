//! Execution policy for the data-parallel loops (enumeration ranges, beta
//! grids, corpus batches).
//!
//! With the `parallel` feature enabled the loops run on the rayon global
//! pool. Without it, [`Execution::Parallel`] silently degrades to a
//! sequential loop, so callers never need their own `cfg` switches. Output
//! order is the input order in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over `0..len`.
    pub fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }

    /// Filter-map over the `u64` range `0..end`, split into fixed-size chunks.
    /// Results come back in ascending input order.
    pub fn filter_map_u64<U, F>(self, end: u64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(u64) -> Option<U> + Sync + Send,
    {
        const CHUNK: u64 = 1 << 14;
        let chunks = end.div_ceil(CHUNK);
        let per_chunk = |c: u64| -> Vec<U> {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(end);
            (lo..hi).filter_map(&f).collect()
        };
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            let parts: Vec<Vec<U>> = (0..chunks).into_par_iter().map(per_chunk).collect();
            return parts.into_iter().flatten().collect();
        }
        (0..chunks).flat_map(per_chunk).collect()
    }
}
