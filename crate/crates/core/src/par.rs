//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon global pool. Without it both variants run sequentially. Every helper
//! preserves input order, so results never depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Indices in `0..end` satisfying `pred`, in increasing order.
    pub fn filter_range<F>(self, end: u64, pred: F) -> Vec<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..end).into_par_iter().filter(|&k| pred(k)).collect(),
            _ => (0..end).filter(|&k| pred(k)).collect(),
        }
    }

    /// `true` iff `pred` holds for every index in `0..end`.
    pub fn all_range<F>(self, end: u64, pred: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..end).into_par_iter().all(pred),
            _ => (0..end).all(pred),
        }
    }
}
