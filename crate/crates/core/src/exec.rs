//! Execution-mode plumbing: the data-parallel inner loops (KL table fills,
//! torus point counts, certificate grids) run either sequentially or on the
//! rayon pool. The `parallel` feature controls availability; results are
//! identical in both modes and independent of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

// derive(Default) cannot place the default on a cfg-dependent variant
#[allow(clippy::derivable_impls)]
impl Default for ExecMode {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            ExecMode::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.par_iter().map(f).collect(),
    }
}

/// Order-preserving map over an index range.
pub fn map_range<U, F>(mode: ExecMode, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Exact sum of `f(i)` for `i` in `0..n`.
pub fn sum_range<F>(mode: ExecMode, n: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).sum(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => (0..n).into_par_iter().map(f).sum(),
    }
}
