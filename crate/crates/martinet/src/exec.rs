//! Execution strategy for the data-parallel inner loops.
//!
//! Portrait seeds and sweep samples are independent pure computations;
//! results are collected in input order, so output artifacts are
//! byte-stable regardless of scheduling. With the `parallel` feature
//! (default) [`map_collect`] fans out over rayon; without it the build
//! falls back to the sequential path. [`map_collect_seq`] is always
//! sequential and exists so benchmarks can compare both from one binary.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
