//! Data-parallel map helpers. With the `parallel` feature (default) the
//! work fans out over rayon; without it the same API runs sequentially.
//! `map_collect_seq` is always sequential and exists so benchmarks can
//! compare the two paths inside one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Ordered map over a slice, parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Ordered map over a slice (sequential build).
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Always-sequential ordered map.
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
