//! Data-parallel helpers.
//!
//! With the `parallel` feature enabled these run on the rayon global pool;
//! otherwise they are plain sequential loops. Callers get the same results
//! in the same order either way, so output never depends on the feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps every item and collects the results in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Maps every item and combines the results with an associative,
/// commutative `combine`.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, R, I, F, C>(items: Vec<T>, identity: I, f: F, combine: C) -> R
where
    T: Send,
    R: Send,
    I: Fn() -> R + Sync + Send,
    F: Fn(T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    items.into_par_iter().map(f).reduce(identity, combine)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, R, I, F, C>(items: Vec<T>, identity: I, f: F, combine: C) -> R
where
    I: Fn() -> R,
    F: Fn(T) -> R,
    C: Fn(R, R) -> R,
{
    items.into_iter().map(f).fold(identity(), combine)
}

/// True when work is dispatched to rayon.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
