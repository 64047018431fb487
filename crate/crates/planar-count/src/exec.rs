//! Thin switch between rayon and sequential execution.
//!
//! Hot loops funnel through these helpers so the `parallel` feature only has
//! to be handled in one place. All reductions are exact and associative, so
//! scheduling order never changes a result.

use num::BigInt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn sum_bigint<T, F>(items: Vec<T>, f: F) -> BigInt
where
    T: Send,
    F: Fn(T) -> BigInt + Sync + Send,
{
    items.into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn sum_bigint<T, F>(items: Vec<T>, f: F) -> BigInt
where
    T: Send,
    F: Fn(T) -> BigInt + Sync + Send,
{
    items.into_iter().map(f).sum()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}
