//! Reproducible reductions.
//!
//! Every reduction in the crate goes through [`pairwise_sum`]: slices of at
//! most [`BLOCK`] terms are added left to right, longer slices are split at
//! `len / 2` and the two halves summed recursively. The result depends only on
//! the order of the input terms, which callers always produce in
//! lexicographic index order.

use std::ops::Add;

/// Leaf size of the summation tree.
pub const BLOCK: usize = 8;

pub fn pairwise_sum<T>(xs: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    if xs.len() <= BLOCK {
        return xs.iter().fold(T::default(), |acc, &x| acc + x);
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    pairwise_sum(lo) + pairwise_sum(hi)
}
