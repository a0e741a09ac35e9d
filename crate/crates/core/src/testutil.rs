//! Shorthand for binary subspaces in unit tests.

use crate::subspace::Subspace;

/// Span over GF(2) of sums of unit vectors, 1-based: `sp(4, &[&[1, 3], &[2, 4]])`
/// is <e1+e3, e2+e4>.
pub fn sp(n: usize, vectors: &[&[usize]]) -> Subspace {
    Subspace::span_packed(
        2,
        n,
        vectors
            .iter()
            .map(|v| v.iter().fold(0u64, |acc, &i| acc ^ (1 << (i - 1)))),
    )
}
