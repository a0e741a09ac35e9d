#![allow(dead_code)]

use qmat_core::{QMatroid, Subspace};

/// Binary span of sums of unit vectors, 1-based: `sp(4, &[&[1, 3], &[2, 4]])`
/// is <e1+e3, e2+e4>.
pub fn sp(n: usize, vectors: &[&[usize]]) -> Subspace {
    let rows: Vec<Vec<u8>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0u8; n];
            for &i in v.iter() {
                row[i - 1] ^= 1;
            }
            row
        })
        .collect();
    Subspace::span(2, n, &rows).unwrap()
}

pub fn u(k: usize, n: usize) -> QMatroid {
    QMatroid::uniform(2, k, n).unwrap()
}

/// The factors used throughout the free-product suites.
pub fn factor_pool() -> Vec<(&'static str, QMatroid)> {
    vec![
        ("U01", u(0, 1)),
        ("U11", u(1, 1)),
        ("U12", u(1, 2)),
        ("U23", u(2, 3)),
    ]
}
