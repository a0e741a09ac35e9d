//! Streaming enumeration of all subspaces of F_q^n by pivot pattern.

use super::{digits, unit_vector, Rows, Subspace};

/// Number of k-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Total number of subspaces of F_q^n.
pub fn galois_number(n: usize, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Every subspace whose canonical basis has exactly these pivot columns.
pub fn subspaces_with_pivots(
    q: u8,
    n: usize,
    pivots: Vec<usize>,
) -> impl Iterator<Item = Subspace> + Send + Clone {
    // (row, column) slots that are free in the reduced form
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| {
            let pivots = &pivots;
            (p + 1..n)
                .filter(move |c| !pivots.contains(c))
                .map(move |c| (i, c))
        })
        .collect();
    let base: Rows = pivots.iter().map(|&p| unit_vector(q, p)).collect();
    let count = (q as u64).pow(free.len() as u32);
    (0..count).map(move |code| {
        let mut rows = base.clone();
        for (&(i, c), d) in free.iter().zip(digits(code, q, free.len())) {
            if d != 0 {
                rows[i] |= if q == 2 {
                    1 << c
                } else {
                    (d as u64) << (4 * c)
                };
            }
        }
        Subspace::from_canonical_rows(q, n, rows)
    })
}

pub fn subspaces_of_dim(q: u8, n: usize, k: usize) -> impl Iterator<Item = Subspace> + Send {
    pivot_patterns(n, k)
        .into_iter()
        .flat_map(move |p| subspaces_with_pivots(q, n, p))
}

/// Every subspace of F_q^n exactly once, grouped by increasing dimension.
pub fn enumerate_subspaces(q: u8, n: usize) -> impl Iterator<Item = Subspace> + Send {
    (0..=n).flat_map(move |k| subspaces_of_dim(q, n, k))
}
