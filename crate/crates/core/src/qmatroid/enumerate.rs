//! Exhaustive generation of all q-matroids on a tiny ground space.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::subspace::SubspaceLattice;

use super::iso::{is_isomorphic, IsoVerdict};
use super::QMatroid;

/// One representative per isomorphism class of q-matroids on F_2^n, n <= 3.
///
/// Ranks are assigned in lattice order (by dimension). Each value must be
/// within one of every hyperplane's rank, and submodularity is checked as
/// soon as the sum of a pair is assigned.
pub fn enumerate_qmatroids(q: u8, n: usize, budget: Budget) -> Result<Vec<QMatroid>> {
    if q != 2 || n > 3 {
        return Err(Error::AmbientTooLarge { q, n });
    }
    let lattice = SubspaceLattice::get(q, n, budget)?;
    let elems = lattice.elements();
    let len = lattice.len();
    // pairs (x, y, meet) of incomparable subspaces whose sum is element i
    let mut pairs: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); len];
    for x in 0..len {
        for y in x + 1..len {
            if !elems[x].comparable(&elems[y]) {
                let s = lattice.id_of(&elems[x].sum(&elems[y]));
                let m = lattice.id_of(&elems[x].intersect(&elems[y]));
                pairs[s].push((x, y, m));
            }
        }
    }
    let down = lattice.down();
    let mut ranks = vec![0u32; len];
    let mut tables = Vec::new();
    assign(1, &mut ranks, down, &pairs, &mut tables);

    let mut reps: Vec<QMatroid> = Vec::new();
    for t in tables {
        let m = QMatroid::from_rank_table(lattice.clone(), t)?;
        let mut duplicate = false;
        for r in &reps {
            if let IsoVerdict::Yes(_) = is_isomorphic(r, &m, budget)? {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            reps.push(m);
        }
    }
    Ok(reps)
}

fn assign(
    i: usize,
    ranks: &mut Vec<u32>,
    down: &[Vec<u32>],
    pairs: &[Vec<(usize, usize, usize)>],
    out: &mut Vec<Vec<u32>>,
) {
    if i == ranks.len() {
        out.push(ranks.clone());
        return;
    }
    let lo = down[i]
        .iter()
        .map(|&h| ranks[h as usize])
        .max()
        .unwrap_or(0);
    let hi = down[i]
        .iter()
        .map(|&h| ranks[h as usize] + 1)
        .min()
        .unwrap_or(0);
    for r in lo..=hi {
        ranks[i] = r;
        let submodular = pairs[i]
            .iter()
            .all(|&(x, y, m)| r + ranks[m] <= ranks[x] + ranks[y]);
        if submodular {
            assign(i + 1, ranks, down, pairs, out);
        }
    }
}
