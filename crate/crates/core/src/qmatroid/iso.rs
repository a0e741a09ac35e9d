//! Isomorphism testing by invariants and a pruned search over GL(n, q).

use crate::budget::Budget;
use crate::error::Result;
use crate::subspace::{axpy, entry, unit_vector, Echelon, Subspace};

use super::QMatroid;

/// Largest |GL(n, q)| for which the exhaustive search runs.
pub const GL_SEARCH_LIMIT: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Rows are the images of the unit vectors.
    Yes(Vec<Vec<u8>>),
    /// Name of an invariant that differs.
    No(String),
    Unknown,
}

fn gl_order(q: u8, n: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

/// Shape of the cyclic-flat lattice: per element (dim, rank, #lower covers,
/// #upper covers), sorted.
fn hasse_shape(m: &QMatroid, budget: Budget) -> Result<Vec<(usize, u32, usize, usize)>> {
    let z = m.cyclic_flats(budget)?;
    let edges = z.hasse_edges();
    let mut shape: Vec<_> = z
        .elements()
        .iter()
        .enumerate()
        .map(|(i, (s, r))| {
            let below = edges.iter().filter(|e| e.1 == i).count();
            let above = edges.iter().filter(|e| e.0 == i).count();
            (s.dim(), *r, below, above)
        })
        .collect();
    shape.sort();
    Ok(shape)
}

/// Name of the first invariant on which the two q-matroids differ.
pub fn invariants_differ(a: &QMatroid, b: &QMatroid, budget: Budget) -> Result<Option<String>> {
    if a.q() != b.q() || a.n() != b.n() {
        return Ok(Some("ground space".into()));
    }
    if a.full_rank() != b.full_rank() {
        return Ok(Some("rank".into()));
    }
    let (za, zb) = (a.cyclic_flats(budget)?, b.cyclic_flats(budget)?);
    if za.len() != zb.len() {
        return Ok(Some("number of cyclic flats".into()));
    }
    if za.profile() != zb.profile() {
        return Ok(Some("cyclic flat dimensions and ranks".into()));
    }
    if hasse_shape(a, budget)? != hasse_shape(b, budget)? {
        return Ok(Some("cyclic flat lattice shape".into()));
    }
    Ok(None)
}

/// Looks for a linear automorphism τ of F_q^n with r_b(τ(V)) = r_a(V).
pub fn is_isomorphic(a: &QMatroid, b: &QMatroid, budget: Budget) -> Result<IsoVerdict> {
    if let Some(name) = invariants_differ(a, b, budget)? {
        return Ok(IsoVerdict::No(name));
    }
    let (q, n) = (a.q(), a.n());
    if gl_order(q, n) > GL_SEARCH_LIMIT {
        return Ok(IsoVerdict::Unknown);
    }
    let (lattice, ra) = a.rank_table(budget)?;
    let (_, rb) = b.rank_table(budget)?;

    // Subspaces grouped by their highest nonzero coordinate.
    let mut levels: Vec<Vec<RankedBasis>> = vec![Vec::new(); n];
    for (s, &r) in lattice.elements().iter().zip(&ra) {
        if s.is_zero() {
            continue;
        }
        let basis = s.basis();
        let top = basis
            .iter()
            .map(|row| row.iter().rposition(|&c| c != 0).unwrap())
            .max()
            .unwrap();
        levels[top].push((basis, r));
    }

    let total = (q as u64).pow(n as u32);
    let mut images: Vec<u64> = Vec::with_capacity(n);
    let found = search(
        q,
        n,
        total,
        &levels,
        &|s: &Subspace| rb[lattice.id_of(s)],
        &mut images,
    );
    Ok(match found {
        true => IsoVerdict::Yes(
            images
                .iter()
                .map(|&v| (0..n).map(|j| entry(v, j, q)).collect())
                .collect(),
        ),
        false => IsoVerdict::No("no linear map preserves ranks".into()),
    })
}

/// A basis with the rank of its span.
type RankedBasis = (Vec<Vec<u8>>, u32);

fn search(
    q: u8,
    n: usize,
    total: u64,
    levels: &[Vec<RankedBasis>],
    rank_b: &dyn Fn(&Subspace) -> u32,
    images: &mut Vec<u64>,
) -> bool {
    let k = images.len();
    if k == n {
        return true;
    }
    let span = Echelon::from_subspace(&Subspace::span_packed(q, n, images.iter().copied()));
    for code in 1..total {
        let v = vector_from_code(code, q, n);
        if span.reduce(v) == 0 {
            continue;
        }
        images.push(v);
        let consistent = levels[k].iter().all(|(basis, r)| {
            let mapped = basis.iter().map(|row| {
                row.iter()
                    .zip(images.iter())
                    .fold(0, |acc, (&c, &w)| axpy(acc, c, w, q, n))
            });
            rank_b(&Subspace::span_packed(q, n, mapped)) == *r
        });
        if consistent && search(q, n, total, levels, rank_b, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn vector_from_code(mut code: u64, q: u8, n: usize) -> u64 {
    let mut v = 0;
    for j in 0..n {
        let d = (code % q as u64) as u8;
        code /= q as u64;
        if d != 0 {
            v = axpy(v, d, unit_vector(q, j), q, n);
        }
    }
    v
}
