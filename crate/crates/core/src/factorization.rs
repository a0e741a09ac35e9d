//! Free separators, the lattice D(M), pinchpoints and the primary
//! factorization under the free product.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::constructions::free_product_with_budget;
use crate::error::{Error, Result};
use crate::qmatroid::QMatroid;
use crate::subspace::{
    axpy, check_ambient, dim_order, enumerate_subspaces, unpack, QuotientMap, Subspace,
};

/// Largest cyclic-flat family accepted by [`dm_lattice`].
pub const MAX_CYCLIC_FLATS: usize = 24;

/// A is comparable to every cyclic flat.
pub fn is_free_separator(m: &QMatroid, a: &Subspace, budget: Budget) -> Result<bool> {
    m.ground().check_same_ambient(a)?;
    let z = m.cyclic_flats(budget)?;
    Ok(z.subspaces().all(|s| s.comparable(a)))
}

/// Every free separator, streamed in dimension order.
pub fn free_separators(
    m: &QMatroid,
    budget: Budget,
) -> Result<impl Iterator<Item = Subspace> + Send> {
    let (q, n) = (m.q(), m.n());
    budget.check_lattice(q, n)?;
    let flats: Vec<Subspace> = m.cyclic_flats(budget)?.subspaces().cloned().collect();
    Ok(enumerate_subspaces(q, n).filter(move |a| flats.iter().all(|z| z.comparable(a))))
}

/// Intersections and sums of arbitrary subfamilies of the cyclic flats,
/// including the empty ones (E and 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmLattice {
    elements: Vec<Subspace>,
}

impl DmLattice {
    /// Sorted by dimension, then canonical rows.
    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.elements.binary_search_by(|x| dim_order(x, s)).is_ok()
    }

    /// Closed under the sum and intersection of the ambient lattice.
    pub fn is_sublattice(&self) -> bool {
        let e = &self.elements;
        e.iter().enumerate().all(|(i, a)| {
            e[i + 1..]
                .iter()
                .all(|b| self.contains(&a.sum(b)) && self.contains(&a.intersect(b)))
        })
    }

    /// Every pair has a least upper bound within the family (finite, with a
    /// top and bottom, so meets exist too).
    pub fn is_lattice(&self) -> bool {
        let e = &self.elements;
        e.iter().enumerate().all(|(i, a)| {
            e[i + 1..].iter().all(|b| {
                let ub: Vec<&Subspace> = e
                    .iter()
                    .filter(|c| c.contains(a) && c.contains(b))
                    .collect();
                ub.iter().any(|c| ub.iter().all(|d| d.contains(c)))
            })
        })
    }

    /// Elements comparable to all others, bottom to top. Always a chain.
    pub fn pinchpoints(&self) -> Vec<Subspace> {
        self.elements
            .iter()
            .filter(|p| self.elements.iter().all(|x| x.comparable(p)))
            .cloned()
            .collect()
    }
}

/// D(M) by pairwise closure to a fixpoint.
pub fn dm_lattice(m: &QMatroid, budget: Budget) -> Result<DmLattice> {
    let z = m.cyclic_flats(budget)?;
    if z.len() > MAX_CYCLIC_FLATS {
        return Err(Error::TooManyCyclicFlats {
            count: z.len(),
            limit: MAX_CYCLIC_FLATS,
        });
    }
    let flats: Vec<Subspace> = z.subspaces().cloned().collect();
    let meets = closure(
        flats.iter().cloned().chain([m.ground()]),
        Subspace::intersect,
    );
    let joins = closure(
        flats.into_iter().chain([Subspace::zero(m.q(), m.n())]),
        Subspace::sum,
    );
    let mut elements: Vec<Subspace> = meets.union(&joins).cloned().collect();
    elements.sort_by(dim_order);
    Ok(DmLattice { elements })
}

fn closure(
    seed: impl IntoIterator<Item = Subspace>,
    op: fn(&Subspace, &Subspace) -> Subspace,
) -> BTreeSet<Subspace> {
    let mut set: BTreeSet<Subspace> = seed.into_iter().collect();
    let mut frontier: Vec<Subspace> = set.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        let fresh: Vec<Subspace> = set
            .iter()
            .map(|b| op(&a, b))
            .filter(|c| !set.contains(c))
            .collect();
        for c in fresh {
            if set.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    set
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Uniform,
    Irreducible,
}

/// The primary flag T_0 < ... < T_k and the minors M[T_{i-1}, T_i].
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub flag: Vec<Subspace>,
    pub factors: Vec<QMatroid>,
    pub kinds: Vec<FactorKind>,
    // factor coordinates -> ambient vectors, segment by segment
    frame: Vec<u64>,
}

impl FactorizationReport {
    /// Ambient images of the unit vectors of the concatenated factor spaces.
    pub fn frame(&self) -> &[u64] {
        &self.frame
    }

    /// Image in E of a subspace of the concatenated factor space.
    pub fn to_ambient(&self, x: &Subspace) -> Subspace {
        let (q, n) = (x.q(), x.n());
        Subspace::span_packed(
            q,
            n,
            x.rows().iter().map(|&r| {
                unpack(r, q, n)
                    .iter()
                    .zip(&self.frame)
                    .fold(0, |acc, (&c, &w)| axpy(acc, c, w, q, n))
            }),
        )
    }

    /// Free product of the factors, left to right.
    pub fn reconstruct(&self, budget: Budget) -> Result<QMatroid> {
        let mut it = self.factors.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::ShapeMismatch("no factors on a zero ground space".into()))?
            .clone();
        it.try_fold(first, |acc, f| free_product_with_budget(&acc, f, budget))
    }

    /// Compares cyclic flats of the rebuilt product, carried into E, with
    /// those of M.
    pub fn reconstruction_matches(&self, m: &QMatroid, budget: Budget) -> Result<bool> {
        let rebuilt = self.reconstruct(budget)?;
        let mut carried: Vec<(Subspace, u32)> = rebuilt
            .cyclic_flats(budget)?
            .elements()
            .iter()
            .map(|(s, r)| (self.to_ambient(s), *r))
            .collect();
        carried.sort_by(|a, b| dim_order(&a.0, &b.0));
        Ok(carried == m.cyclic_flats(budget)?.elements())
    }

    /// Some pair of consecutive factors has a uniform free product.
    pub fn has_uniform_consecutive_product(&self, budget: Budget) -> Result<bool> {
        for w in self.factors.windows(2) {
            if free_product_with_budget(&w[0], &w[1], budget)?.is_uniform(budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Splits M along the pinchpoints of D(M).
pub fn primary_factorization(m: &QMatroid, budget: Budget) -> Result<FactorizationReport> {
    let flag = dm_lattice(m, budget)?.pinchpoints();
    let mut factors = Vec::new();
    let mut kinds = Vec::new();
    let mut frame = Vec::new();
    for w in flag.windows(2) {
        let factor = if w[0].is_zero() && w[1].is_full() {
            m.to_certificate(budget)?
        } else {
            m.minor(&w[0], &w[1])?.to_certificate(budget)?
        };
        frame.extend_from_slice(QuotientMap::new(&w[0], &w[1])?.complement());
        let kind = if factor.is_uniform(budget)? {
            FactorKind::Uniform
        } else {
            FactorKind::Irreducible
        };
        factors.push(factor);
        kinds.push(kind);
    }
    Ok(FactorizationReport {
        flag,
        factors,
        kinds,
        frame,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// A non-trivial free separator when reducible.
    pub witness: Option<Subspace>,
}

/// Irreducible under the free product. Ground spaces of dimension 0 or 1
/// count as irreducible; uniform q-matroids on larger spaces do not.
pub fn is_irreducible(m: &QMatroid, budget: Budget) -> Result<Irreducibility> {
    let (q, n) = (m.q(), m.n());
    if n <= 1 {
        return Ok(Irreducibility {
            irreducible: true,
            witness: None,
        });
    }
    if m.is_uniform(budget)? {
        return Ok(Irreducibility {
            irreducible: false,
            witness: Some(Subspace::unit(q, n, [0])),
        });
    }
    let witness = dm_lattice(m, budget)?
        .pinchpoints()
        .into_iter()
        .find(|p| !p.is_zero() && !p.is_full());
    Ok(Irreducibility {
        irreducible: witness.is_none(),
        witness,
    })
}

/// The five 4-spaces of rank 3 in the Vámos q-matroid (0-based coordinates).
pub const VAMOS_CIRCUITS: [[usize; 4]; 5] = [
    [0, 1, 2, 3],
    [0, 1, 4, 5],
    [2, 3, 4, 5],
    [2, 3, 6, 7],
    [4, 5, 6, 7],
];

/// Rank min(dim, 4) on F_q^8, except 3 on the five designated 4-spaces.
pub fn vamos(q: u8) -> Result<QMatroid> {
    check_ambient(q, 8)?;
    let c: Vec<Subspace> = VAMOS_CIRCUITS
        .iter()
        .map(|idx| Subspace::unit(q, 8, idx.iter().copied()))
        .collect();
    Ok(QMatroid::from_oracle(
        q,
        8,
        "vamos",
        false,
        move |a| match a.dim() {
            d if d <= 3 => d as u32,
            4 if c.contains(a) => 3,
            _ => 4,
        },
    ))
}

/// The Vámos q-matroid given directly by its cyclic flats.
pub fn vamos_certificate(q: u8) -> Result<QMatroid> {
    check_ambient(q, 8)?;
    let mut flats = vec![(Subspace::zero(q, 8), 0), (Subspace::full(q, 8), 4)];
    flats.extend(
        VAMOS_CIRCUITS
            .iter()
            .map(|idx| (Subspace::unit(q, 8, idx.iter().copied()), 3)),
    );
    QMatroid::from_cyclic_flats(q, 8, flats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{direct_sum, free_product};
    use crate::subspace::SubspaceLattice;
    use crate::testutil::sp;

    const B: Budget = Budget::DEFAULT;

    fn u(k: usize, n: usize) -> QMatroid {
        QMatroid::uniform(2, k, n).unwrap()
    }

    #[test]
    fn separators_of_products_and_sums() {
        let p = free_product(&u(1, 2), &u(1, 2)).unwrap();
        assert!(is_free_separator(&p, &sp(4, &[&[1], &[2]]), B).unwrap());
        let d = direct_sum(&u(1, 2), &u(1, 2)).unwrap();
        // 0 ⊕ E2 and E1 ⊕ 0 are both cyclic flats, so neither separates
        assert!(!is_free_separator(&d, &sp(4, &[&[3], &[4]]), B).unwrap());
        assert!(!is_free_separator(&d, &sp(4, &[&[1], &[3]]), B).unwrap());
        assert!(is_irreducible(&d, B).unwrap().irreducible);
        let all = free_separators(&u(1, 2), B).unwrap().count();
        assert_eq!(all, 5);
    }

    #[test]
    fn dm_of_uniform_and_stacked() {
        for (k, n) in [(1, 2), (2, 3), (0, 2), (3, 3)] {
            let d = dm_lattice(&u(k, n), B).unwrap();
            assert_eq!(d.elements(), &[Subspace::zero(2, n), Subspace::full(2, n)]);
        }
        let p = free_product(&u(1, 2), &u(1, 2)).unwrap();
        let d = dm_lattice(&p, B).unwrap();
        let chain = vec![
            Subspace::zero(2, 4),
            sp(4, &[&[1], &[2]]),
            Subspace::full(2, 4),
        ];
        assert_eq!(d.elements(), &chain[..]);
        assert_eq!(d.pinchpoints(), chain);
        assert!(d.is_lattice() && d.is_sublattice());
    }

    #[test]
    fn closure_reaches_fixpoint() {
        let d = direct_sum(&u(1, 2), &u(1, 2)).unwrap();
        let dm = dm_lattice(&d, B).unwrap();
        assert_eq!(dm.len(), 4);
        assert_eq!(
            dm.pinchpoints(),
            vec![Subspace::zero(2, 4), Subspace::full(2, 4)]
        );
        // three pairwise-independent lines give new meets/joins only at 0 and E
        let planes = [
            sp(3, &[&[1], &[2]]),
            sp(3, &[&[1], &[3]]),
            sp(3, &[&[2], &[3]]),
        ];
        let set = closure(planes.iter().cloned(), Subspace::intersect);
        assert_eq!(set.len(), 7);
    }

    #[test]
    fn stacked_product_factorization() {
        let p = free_product(&u(1, 2), &u(1, 2)).unwrap();
        let rep = primary_factorization(&p, B).unwrap();
        assert_eq!(rep.flag.len(), 3);
        assert_eq!(rep.kinds, vec![FactorKind::Uniform, FactorKind::Uniform]);
        for f in &rep.factors {
            assert!(f.same_ranks(&u(1, 2), B).unwrap());
        }
        assert!(rep.reconstruction_matches(&p, B).unwrap());
        assert!(!rep.has_uniform_consecutive_product(B).unwrap());
        let rebuilt = rep.reconstruct(B).unwrap();
        for x in SubspaceLattice::get(2, 4, B).unwrap().elements() {
            assert_eq!(rebuilt.rank(x), p.rank(&rep.to_ambient(x)));
        }
    }

    #[test]
    fn uniform_is_one_factor_but_reducible() {
        let m = u(1, 2);
        let rep = primary_factorization(&m, B).unwrap();
        assert_eq!(rep.factors.len(), 1);
        assert_eq!(rep.kinds, vec![FactorKind::Uniform]);
        let v = is_irreducible(&m, B).unwrap();
        assert!(!v.irreducible);
        let split = free_product(&u(1, 1), &u(0, 1)).unwrap();
        assert_eq!(split.cyclic_flats(B).unwrap(), m.cyclic_flats(B).unwrap());
        assert!(is_free_separator(&m, &v.witness.unwrap(), B).unwrap());
    }

    #[test]
    fn small_grounds_are_irreducible() {
        for m in [u(0, 1), u(1, 1)] {
            assert!(is_irreducible(&m, B).unwrap().irreducible);
        }
    }

    #[test]
    fn loops_split_off() {
        let m =
            QMatroid::from_cyclic_flats(2, 3, vec![(sp(3, &[&[1]]), 0), (Subspace::full(2, 3), 1)])
                .unwrap();
        let v = is_irreducible(&m, B).unwrap();
        assert_eq!(v.witness, Some(sp(3, &[&[1]])));
        let rep = primary_factorization(&m, B).unwrap();
        assert_eq!(rep.factors[0].full_rank(), 0);
        assert!(rep.reconstruction_matches(&m, B).unwrap());
    }

    #[test]
    fn vamos_certificate_matches_oracle() {
        let (oracle, cert) = (vamos(2).unwrap(), vamos_certificate(2).unwrap());
        let c0 = Subspace::unit(2, 8, [2, 3, 4, 5]);
        assert_eq!(oracle.rank(&c0), 3);
        assert_eq!(cert.rank(&c0), 3);
        for k in 0..=8 {
            for a in crate::subspace::subspaces_of_dim(2, 8, k).step_by(97) {
                assert_eq!(oracle.rank(&a), cert.rank(&a), "{a}");
            }
        }
    }

    #[test]
    fn vamos_has_no_nontrivial_pinchpoint() {
        let m = vamos_certificate(2).unwrap();
        let d = dm_lattice(&m, B).unwrap();
        assert_eq!(d.pinchpoints().len(), 2);
        let v = is_irreducible(&m, B).unwrap();
        assert!(v.irreducible && v.witness.is_none());
        let rep = primary_factorization(&m, B).unwrap();
        assert_eq!(rep.kinds, vec![FactorKind::Irreducible]);
        assert!(rep.reconstruction_matches(&m, B).unwrap());
    }

    #[test]
    fn too_many_cyclic_flats_is_an_error() {
        // the direct sum of five copies of U_{1,2} has 2^5 cyclic flats
        let mut m = u(1, 2);
        for _ in 0..4 {
            m = direct_sum(&m, &u(1, 2)).unwrap();
        }
        assert!(matches!(
            dm_lattice(&m, Budget::UNLIMITED),
            Err(Error::TooManyCyclicFlats { count: 32, .. })
        ));
    }
}
