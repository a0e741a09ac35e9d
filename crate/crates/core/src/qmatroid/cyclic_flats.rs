use crate::subspace::{dim_order, Subspace};

use super::axioms::{check_cyclic_flat_axioms, extremal_bound, AxiomFailure};

/// A family of cyclic flats with their ranks and lattice operations.
///
/// Elements are sorted by dimension, then by canonical rows, so index 0 is
/// the least element and the last index the greatest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlatLattice {
    q: u8,
    n: usize,
    elements: Vec<(Subspace, u32)>,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl CyclicFlatLattice {
    /// Validates (Z0)-(Z3) and builds the join/meet tables.
    pub fn new(mut elements: Vec<(Subspace, u32)>) -> Result<Self, AxiomFailure> {
        let signed: Vec<(Subspace, i64)> = elements
            .iter()
            .map(|(s, r)| (s.clone(), *r as i64))
            .collect();
        check_cyclic_flat_axioms(&signed)?;
        elements.sort_by(|a, b| dim_order(&a.0, &b.0));
        Ok(Self::build(elements))
    }

    /// Skips validation. Callers guarantee the family is a lattice.
    pub(crate) fn new_unchecked(mut elements: Vec<(Subspace, u32)>) -> Self {
        elements.sort_by(|a, b| dim_order(&a.0, &b.0));
        Self::build(elements)
    }

    fn build(elements: Vec<(Subspace, u32)>) -> Self {
        let (q, n) = (elements[0].0.q(), elements[0].0.n());
        let signed: Vec<(Subspace, i64)> = elements
            .iter()
            .map(|(s, r)| (s.clone(), *r as i64))
            .collect();
        let len = elements.len();
        let mut join = vec![0; len * len];
        let mut meet = vec![0; len * len];
        for i in 0..len {
            for j in 0..len {
                let (a, b) = (&elements[i].0, &elements[j].0);
                join[i * len + j] = extremal_bound(&signed, &a.sum(b), true).expect("lattice");
                meet[i * len + j] =
                    extremal_bound(&signed, &a.intersect(b), false).expect("lattice");
            }
        }
        CyclicFlatLattice {
            q,
            n,
            elements,
            join,
            meet,
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[(Subspace, u32)] {
        &self.elements
    }

    pub fn subspaces(&self) -> impl Iterator<Item = &Subspace> {
        self.elements.iter().map(|(s, _)| s)
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.elements.iter().position(|(z, _)| z == s)
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index_of(s).is_some()
    }

    pub fn rank_of(&self, s: &Subspace) -> Option<u32> {
        self.index_of(s).map(|i| self.elements[i].1)
    }

    pub fn bottom(&self) -> &(Subspace, u32) {
        &self.elements[0]
    }

    pub fn top(&self) -> &(Subspace, u32) {
        self.elements.last().expect("nonempty")
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    /// min over Z of f(Z) + dim(A+Z) - dim(Z).
    pub fn rank_formula(&self, a: &Subspace) -> u32 {
        self.elements
            .iter()
            .map(|(z, f)| f + (a.sum(z).dim() - z.dim()) as u32)
            .min()
            .expect("nonempty")
    }

    /// Pairs (i, j) with element i covered by element j.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let len = self.len();
        let lt = |i: usize, j: usize| i != j && self.elements[i].0.le(&self.elements[j].0);
        let mut edges = Vec::new();
        for i in 0..len {
            for j in 0..len {
                if lt(i, j) && !(0..len).any(|k| lt(i, k) && lt(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Sorted (dim, rank) pairs.
    pub fn profile(&self) -> Vec<(usize, u32)> {
        let mut p: Vec<_> = self.elements.iter().map(|(s, r)| (s.dim(), *r)).collect();
        p.sort();
        p
    }
}
