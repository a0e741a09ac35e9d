//! The materialized subspace lattice of F_q^n with cover relations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::Result;

use super::{enumerate_subspaces, Subspace};

pub struct SubspaceLattice {
    q: u8,
    n: usize,
    elements: Vec<Subspace>,
    index: HashMap<Subspace, u32>,
    // offsets[k]..offsets[k+1] are the ids of dimension k
    offsets: Vec<usize>,
    up: OnceLock<Vec<Vec<u32>>>,
    down: OnceLock<Vec<Vec<u32>>>,
}

impl std::fmt::Debug for SubspaceLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubspaceLattice")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("len", &self.elements.len())
            .finish()
    }
}

type Cache = Mutex<HashMap<(u8, usize), Arc<SubspaceLattice>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl SubspaceLattice {
    /// Shared lattice of F_q^n, built on first use.
    pub fn get(q: u8, n: usize, budget: Budget) -> Result<Arc<SubspaceLattice>> {
        super::check_ambient(q, n)?;
        budget.check_lattice(q, n)?;
        let mut guard = cache().lock().expect("lattice cache poisoned");
        if let Some(l) = guard.get(&(q, n)) {
            return Ok(l.clone());
        }
        let l = Arc::new(SubspaceLattice::build(q, n));
        guard.insert((q, n), l.clone());
        Ok(l)
    }

    fn build(q: u8, n: usize) -> Self {
        let elements: Vec<Subspace> = enumerate_subspaces(q, n).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let mut offsets = vec![0; n + 2];
        for s in &elements {
            offsets[s.dim() + 1] += 1;
        }
        for k in 1..offsets.len() {
            offsets[k] += offsets[k - 1];
        }
        SubspaceLattice {
            q,
            n,
            elements,
            index,
            offsets,
            up: OnceLock::new(),
            down: OnceLock::new(),
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

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn get_element(&self, id: usize) -> &Subspace {
        &self.elements[id]
    }

    pub fn id(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    pub fn id_of(&self, s: &Subspace) -> usize {
        self.id(s)
            .unwrap_or_else(|| panic!("{s} is not in the lattice of F_{}^{}", self.q, self.n))
    }

    /// Ids of all subspaces of dimension k.
    pub fn ids_of_dim(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// Ids of the covers of each element.
    pub fn up(&self) -> &[Vec<u32>] {
        self.up.get_or_init(|| {
            self.elements
                .par_iter()
                .map(|s| {
                    s.covers()
                        .iter()
                        .map(|c| self.index[c])
                        .collect::<Vec<u32>>()
                })
                .collect()
        })
    }

    /// Ids of the codimension-one subspaces of each element.
    pub fn down(&self) -> &[Vec<u32>] {
        self.down.get_or_init(|| {
            let mut down = vec![Vec::new(); self.len()];
            for (i, ups) in self.up().iter().enumerate() {
                for &j in ups {
                    down[j as usize].push(i as u32);
                }
            }
            down
        })
    }
}
