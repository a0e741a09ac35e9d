//! q-matroids on F_q^n given by a rank table, a cyclic-flat certificate or a
//! rank oracle.

mod axioms;
mod cyclic_flats;
mod enumerate;
mod iso;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::subspace::{
    check_ambient, dim_order, pivot_patterns, subspaces_with_pivots, QuotientMap, Subspace,
    SubspaceLattice,
};

pub use axioms::{
    check_cyclic_flat_axioms, check_independence_axioms, check_rank_axioms, Axiom, AxiomFailure,
    Verdict,
};
pub use cyclic_flats::CyclicFlatLattice;
pub use enumerate::enumerate_qmatroids;
pub use iso::{invariants_differ, is_isomorphic, IsoVerdict};

pub type RankFn = Arc<dyn Fn(&Subspace) -> u32 + Send + Sync>;

enum Backing {
    Table {
        lattice: Arc<SubspaceLattice>,
        ranks: Vec<u32>,
    },
    CyclicFlats(CyclicFlatLattice),
    Oracle {
        name: String,
        f: RankFn,
        memoize: bool,
    },
}

struct Inner {
    q: u8,
    n: usize,
    backing: Backing,
    memo: RwLock<HashMap<Subspace, u32>>,
    flats: OnceLock<CyclicFlatLattice>,
}

/// A q-matroid. Cheap to clone.
#[derive(Clone)]
pub struct QMatroid(Arc<Inner>);

impl fmt::Debug for QMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.backing {
            Backing::Table { .. } => "table".to_string(),
            Backing::CyclicFlats(z) => format!("{} cyclic flats", z.len()),
            Backing::Oracle { name, .. } => format!("oracle {name}"),
        };
        write!(f, "QMatroid(q={}, n={}, {kind})", self.0.q, self.0.n)
    }
}

impl QMatroid {
    fn from_backing(q: u8, n: usize, backing: Backing) -> Self {
        QMatroid(Arc::new(Inner {
            q,
            n,
            backing,
            memo: RwLock::new(HashMap::new()),
            flats: OnceLock::new(),
        }))
    }

    /// U_{k,n}(q): r(A) = min(dim A, k).
    pub fn uniform(q: u8, k: usize, n: usize) -> Result<Self> {
        check_ambient(q, n)?;
        if k > n {
            return Err(Error::InvalidVector(format!(
                "rank {k} exceeds dimension {n}"
            )));
        }
        let e = Subspace::full(q, n);
        let z = Subspace::zero(q, n);
        let flats = match k {
            0 => vec![(e, 0)],
            _ if k == n => vec![(z, 0)],
            _ => vec![(z, 0), (e, k as u32)],
        };
        Ok(Self::from_backing(
            q,
            n,
            Backing::CyclicFlats(CyclicFlatLattice::new_unchecked(flats)),
        ))
    }

    /// q-matroid determined by its cyclic flats and their ranks. The axioms
    /// (Z0)-(Z3) are verified.
    pub fn from_cyclic_flats(q: u8, n: usize, flats: Vec<(Subspace, u32)>) -> Result<Self> {
        check_ambient(q, n)?;
        for (s, _) in &flats {
            if s.q() != q || s.n() != n {
                return Err(Error::AmbientMismatch {
                    expected_q: q,
                    expected_n: n,
                    q: s.q(),
                    n: s.n(),
                });
            }
        }
        let lattice = CyclicFlatLattice::new(flats)?;
        Ok(Self::from_backing(q, n, Backing::CyclicFlats(lattice)))
    }

    pub(crate) fn from_cyclic_flats_unchecked(
        q: u8,
        n: usize,
        flats: Vec<(Subspace, u32)>,
    ) -> Self {
        Self::from_backing(
            q,
            n,
            Backing::CyclicFlats(CyclicFlatLattice::new_unchecked(flats)),
        )
    }

    /// q-matroid given by a full rank table (one rank per lattice id). The
    /// axioms (R1)-(R3) are verified.
    pub fn from_rank_table(lattice: Arc<SubspaceLattice>, ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() != lattice.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks for {} subspaces",
                ranks.len(),
                lattice.len()
            )));
        }
        let signed: Vec<i64> = ranks.iter().map(|&r| r as i64).collect();
        check_rank_axioms(&lattice, &signed)?;
        Ok(Self::from_rank_table_unchecked(lattice, ranks))
    }

    pub(crate) fn from_rank_table_unchecked(
        lattice: Arc<SubspaceLattice>,
        ranks: Vec<u32>,
    ) -> Self {
        Self::from_backing(lattice.q(), lattice.n(), Backing::Table { lattice, ranks })
    }

    /// q-matroid given by a rank function. Nothing is verified.
    pub fn from_oracle(
        q: u8,
        n: usize,
        name: impl Into<String>,
        memoize: bool,
        f: impl Fn(&Subspace) -> u32 + Send + Sync + 'static,
    ) -> Self {
        Self::from_backing(
            q,
            n,
            Backing::Oracle {
                name: name.into(),
                f: Arc::new(f),
                memoize,
            },
        )
    }

    pub fn q(&self) -> u8 {
        self.0.q
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn ground(&self) -> Subspace {
        Subspace::full(self.q(), self.n())
    }

    /// The certificate, when the q-matroid is backed by one.
    pub fn certificate(&self) -> Option<&CyclicFlatLattice> {
        match &self.0.backing {
            Backing::CyclicFlats(z) => Some(z),
            _ => None,
        }
    }

    pub fn is_table_backed(&self) -> bool {
        matches!(self.0.backing, Backing::Table { .. })
    }

    pub fn rank(&self, a: &Subspace) -> u32 {
        assert!(
            a.q() == self.q() && a.n() == self.n(),
            "{a} does not live in F_{}^{}",
            self.q(),
            self.n()
        );
        match &self.0.backing {
            Backing::Table { lattice, ranks } => ranks[lattice.id_of(a)],
            Backing::CyclicFlats(z) => self.memoized(a, || z.rank_formula(a)),
            Backing::Oracle { f, memoize, .. } => {
                if *memoize {
                    self.memoized(a, || f(a))
                } else {
                    f(a)
                }
            }
        }
    }

    pub fn try_rank(&self, a: &Subspace) -> Result<u32> {
        if a.q() != self.q() || a.n() != self.n() {
            return Err(Error::AmbientMismatch {
                expected_q: self.q(),
                expected_n: self.n(),
                q: a.q(),
                n: a.n(),
            });
        }
        Ok(self.rank(a))
    }

    fn memoized(&self, a: &Subspace, compute: impl FnOnce() -> u32) -> u32 {
        if let Some(&r) = self.0.memo.read().expect("memo poisoned").get(a) {
            return r;
        }
        let r = compute();
        self.0
            .memo
            .write()
            .expect("memo poisoned")
            .insert(a.clone(), r);
        r
    }

    /// r(E).
    pub fn full_rank(&self) -> u32 {
        self.rank(&self.ground())
    }

    /// λ(A) = r(E) - r(A).
    pub fn rank_lack(&self, a: &Subspace) -> u32 {
        self.full_rank() - self.rank(a)
    }

    /// ν(A) = dim A - r(A).
    pub fn nullity(&self, a: &Subspace) -> u32 {
        a.dim() as u32 - self.rank(a)
    }

    /// Rank of every subspace, indexed by lattice id.
    pub fn rank_table(&self, budget: Budget) -> Result<(Arc<SubspaceLattice>, Vec<u32>)> {
        let lattice = SubspaceLattice::get(self.q(), self.n(), budget)?;
        if let Backing::Table { ranks, .. } = &self.0.backing {
            return Ok((lattice, ranks.clone()));
        }
        let ranks = lattice
            .elements()
            .par_iter()
            .map(|s| self.rank(s))
            .collect();
        Ok((lattice, ranks))
    }

    /// Same q-matroid, backed by a full rank table.
    pub fn to_table(&self, budget: Budget) -> Result<QMatroid> {
        let (lattice, ranks) = self.rank_table(budget)?;
        let m = Self::from_rank_table_unchecked(lattice, ranks);
        if let Some(z) = self.0.flats.get() {
            let _ = m.0.flats.set(z.clone());
        }
        Ok(m)
    }

    /// Pointwise equality of rank functions over the whole lattice.
    pub fn same_ranks(&self, other: &QMatroid, budget: Budget) -> Result<bool> {
        if self.q() != other.q() || self.n() != other.n() {
            return Ok(false);
        }
        let lattice = SubspaceLattice::get(self.q(), self.n(), budget)?;
        Ok(lattice
            .elements()
            .par_iter()
            .all(|s| self.rank(s) == other.rank(s)))
    }

    /// First subspace where the two rank functions differ.
    pub fn first_difference(&self, other: &QMatroid, budget: Budget) -> Result<Option<Subspace>> {
        let lattice = SubspaceLattice::get(self.q(), self.n(), budget)?;
        Ok(lattice
            .elements()
            .par_iter()
            .find_first(|s| self.rank(s) != other.rank(s))
            .cloned())
    }

    pub fn is_independent(&self, a: &Subspace) -> bool {
        let by_rank = self.rank(a) as usize == a.dim();
        if cfg!(debug_assertions) {
            if let Some(z) = self.0.flats.get().or(self.certificate()) {
                debug_assert_eq!(
                    by_rank,
                    independent_by_flats(z, a),
                    "independence routes disagree at {a}"
                );
            }
        }
        by_rank
    }

    /// Independence through dim(I ∩ Z) <= r(Z) for every cyclic flat Z.
    pub fn is_independent_by_flats(&self, a: &Subspace, budget: Budget) -> Result<bool> {
        Ok(independent_by_flats(self.cyclic_flats(budget)?, a))
    }

    /// cl(A): A plus every cover of A with the same rank.
    pub fn closure(&self, a: &Subspace) -> Subspace {
        let r = self.rank(a);
        let mut cl = a.clone();
        for b in a.covers() {
            if !cl.contains(&b) && self.rank(&b) == r {
                cl = cl.sum(&b);
            }
        }
        cl
    }

    /// cyc(A): the intersection of the hyperplanes of A whose rank drops.
    pub fn cyclic_op(&self, a: &Subspace) -> Subspace {
        let r = self.rank(a);
        a.hyperplanes()
            .into_iter()
            .filter(|h| self.rank(h) < r)
            .fold(a.clone(), |acc, h| acc.intersect(&h))
    }

    /// cyc(A) as the sum of all cyclic subspaces of A. Slow; for tests.
    pub fn cyclic_op_by_sum(&self, a: &Subspace) -> Subspace {
        a.subspaces()
            .filter(|c| self.is_cyclic(c))
            .fold(Subspace::zero(self.q(), self.n()), |acc, c| acc.sum(&c))
    }

    /// Every cover has larger rank.
    pub fn is_flat(&self, a: &Subspace) -> bool {
        let r = self.rank(a);
        a.covers().iter().all(|b| self.rank(b) > r)
    }

    /// Every hyperplane has the same rank.
    pub fn is_cyclic(&self, a: &Subspace) -> bool {
        let r = self.rank(a);
        a.hyperplanes().iter().all(|h| self.rank(h) == r)
    }

    pub fn is_cyclic_flat(&self, a: &Subspace) -> bool {
        self.is_cyclic(a) && self.is_flat(a)
    }

    /// Atoms of rank 0.
    pub fn loops(&self) -> Vec<Subspace> {
        self.ground()
            .atoms()
            .into_iter()
            .filter(|x| self.rank(x) == 0)
            .collect()
    }

    /// Hyperplanes of E with rank below r(E).
    pub fn coloops(&self) -> Vec<Subspace> {
        let r = self.full_rank();
        self.ground()
            .hyperplanes()
            .into_iter()
            .filter(|h| self.rank(h) < r)
            .collect()
    }

    pub fn has_loops(&self) -> bool {
        // Loopless iff the zero space is a flat.
        !self.is_flat(&Subspace::zero(self.q(), self.n()))
    }

    pub fn has_coloops(&self) -> bool {
        // Coloopless iff E is cyclic.
        !self.is_cyclic(&self.ground())
    }

    /// The cyclic flats: the certificate when there is one, otherwise an
    /// exhaustive scan (cached).
    pub fn cyclic_flats(&self, budget: Budget) -> Result<&CyclicFlatLattice> {
        if let Some(z) = self.certificate() {
            return Ok(z);
        }
        if let Some(z) = self.0.flats.get() {
            return Ok(z);
        }
        let found = self.scan_cyclic_flats(budget)?;
        let _ = self.0.flats.set(CyclicFlatLattice::new_unchecked(found));
        Ok(self.0.flats.get().expect("just set"))
    }

    /// Walks the whole lattice and keeps the cyclic flats, sorted by
    /// dimension then canonical rows. Ignores any certificate.
    pub fn scan_cyclic_flats(&self, budget: Budget) -> Result<Vec<(Subspace, u32)>> {
        let (q, n) = (self.q(), self.n());
        check_ambient(q, n)?;
        budget.check_lattice(q, n)?;
        let mut found: Vec<(Subspace, u32)> =
            if let Backing::Table { lattice, ranks } = &self.0.backing {
                let (up, down) = (lattice.up(), lattice.down());
                (0..lattice.len())
                    .into_par_iter()
                    .filter(|&i| {
                        let r = ranks[i];
                        down[i].iter().all(|&h| ranks[h as usize] == r)
                            && up[i].iter().all(|&b| ranks[b as usize] > r)
                    })
                    .map(|i| (lattice.get_element(i).clone(), ranks[i]))
                    .collect()
            } else {
                (0..=n)
                    .flat_map(|k| pivot_patterns(n, k))
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .flat_map_iter(|p| {
                        subspaces_with_pivots(q, n, p)
                            .filter(|a| self.is_cyclic_flat(a))
                            .map(|a| {
                                let r = self.rank(&a);
                                (a, r)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect()
            };
        found.sort_by(|a, b| dim_order(&a.0, &b.0));
        Ok(found)
    }

    /// Certificate-backed copy, using the cyclic flats found by a scan.
    pub fn to_certificate(&self, budget: Budget) -> Result<QMatroid> {
        let z = self.cyclic_flats(budget)?.clone();
        Ok(Self::from_backing(
            self.q(),
            self.n(),
            Backing::CyclicFlats(z),
        ))
    }

    /// r*(A) = dim A - r(E) + r(A⊥).
    pub fn dual(&self) -> QMatroid {
        let (q, n) = (self.q(), self.n());
        let rank_e = self.full_rank();
        match &self.0.backing {
            Backing::CyclicFlats(z) => {
                let flats = z
                    .elements()
                    .iter()
                    .map(|(s, f)| {
                        let perp = s.orthogonal_complement();
                        let r = perp.dim() as u32 + f - rank_e;
                        (perp, r)
                    })
                    .collect();
                Self::from_cyclic_flats_unchecked(q, n, flats)
            }
            Backing::Table { lattice, ranks } => {
                let dual_ranks = lattice
                    .elements()
                    .par_iter()
                    .map(|a| {
                        let perp = lattice.id_of(&a.orthogonal_complement());
                        a.dim() as u32 + ranks[perp] - rank_e
                    })
                    .collect();
                Self::from_rank_table_unchecked(lattice.clone(), dual_ranks)
            }
            Backing::Oracle { name, .. } => {
                let m = self.clone();
                Self::from_oracle(q, n, format!("dual of {name}"), true, move |a| {
                    a.dim() as u32 + m.rank(&a.orthogonal_complement()) - rank_e
                })
            }
        }
    }

    /// Dual through φ = rev ∘ ⊥: r*(A) = dim A - r(E) + r(φ(A)).
    pub fn dual_phi(&self) -> QMatroid {
        let rank_e = self.full_rank();
        let m = self.clone();
        Self::from_oracle(self.q(), self.n(), "phi-dual", true, move |a| {
            a.dim() as u32 + m.rank(&a.phi()) - rank_e
        })
    }

    /// M[A, B] on F_q^{dim B - dim A}: r(X) = r(lift X) - r(A).
    pub fn minor(&self, lower: &Subspace, upper: &Subspace) -> Result<QMatroid> {
        let qm = QuotientMap::new(lower, upper)?;
        let base = self.rank(lower);
        let d = qm.quotient_dim();
        let m = self.clone();
        Ok(Self::from_oracle(
            self.q(),
            d,
            format!("minor [{lower}, {upper}]"),
            true,
            move |x| m.rank(&qm.lift(x)) - base,
        ))
    }

    /// M|A on F_q^{dim A}.
    pub fn restriction(&self, a: &Subspace) -> Result<QMatroid> {
        self.minor(&Subspace::zero(self.q(), self.n()), a)
    }

    /// M/A on F_q^{n - dim A}.
    pub fn contraction(&self, a: &Subspace) -> Result<QMatroid> {
        self.minor(a, &self.ground())
    }

    /// Whether the rank function is min(dim, r(E)).
    pub fn is_uniform(&self, budget: Budget) -> Result<bool> {
        let z = self.cyclic_flats(budget)?;
        Ok(z.subspaces().all(|s| s.is_zero() || s.is_full()))
    }
}

fn independent_by_flats(z: &CyclicFlatLattice, a: &Subspace) -> bool {
    z.elements()
        .iter()
        .all(|(s, f)| a.intersect(s).dim() as u32 <= *f)
}
