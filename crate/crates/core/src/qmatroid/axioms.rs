//! Exhaustive verifiers for the rank, independence and cyclic-flat axioms.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::subspace::{Subspace, SubspaceLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    R1,
    R2,
    R3,
    I1,
    I2,
    I3,
    I4,
    Z0,
    Z1,
    Z2,
    Z3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
            Axiom::I1 => "I1",
            Axiom::I2 => "I2",
            Axiom::I3 => "I3",
            Axiom::I4 => "I4''",
            Axiom::Z0 => "Z0",
            Axiom::Z1 => "Z1",
            Axiom::Z2 => "Z2",
            Axiom::Z3 => "Z3",
        };
        write!(f, "{s}")
    }
}

/// The violated axiom with the subspaces that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<Subspace>,
    pub detail: String,
}

impl AxiomFailure {
    fn new(axiom: Axiom, witness: Vec<Subspace>, detail: impl Into<String>) -> Self {
        AxiomFailure {
            axiom,
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at: Vec<String> = self.witness.iter().map(|s| s.to_string()).collect();
        write!(f, "({}) violated at {}", self.axiom, at.join(", "))?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

pub type Verdict = Result<(), AxiomFailure>;

/// (R1)-(R3) for a rank table indexed by lattice id.
///
/// (R2) is checked on covers only, which suffices by transitivity. (R3) is
/// checked on every incomparable pair.
pub fn check_rank_axioms(lattice: &SubspaceLattice, ranks: &[i64]) -> Verdict {
    assert_eq!(lattice.len(), ranks.len(), "one rank per subspace");
    let elems = lattice.elements();
    for (s, &r) in elems.iter().zip(ranks) {
        if r < 0 || r > s.dim() as i64 {
            return Err(AxiomFailure::new(
                Axiom::R1,
                vec![s.clone()],
                format!("r = {r} is outside [0, {}]", s.dim()),
            ));
        }
    }
    for (i, ups) in lattice.up().iter().enumerate() {
        for &j in ups {
            if ranks[i] > ranks[j as usize] {
                return Err(AxiomFailure::new(
                    Axiom::R2,
                    vec![elems[i].clone(), elems[j as usize].clone()],
                    format!("r decreases from {} to {}", ranks[i], ranks[j as usize]),
                ));
            }
        }
    }
    let bad = (0..elems.len()).into_par_iter().find_map_first(|i| {
        let a = &elems[i];
        (i + 1..elems.len()).find_map(|j| {
            let b = &elems[j];
            if a.comparable(b) {
                return None;
            }
            let s = lattice.id_of(&a.sum(b));
            let t = lattice.id_of(&a.intersect(b));
            let lhs = ranks[s] + ranks[t];
            let rhs = ranks[i] + ranks[j];
            (lhs > rhs).then(|| {
                AxiomFailure::new(
                    Axiom::R3,
                    vec![a.clone(), b.clone()],
                    format!("r(A+B) + r(A∩B) = {lhs} > {rhs} = r(A) + r(B)"),
                )
            })
        })
    });
    match bad {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// (I1), (I2), (I3) and (I4'') for a family given as a membership flag per
/// lattice id.
///
/// max(X, I) is read as the members of I below X of largest dimension.
pub fn check_independence_axioms(lattice: &SubspaceLattice, member: &[bool]) -> Verdict {
    assert_eq!(lattice.len(), member.len());
    let elems = lattice.elements();
    if !member[lattice.bottom()] {
        return Err(AxiomFailure::new(
            Axiom::I1,
            vec![elems[0].clone()],
            "the zero space is not independent",
        ));
    }
    let down = lattice.down();
    for (i, hs) in down.iter().enumerate() {
        if !member[i] {
            continue;
        }
        if let Some(&h) = hs.iter().find(|&&h| !member[h as usize]) {
            return Err(AxiomFailure::new(
                Axiom::I2,
                vec![elems[h as usize].clone(), elems[i].clone()],
                "a subspace of an independent space is dependent",
            ));
        }
    }

    // (I3): by (I2) it is enough to take dim J = dim I + 1.
    let n = lattice.n();
    for k in 0..n {
        let lower: Vec<usize> = lattice.ids_of_dim(k).filter(|&i| member[i]).collect();
        let upper: Vec<usize> = lattice.ids_of_dim(k + 1).filter(|&j| member[j]).collect();
        let bad = lower.par_iter().find_map_first(|&i| {
            let a = &elems[i];
            upper.iter().find_map(|&j| {
                let b = &elems[j];
                let ok = b
                    .atoms()
                    .iter()
                    .any(|x| !a.contains(x) && member[lattice.id_of(&a.sum(x))]);
                (!ok).then(|| {
                    AxiomFailure::new(
                        Axiom::I3,
                        vec![a.clone(), b.clone()],
                        "no atom of J extends I to an independent space",
                    )
                })
            })
        });
        if let Some(f) = bad {
            return Err(f);
        }
    }

    // Largest dimension of a member below each subspace.
    let mut maxdim = vec![0usize; lattice.len()];
    for (i, s) in elems.iter().enumerate() {
        maxdim[i] = if member[i] {
            s.dim()
        } else {
            down[i]
                .iter()
                .map(|&h| maxdim[h as usize])
                .max()
                .unwrap_or(0)
        };
    }

    // (I4''): if max(A+x) gains a dimension, every I in max(A) must extend
    // to I+x in the family; otherwise I itself is the required J.
    let bad = (0..elems.len()).into_par_iter().find_map_first(|ia| {
        let a = &elems[ia];
        let growing: Vec<Subspace> = Subspace::full(a.q(), n)
            .atoms()
            .into_iter()
            .filter(|x| !a.contains(x) && maxdim[lattice.id_of(&a.sum(x))] > maxdim[ia])
            .collect();
        if growing.is_empty() {
            return None;
        }
        let mut seen = HashSet::new();
        a.subspaces()
            .filter(|i| i.dim() == maxdim[ia] && member[lattice.id_of(i)])
            .find_map(|i| {
                growing.iter().find_map(|x| {
                    let ix = i.sum(x);
                    if !seen.insert(ix.clone()) || member[lattice.id_of(&ix)] {
                        return None;
                    }
                    Some(AxiomFailure::new(
                        Axiom::I4,
                        vec![a.clone(), i.clone(), x.clone()],
                        "no J in max(A+x) lies below I+x",
                    ))
                })
            })
    });
    match bad {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// Index of the least element of `elems` above `s` (or greatest below when
/// `above` is false), if it exists.
pub(crate) fn extremal_bound(
    elems: &[(Subspace, i64)],
    s: &Subspace,
    above: bool,
) -> Option<usize> {
    let bounds: Vec<usize> = (0..elems.len())
        .filter(|&k| {
            if above {
                s.le(&elems[k].0)
            } else {
                elems[k].0.le(s)
            }
        })
        .collect();
    bounds.iter().copied().find(|&m| {
        bounds.iter().all(|&k| {
            if above {
                elems[m].0.le(&elems[k].0)
            } else {
                elems[k].0.le(&elems[m].0)
            }
        })
    })
}

/// (Z0)-(Z3) for a family of subspaces with integer ranks.
///
/// Join and meet are the least upper and greatest lower bounds in the
/// inclusion order of the family.
pub fn check_cyclic_flat_axioms(entries: &[(Subspace, i64)]) -> Verdict {
    if entries.is_empty() {
        return Err(AxiomFailure::new(Axiom::Z0, vec![], "the family is empty"));
    }
    let (q, n) = (entries[0].0.q(), entries[0].0.n());
    if let Some((s, _)) = entries.iter().find(|(s, _)| s.q() != q || s.n() != n) {
        return Err(AxiomFailure::new(
            Axiom::Z0,
            vec![s.clone()],
            "subspaces live in different ambient spaces",
        ));
    }
    let mut seen = HashSet::new();
    for (s, _) in entries {
        if !seen.insert(s) {
            return Err(AxiomFailure::new(
                Axiom::Z0,
                vec![s.clone()],
                "listed twice",
            ));
        }
    }
    let len = entries.len();
    let mut join = vec![0usize; len * len];
    let mut meet = vec![0usize; len * len];
    for i in 0..len {
        for j in i..len {
            let (a, b) = (&entries[i].0, &entries[j].0);
            let Some(jn) = extremal_bound(entries, &a.sum(b), true) else {
                return Err(AxiomFailure::new(
                    Axiom::Z0,
                    vec![a.clone(), b.clone()],
                    "no least upper bound",
                ));
            };
            let Some(mt) = extremal_bound(entries, &a.intersect(b), false) else {
                return Err(AxiomFailure::new(
                    Axiom::Z0,
                    vec![a.clone(), b.clone()],
                    "no greatest lower bound",
                ));
            };
            join[i * len + j] = jn;
            join[j * len + i] = jn;
            meet[i * len + j] = mt;
            meet[j * len + i] = mt;
        }
    }
    let bottom = (0..len)
        .find(|&m| (0..len).all(|k| entries[m].0.le(&entries[k].0)))
        .expect("a lattice has a least element");
    if entries[bottom].1 != 0 {
        return Err(AxiomFailure::new(
            Axiom::Z1,
            vec![entries[bottom].0.clone()],
            format!("least element has rank {}", entries[bottom].1),
        ));
    }
    for (g, fg) in entries {
        for (f, ff) in entries {
            if g != f && g.le(f) {
                let gap = ff - fg;
                let dim_gap = (f.dim() - g.dim()) as i64;
                if !(0 < gap && gap < dim_gap) {
                    return Err(AxiomFailure::new(
                        Axiom::Z2,
                        vec![g.clone(), f.clone()],
                        format!("rank gap {gap} is not strictly between 0 and {dim_gap}"),
                    ));
                }
            }
        }
    }
    for i in 0..len {
        for j in i + 1..len {
            let (f, ff) = &entries[i];
            let (g, fg) = &entries[j];
            let jn = &entries[join[i * len + j]];
            let mt = &entries[meet[i * len + j]];
            let correction = (f.intersect(g).dim() - mt.0.dim()) as i64;
            if ff + fg < jn.1 + mt.1 + correction {
                return Err(AxiomFailure::new(
                    Axiom::Z3,
                    vec![f.clone(), g.clone()],
                    format!(
                        "f(F) + f(G) = {} < {} = f(F∨G) + f(F∧G) + dim((F∩G)/(F∧G))",
                        ff + fg,
                        jn.1 + mt.1 + correction
                    ),
                ));
            }
        }
    }
    Ok(())
}
