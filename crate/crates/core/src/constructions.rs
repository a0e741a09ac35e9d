//! Free product, direct sum and weak-order comparison.

use std::sync::Arc;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::qmatroid::QMatroid;
use crate::subspace::{galois_number, DirectSumContext, Side, Subspace, SubspaceLattice};

/// Largest lattice on which constructions re-check themselves in debug builds.
const DEBUG_CROSS_CHECK_LIMIT: u128 = 400;

fn context(m1: &QMatroid, m2: &QMatroid) -> Result<DirectSumContext> {
    if m1.q() != m2.q() {
        return Err(Error::AmbientMismatch {
            expected_q: m1.q(),
            expected_n: m2.n(),
            q: m2.q(),
            n: m2.n(),
        });
    }
    DirectSumContext::new(m1.q(), m1.n(), m2.n())
}

/// M1 □ M2 built by stacking cyclic flats.
pub fn free_product(m1: &QMatroid, m2: &QMatroid) -> Result<QMatroid> {
    free_product_with_budget(m1, m2, Budget::DEFAULT)
}

/// [`free_product`] with an explicit budget for scanning the factors.
pub fn free_product_with_budget(m1: &QMatroid, m2: &QMatroid, budget: Budget) -> Result<QMatroid> {
    let ctx = context(m1, m2)?;
    let (z1, z2) = (m1.cyclic_flats(budget)?, m2.cyclic_flats(budget)?);
    let e1 = ctx.block(Side::First);
    let r1 = m1.full_rank();
    let mut flats = Vec::new();
    for (z, f) in z1.elements() {
        if !z.is_full() {
            flats.push((ctx.embed(Side::First, z)?, *f));
        }
    }
    for (z, f) in z2.elements() {
        if !z.is_zero() {
            flats.push((e1.sum(&ctx.embed(Side::Second, z)?), r1 + f));
        }
    }
    if !m1.has_coloops() && !m2.has_loops() {
        flats.push((e1, r1));
    }
    let product = QMatroid::from_cyclic_flats(ctx.q, ctx.n(), flats)?;
    if cfg!(debug_assertions) && galois_number(ctx.n(), ctx.q as u64) <= DEBUG_CROSS_CHECK_LIMIT {
        let formula = free_product_by_rank_formula(m1, m2)?;
        debug_assert!(
            product.same_ranks(&formula, Budget::UNLIMITED)?,
            "stacked cyclic flats disagree with the rank formula"
        );
    }
    Ok(product)
}

/// r1(π1(X ∩ ι1(E1))) + r2(π2(X)) + min(λ1(·), ν2(·)).
pub fn free_product_rank(m1: &QMatroid, m2: &QMatroid, x: &Subspace) -> Result<u32> {
    let ctx = context(m1, m2)?;
    Ok(rank_formula(&ctx, m1, m2, x))
}

fn rank_formula(ctx: &DirectSumContext, m1: &QMatroid, m2: &QMatroid, x: &Subspace) -> u32 {
    let (a, b) = ctx.slice(x).expect("ambient checked by caller");
    m1.rank(&a) + m2.rank(&b) + m1.rank_lack(&a).min(m2.nullity(&b))
}

/// M1 □ M2 as a rank oracle evaluating the closed formula.
pub fn free_product_by_rank_formula(m1: &QMatroid, m2: &QMatroid) -> Result<QMatroid> {
    let ctx = context(m1, m2)?;
    let (a, b) = (m1.clone(), m2.clone());
    Ok(QMatroid::from_oracle(
        ctx.q,
        ctx.n(),
        "free product rank formula",
        true,
        move |x| rank_formula(&ctx, &a, &b, x),
    ))
}

/// Membership in the defining family of independent spaces of M1 □ M2.
pub fn is_free_product_independent(m1: &QMatroid, m2: &QMatroid, i: &Subspace) -> Result<bool> {
    let ctx = context(m1, m2)?;
    let (a, b) = ctx.slice(i)?;
    Ok(m1.is_independent(&a) && m1.rank_lack(&a) >= m2.nullity(&b))
}

/// The defining family of independent spaces, one flag per lattice id.
pub fn free_product_independents(
    m1: &QMatroid,
    m2: &QMatroid,
    budget: Budget,
) -> Result<(Arc<SubspaceLattice>, Vec<bool>)> {
    let ctx = context(m1, m2)?;
    let lattice = SubspaceLattice::get(ctx.q, ctx.n(), budget)?;
    let member = lattice
        .elements()
        .par_iter()
        .map(|i| is_free_product_independent(m1, m2, i))
        .collect::<Result<Vec<bool>>>()?;
    Ok((lattice, member))
}

/// M1 □ M2 from its independent spaces: r(X) is the largest dimension of an
/// independent subspace of X.
pub fn free_product_by_independents(
    m1: &QMatroid,
    m2: &QMatroid,
    budget: Budget,
) -> Result<QMatroid> {
    let (lattice, member) = free_product_independents(m1, m2, budget)?;
    let down = lattice.down();
    let mut ranks = vec![0u32; lattice.len()];
    for (i, s) in lattice.elements().iter().enumerate() {
        ranks[i] = if member[i] {
            s.dim() as u32
        } else {
            down[i]
                .iter()
                .map(|&h| ranks[h as usize])
                .max()
                .unwrap_or(0)
        };
    }
    QMatroid::from_rank_table(lattice, ranks)
}

/// M1 ⊕ M2 with cyclic flats Z1 ⊕ Z2 of rank f1 + f2.
pub fn direct_sum(m1: &QMatroid, m2: &QMatroid) -> Result<QMatroid> {
    direct_sum_with_budget(m1, m2, Budget::DEFAULT)
}

pub fn direct_sum_with_budget(m1: &QMatroid, m2: &QMatroid, budget: Budget) -> Result<QMatroid> {
    let ctx = context(m1, m2)?;
    let (z1, z2) = (m1.cyclic_flats(budget)?, m2.cyclic_flats(budget)?);
    let mut flats = Vec::new();
    for (a, f) in z1.elements() {
        for (b, g) in z2.elements() {
            flats.push((ctx.direct_sum(a, b)?, f + g));
        }
    }
    QMatroid::from_cyclic_flats(ctx.q, ctx.n(), flats)
}

/// M1 ⊕ M2 as an oracle for
/// r(V) = dim V + min over X <= V of r1(π1 X) + r2(π2 X) - dim X.
pub fn direct_sum_by_definition(m1: &QMatroid, m2: &QMatroid) -> Result<QMatroid> {
    let ctx = context(m1, m2)?;
    let (a, b) = (m1.clone(), m2.clone());
    Ok(QMatroid::from_oracle(
        ctx.q,
        ctx.n(),
        "direct sum definition",
        true,
        move |v| {
            let best = v
                .subspaces()
                .map(|x| {
                    let p1 = ctx.project(Side::First, &x).expect("same ambient");
                    let p2 = ctx.project(Side::Second, &x).expect("same ambient");
                    (a.rank(&p1) + b.rank(&p2)) as i64 - x.dim() as i64
                })
                .min()
                .expect("V has at least the zero subspace");
            (v.dim() as i64 + best) as u32
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakRelation {
    Equal,
    /// r1 >= r2 everywhere: M2 ⪯ M1 via the identity.
    SecondBelowFirst,
    /// r2 >= r1 everywhere: M1 ⪯ M2 via the identity.
    FirstBelowSecond,
    IncomparableViaIdentity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakOrderVerdict {
    pub relation: WeakRelation,
    /// First subspace with r1 > r2, if any.
    pub first_above: Option<Subspace>,
    /// First subspace with r2 > r1, if any.
    pub second_above: Option<Subspace>,
}

impl WeakOrderVerdict {
    /// Subspace where the order holds strictly (or a disagreement when incomparable).
    pub fn witness(&self) -> Option<&Subspace> {
        self.first_above.as_ref().or(self.second_above.as_ref())
    }
}

/// Compares the rank functions pointwise on the whole lattice.
pub fn weak_compare_identity(
    m1: &QMatroid,
    m2: &QMatroid,
    budget: Budget,
) -> Result<WeakOrderVerdict> {
    if m1.q() != m2.q() || m1.n() != m2.n() {
        return Err(Error::AmbientMismatch {
            expected_q: m1.q(),
            expected_n: m1.n(),
            q: m2.q(),
            n: m2.n(),
        });
    }
    let lattice = SubspaceLattice::get(m1.q(), m1.n(), budget)?;
    let elems = lattice.elements();
    let first_above = elems
        .par_iter()
        .find_first(|s| m1.rank(s) > m2.rank(s))
        .cloned();
    let second_above = elems
        .par_iter()
        .find_first(|s| m2.rank(s) > m1.rank(s))
        .cloned();
    let relation = match (&first_above, &second_above) {
        (None, None) => WeakRelation::Equal,
        (Some(_), None) => WeakRelation::SecondBelowFirst,
        (None, Some(_)) => WeakRelation::FirstBelowSecond,
        (Some(_), Some(_)) => WeakRelation::IncomparableViaIdentity,
    };
    Ok(WeakOrderVerdict {
        relation,
        first_above,
        second_above,
    })
}

/// Sufficient condition for M2 ⪯ M1: every cyclic flat of M1 is a cyclic
/// flat of M2 with the same rank.
pub fn weak_below_by_cyclic_flats(m1: &QMatroid, m2: &QMatroid, budget: Budget) -> Result<bool> {
    let (z1, z2) = (m1.cyclic_flats(budget)?, m2.cyclic_flats(budget)?);
    Ok(z1.elements().iter().all(|(z, f)| z2.rank_of(z) == Some(*f)))
}

/// Whether the cyclic flats are exactly 0, F^{n1} ⊕ 0 and F^n with ranks
/// 0, k1 and r(E).
pub fn is_free_product_of_uniforms(
    m: &QMatroid,
    k1: usize,
    n1: usize,
    budget: Budget,
) -> Result<bool> {
    let (q, n) = (m.q(), m.n());
    if n1 > n {
        return Ok(false);
    }
    let z = m.cyclic_flats(budget)?;
    let expected = [
        (Subspace::zero(q, n), 0),
        (Subspace::unit(q, n, 0..n1), k1 as u32),
        (Subspace::full(q, n), m.full_rank()),
    ];
    Ok(z.len() == 3 && expected.iter().all(|(s, r)| z.rank_of(s) == Some(*r)))
}
