//! The splitting F_q^{n1+n2} = E1 ⊕ E2 by coordinate blocks.

use crate::error::{Error, Result};

use super::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectSumContext {
    pub q: u8,
    pub n1: usize,
    pub n2: usize,
}

impl DirectSumContext {
    pub fn new(q: u8, n1: usize, n2: usize) -> Result<Self> {
        super::check_ambient(q, n1 + n2)?;
        Ok(DirectSumContext { q, n1, n2 })
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    fn width(&self, side: Side) -> usize {
        match side {
            Side::First => self.n1,
            Side::Second => self.n2,
        }
    }

    fn bits(&self, coords: usize) -> u32 {
        if self.q == 2 {
            coords as u32
        } else {
            4 * coords as u32
        }
    }

    fn check(&self, a: &Subspace, n: usize) -> Result<()> {
        if a.q() != self.q || a.n() != n {
            return Err(Error::AmbientMismatch {
                expected_q: self.q,
                expected_n: n,
                q: a.q(),
                n: a.n(),
            });
        }
        Ok(())
    }

    /// ι_side: E_side -> E.
    pub fn embed(&self, side: Side, a: &Subspace) -> Result<Subspace> {
        self.check(a, self.width(side))?;
        let shift = match side {
            Side::First => 0,
            Side::Second => self.bits(self.n1),
        };
        // Shifting preserves canonical form.
        Ok(Subspace::from_canonical_rows(
            self.q,
            self.n(),
            a.rows().iter().map(|&r| r << shift).collect(),
        ))
    }

    /// ι_side(E_side).
    pub fn block(&self, side: Side) -> Subspace {
        let full = Subspace::full(self.q, self.width(side));
        self.embed(side, &full).expect("matching ambient")
    }

    /// π_side: E -> E_side.
    pub fn project(&self, side: Side, a: &Subspace) -> Result<Subspace> {
        self.check(a, self.n())?;
        let mask = |c: usize| {
            let b = self.bits(c);
            if b >= 64 {
                u64::MAX
            } else {
                (1u64 << b) - 1
            }
        };
        let (shift, m) = match side {
            Side::First => (0, mask(self.n1)),
            Side::Second => (self.bits(self.n1), mask(self.n2)),
        };
        Ok(Subspace::span_packed(
            self.q,
            self.width(side),
            a.rows().iter().map(|&r| (r >> shift) & m),
        ))
    }

    /// (π₁(A ∩ ι₁(E₁)), π₂(A)).
    pub fn slice(&self, a: &Subspace) -> Result<(Subspace, Subspace)> {
        self.check(a, self.n())?;
        let low = a.intersect(&self.block(Side::First));
        Ok((
            self.project(Side::First, &low)?,
            self.project(Side::Second, a)?,
        ))
    }

    /// A ⊕ B = ι₁(A) + ι₂(B).
    pub fn direct_sum(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        Ok(self
            .embed(Side::First, a)?
            .sum(&self.embed(Side::Second, b)?))
    }
}
