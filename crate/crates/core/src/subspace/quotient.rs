//! Coordinates on a quotient B/A.

use crate::error::{Error, Result};
use crate::gf::{rref, BaseField, Field, Matrix};

use super::{entry, unpack, Echelon, Subspace};

/// A fixed isomorphism B/A ≅ F_q^d, d = dim B - dim A.
///
/// The complement of A in B is the greedy choice over the canonical rows of
/// B: a row is kept when it is independent of A and of the rows kept so far.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    lower: Subspace,
    upper: Subspace,
    complement: Vec<u64>,
    upper_pivots: Vec<usize>,
    // coordinates w.r.t. upper's rows -> quotient coordinates (dim B x d)
    to_quotient: Matrix,
}

impl QuotientMap {
    pub fn new(lower: &Subspace, upper: &Subspace) -> Result<Self> {
        lower.check_same_ambient(upper)?;
        if !upper.contains(lower) {
            return Err(Error::NotNested {
                lower: lower.to_string(),
                upper: upper.to_string(),
            });
        }
        let q = lower.q();
        let f = BaseField::new(q as u32)?;
        let mut e = Echelon::from_subspace(lower);
        let mut chosen = Vec::new();
        for (i, &r) in upper.rows().iter().enumerate() {
            if e.insert(r) {
                chosen.push(i);
            }
        }
        let complement: Vec<u64> = chosen.iter().map(|&i| upper.rows()[i]).collect();
        let upper_pivots = upper.pivots();
        let k = upper.dim();
        let d = complement.len();

        // Rows of `basis` express lower's basis then the complement in
        // upper-coordinates; its inverse maps upper-coordinates to
        // (lower | quotient) coordinates.
        let coords = |v: u64| -> Vec<u32> {
            upper_pivots
                .iter()
                .map(|&p| entry(v, p, q) as u32)
                .collect()
        };
        let mut aug = Matrix::zero(k, 2 * k);
        let basis_rows = lower.rows().iter().chain(&complement);
        for (i, &v) in basis_rows.enumerate() {
            for (j, c) in coords(v).into_iter().enumerate() {
                aug.set(i, j, c);
            }
            aug.set(i, k + i, 1);
        }
        // Solving x * basis = beta means x = beta * basis^{-1}.
        let inv = rref(&f, &aug).matrix;
        let mut to_quotient = Matrix::zero(k, d);
        for i in 0..k {
            for j in 0..d {
                to_quotient.set(i, j, inv.get(i, k + lower.dim() + j));
            }
        }
        Ok(QuotientMap {
            lower: lower.clone(),
            upper: upper.clone(),
            complement,
            upper_pivots,
            to_quotient,
        })
    }

    pub fn lower(&self) -> &Subspace {
        &self.lower
    }

    pub fn upper(&self) -> &Subspace {
        &self.upper
    }

    pub fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    /// The chosen complement basis (packed ambient vectors).
    pub fn complement(&self) -> &[u64] {
        &self.complement
    }

    pub fn lift_vector(&self, coords: &[u8]) -> u64 {
        let (q, n) = (self.lower.q(), self.lower.n());
        coords
            .iter()
            .zip(&self.complement)
            .fold(0, |acc, (&c, &w)| super::axpy(acc, c, w, q, n))
    }

    /// Quotient coordinates of a vector of `upper`.
    pub fn project_vector(&self, v: u64) -> Vec<u8> {
        let q = self.lower.q();
        let f = BaseField::new(q as u32).expect("valid field");
        let beta: Vec<u32> = self
            .upper_pivots
            .iter()
            .map(|&p| entry(v, p, q) as u32)
            .collect();
        (0..self.quotient_dim())
            .map(|j| {
                beta.iter().enumerate().fold(0, |acc, (i, &b)| {
                    f.add(acc, f.mul(b, self.to_quotient.get(i, j)))
                }) as u8
            })
            .collect()
    }

    /// Image in F_q^d of a subspace X with lower <= X <= upper (or any X <= upper).
    pub fn project(&self, x: &Subspace) -> Subspace {
        let q = self.lower.q();
        let d = self.quotient_dim();
        Subspace::span_packed(
            q,
            d,
            x.rows()
                .iter()
                .map(|&r| super::pack(&self.project_vector(r), q)),
        )
    }

    /// Preimage of a subspace Y of F_q^d: lower + lift(Y).
    pub fn lift(&self, y: &Subspace) -> Subspace {
        let q = self.lower.q();
        let mut e = Echelon::from_subspace(&self.lower);
        for &r in y.rows() {
            e.insert(self.lift_vector(&unpack(r, q, y.n())));
        }
        e.into_subspace()
    }
}
