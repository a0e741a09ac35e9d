//! Subspaces of F_q^n in canonical reduced row echelon form.
//!
//! Rows are packed into `u64` words. Over GF(2) coordinate `j` is bit `j`;
//! over odd q it is the nibble at bits `4j..4j+4`. The pivot of a row is its
//! lowest-index nonzero coordinate, pivot entries are 1, pivot columns are
//! zero in every other row and rows are sorted by pivot. Equality of
//! [`Subspace`] values is therefore equality of subspaces.

mod direct_sum;
mod enumerate;
mod lattice;
mod packed;
mod quotient;

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use direct_sum::{DirectSumContext, Side};
pub use enumerate::{
    enumerate_subspaces, galois_number, gaussian_binomial, pivot_patterns, subspaces_of_dim,
    subspaces_with_pivots,
};
pub use lattice::SubspaceLattice;
pub use quotient::QuotientMap;

pub(crate) use packed::{axpy, entry, inv_mod, pack, pivot_of, scale, unpack};

/// Largest ambient dimension supported over GF(2).
pub const MAX_N_BINARY: usize = 32;
/// Largest ambient dimension supported over odd prime fields.
pub const MAX_N_ODD: usize = 16;

pub type Rows = SmallVec<[u64; 8]>;

pub fn check_ambient(q: u8, n: usize) -> Result<()> {
    if !crate::gf::is_prime(q as u32) || q as u32 > crate::gf::MAX_PRIME {
        return Err(Error::NotPrime(q as u32));
    }
    let max = if q == 2 { MAX_N_BINARY } else { MAX_N_ODD };
    if n > max {
        return Err(Error::AmbientTooLarge { q, n });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u8,
    n: u8,
    rows: Rows,
}

/// Incremental row reduction producing canonical bases.
#[derive(Clone, Debug)]
pub struct Echelon {
    q: u8,
    n: u8,
    rows: Rows,
}

impl Echelon {
    pub fn new(q: u8, n: usize) -> Self {
        Echelon {
            q,
            n: n as u8,
            rows: Rows::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        Echelon {
            q: s.q,
            n: s.n,
            rows: s.rows.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the current span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        if self.q == 2 {
            for &r in &self.rows {
                if v >> r.trailing_zeros() & 1 == 1 {
                    v ^= r;
                }
            }
        } else {
            for &r in &self.rows {
                let c = entry(v, pivot_of(r, self.q), self.q);
                if c != 0 {
                    v = axpy(v, self.q - c, r, self.q, self.n as usize);
                }
            }
        }
        v
    }

    /// Adds `v` to the span. Returns false when `v` was already in it.
    pub fn insert(&mut self, v: u64) -> bool {
        let mut v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let q = self.q;
        let p = pivot_of(v, q);
        if q == 2 {
            for r in self.rows.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= v;
                }
            }
        } else {
            let n = self.n as usize;
            v = scale(v, inv_mod(entry(v, p, q), q), q, n);
            for r in self.rows.iter_mut() {
                let c = entry(*r, p, q);
                if c != 0 {
                    *r = axpy(*r, q - c, v, q, n);
                }
            }
        }
        let at = self
            .rows
            .iter()
            .position(|&r| pivot_of(r, q) > p)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            q: self.q,
            n: self.n,
            rows: self.rows,
        }
    }
}

impl Subspace {
    pub fn zero(q: u8, n: usize) -> Self {
        Subspace {
            q,
            n: n as u8,
            rows: Rows::new(),
        }
    }

    pub fn full(q: u8, n: usize) -> Self {
        Subspace::unit(q, n, 0..n)
    }

    /// Span of the unit vectors with the given (0-based) indices.
    pub fn unit(q: u8, n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Subspace::span_packed(q, n, indices.into_iter().map(|i| unit_vector(q, i)))
    }

    /// Span of already packed vectors.
    pub fn span_packed(q: u8, n: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        let mut e = Echelon::new(q, n);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Span of arbitrary coordinate vectors.
    pub fn span(q: u8, n: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        check_ambient(q, n)?;
        let mut e = Echelon::new(q, n);
        for v in vectors {
            e.insert(pack_checked(q, n, v)?);
        }
        Ok(e.into_subspace())
    }

    /// Accepts a basis only when it is already the canonical one.
    pub fn from_rref(q: u8, n: usize, basis: &[Vec<u8>]) -> Result<Self> {
        let s = Subspace::span(q, n, basis)?;
        let canonical = s.basis();
        if canonical.as_slice() != basis {
            return Err(Error::NotCanonical {
                suggestion: canonical,
            });
        }
        Ok(s)
    }

    pub(crate) fn from_canonical_rows(q: u8, n: usize, rows: Rows) -> Self {
        Subspace {
            q,
            n: n as u8,
            rows,
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.n() - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n()
    }

    /// Packed canonical rows.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|&r| unpack(r, self.q, self.n()))
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|&r| pivot_of(r, self.q)).collect()
    }

    pub fn same_ambient(&self, other: &Subspace) -> bool {
        self.q == other.q && self.n == other.n
    }

    pub fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                expected_q: self.q,
                expected_n: self.n(),
                q: other.q,
                n: other.n(),
            })
        }
    }

    fn assert_same(&self, other: &Subspace) {
        assert!(
            self.same_ambient(other),
            "ambient mismatch: F_{}^{} vs F_{}^{}",
            self.q,
            self.n,
            other.q,
            other.n
        );
    }

    pub fn contains_vector(&self, v: u64) -> bool {
        Echelon::from_subspace(self).reduce(v) == 0
    }

    /// `other <= self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.assert_same(other);
        if other.dim() > self.dim() {
            return false;
        }
        let e = Echelon::from_subspace(self);
        other.rows.iter().all(|&r| e.reduce(r) == 0)
    }

    /// `self <= other`.
    pub fn le(&self, other: &Subspace) -> bool {
        other.contains(self)
    }

    pub fn comparable(&self, other: &Subspace) -> bool {
        self.le(other) || other.le(self)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.assert_same(other);
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = Echelon::from_subspace(big);
        for &r in &small.rows {
            e.insert(r);
        }
        e.into_subspace()
    }

    pub fn add_vector(&self, v: u64) -> Subspace {
        let mut e = Echelon::from_subspace(self);
        e.insert(v);
        e.into_subspace()
    }

    pub fn try_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(self.sum(other))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.assert_same(other);
        if self.contains(other) {
            return other.clone();
        }
        if other.contains(self) {
            return self.clone();
        }
        let n = self.n();
        if self.q == 2 && 2 * n <= 64 {
            // Zassenhaus: reduce (a | a) and (b | 0), low block first.
            let mut e = Echelon::new(2, 2 * n);
            for &a in &self.rows {
                e.insert(a | a << n);
            }
            for &b in &other.rows {
                e.insert(b);
            }
            let low = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            return Subspace::span_packed(
                2,
                n,
                e.into_subspace()
                    .rows
                    .iter()
                    .filter(|&&r| r & low == 0)
                    .map(|&r| r >> n),
            );
        }
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }

    pub fn try_intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(self.intersect(other))
    }

    /// Complement with respect to the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace {
        let (q, n) = (self.q, self.n());
        let pivots = self.pivots();
        let mut e = Echelon::new(q, n);
        for f in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = unit_vector(q, f);
            for (&r, &p) in self.rows.iter().zip(&pivots) {
                let c = entry(r, f, q);
                if c != 0 {
                    v = axpy(v, (q - c) % q, unit_vector(q, p), q, n);
                }
            }
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Coordinate reversal `(x_1, ..., x_n) -> (x_n, ..., x_1)`.
    pub fn rev(&self) -> Subspace {
        let (q, n) = (self.q, self.n());
        Subspace::span_packed(
            q,
            n,
            self.rows.iter().map(|&r| {
                let mut coords = unpack(r, q, n);
                coords.reverse();
                pack(&coords, q)
            }),
        )
    }

    /// `rev` of the orthogonal complement.
    pub fn phi(&self) -> Subspace {
        self.orthogonal_complement().rev()
    }

    /// Inverse of [`Subspace::phi`].
    pub fn phi_inverse(&self) -> Subspace {
        self.rev().orthogonal_complement()
    }

    /// Every vector of the subspace (q^dim of them).
    pub fn vectors(&self) -> impl Iterator<Item = u64> + '_ {
        let q = self.q as u64;
        let k = self.dim() as u32;
        (0..q.pow(k)).map(move |code| self.combine(&digits(code, self.q, self.dim())))
    }

    /// `sum_i coeffs[i] * row_i`.
    pub fn combine(&self, coeffs: &[u8]) -> u64 {
        let (q, n) = (self.q, self.n());
        let mut v = 0;
        for (&c, &r) in coeffs.iter().zip(&self.rows) {
            if c != 0 {
                v = axpy(v, c, r, q, n);
            }
        }
        v
    }

    /// One-dimensional subspaces contained in `self`.
    pub fn atoms(&self) -> Vec<Subspace> {
        let (q, n) = (self.q, self.n());
        projective_points(q, self.dim())
            .into_iter()
            .map(|c| Subspace::span_packed(q, n, [self.combine(&c)]))
            .collect()
    }

    /// Codimension-one subspaces of `self`.
    pub fn hyperplanes(&self) -> Vec<Subspace> {
        let (q, n, k) = (self.q, self.n(), self.dim());
        projective_points(q, k)
            .into_iter()
            .map(|y| {
                let t = y.iter().position(|&c| c != 0).unwrap();
                Subspace::span_packed(
                    q,
                    n,
                    (0..k).filter(|&i| i != t).map(|i| {
                        // b_i - y_i b_t lies in the kernel of y
                        axpy(self.rows[i], (q - y[i]) % q, self.rows[t], q, n)
                    }),
                )
            })
            .collect()
    }

    /// Subspaces `B` of the ambient space with `self` covered by `B`.
    pub fn covers(&self) -> Vec<Subspace> {
        self.covers_within(&Subspace::full(self.q, self.n()))
    }

    /// Covers of `self` that lie inside `upper`.
    pub fn covers_within(&self, upper: &Subspace) -> Vec<Subspace> {
        let qm = QuotientMap::new(self, upper).expect("covers_within needs self <= upper");
        projective_points(self.q, qm.quotient_dim())
            .into_iter()
            .map(|c| self.add_vector(qm.lift_vector(&c)))
            .collect()
    }

    /// All subspaces of `self`, grouped by dimension.
    pub fn subspaces(&self) -> impl Iterator<Item = Subspace> + '_ {
        let (q, n) = (self.q, self.n());
        enumerate_subspaces(q, self.dim()).map(move |s| {
            Subspace::span_packed(
                q,
                n,
                s.rows.iter().map(|&r| self.combine(&unpack(r, q, s.n()))),
            )
        })
    }

    pub fn is_hyperplane_of(&self, upper: &Subspace) -> bool {
        self.dim() + 1 == upper.dim() && upper.contains(self)
    }
}

pub(crate) fn unit_vector(q: u8, i: usize) -> u64 {
    if q == 2 {
        1 << i
    } else {
        1 << (4 * i)
    }
}

fn pack_checked(q: u8, n: usize, v: &[u8]) -> Result<u64> {
    if v.len() != n {
        return Err(Error::InvalidVector(format!(
            "expected {n} coordinates, got {}",
            v.len()
        )));
    }
    if let Some(&c) = v.iter().find(|&&c| c >= q) {
        return Err(Error::InvalidVector(format!(
            "{c} is not an element of GF({q})"
        )));
    }
    Ok(pack(v, q))
}

/// Base-q digits of `code`, least significant first.
pub(crate) fn digits(mut code: u64, q: u8, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let d = (code % q as u64) as u8;
            code /= q as u64;
            d
        })
        .collect()
}

/// Representatives of the points of PG(k-1, q): nonzero vectors of F_q^k
/// whose first nonzero coordinate is 1.
pub fn projective_points(q: u8, k: usize) -> Vec<Vec<u8>> {
    let total = (q as u64).pow(k as u32);
    (1..total)
        .map(|code| digits(code, q, k))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.n();
        let sep = if self.q > 9 { "," } else { "" };
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|&r| {
                unpack(r, self.q, n)
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        write!(f, "<{}>", rows.join(","))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Orders subspaces by dimension, then by canonical rows.
pub fn dim_order(a: &Subspace, b: &Subspace) -> std::cmp::Ordering {
    (a.dim(), &a.rows).cmp(&(b.dim(), &b.rows))
}

#[cfg(test)]
mod tests;
