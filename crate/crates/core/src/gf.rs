//! Exact arithmetic over GF(q) for small primes q, over extensions GF(q^m)
//! given by a modulus polynomial, and dense linear algebra over either.
//!
//! Elements are plain `u32` values. A base-field element is its residue; an
//! extension element is the base-q positional encoding of its coefficient
//! vector, lowest degree first, so `1` is the constant one and `q` is the
//! class of the indeterminate (written `a`).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported prime for the ground field.
pub const MAX_PRIME: u32 = 13;
/// Largest supported extension field order.
pub const MAX_EXT_ORDER: u64 = 1 << 20;

pub trait Field {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> Option<u32>;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn contains(&self, a: u32) -> bool {
        a < self.order()
    }
}

pub fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseField {
    q: u32,
}

impl BaseField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if q > MAX_PRIME {
            return Err(Error::FieldTooLarge(format!(
                "q = {q} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        Ok(BaseField { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.q;
            }
            base = base * base % self.q;
            e >>= 1;
        }
        acc
    }
}

impl Field for BaseField {
    fn order(&self) -> u32 {
        self.q
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    fn neg(&self, a: u32) -> u32 {
        (self.q - a % self.q) % self.q
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.q) {
            None
        } else {
            Some(self.pow(a, (self.q - 2) as u64))
        }
    }
}

// Polynomials over GF(q): coefficient vectors, lowest degree first, trimmed.

fn trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[u32], b: &[u32], f: &BaseField) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = f
        .inv(*b.last().expect("division by zero polynomial"))
        .unwrap();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    r
}

fn poly_div_exact(a: &[u32], b: &[u32], f: &BaseField) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = f.inv(*b.last().unwrap()).unwrap();
    let mut quot = vec![0; r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    trim(quot)
}

fn poly_mul(a: &[u32], b: &[u32], f: &BaseField) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    trim(out)
}

/// Renders a polynomial high degree first, e.g. `x^4 + x + 1`.
pub fn format_poly(p: &[u32]) -> String {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (deg, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && deg > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match deg {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{deg}"),
        });
    }
    terms.join(" + ")
}

/// Finds the lowest-degree monic factor of `modulus` of degree at most m/2.
fn find_factor(modulus: &[u32], f: &BaseField) -> Option<Vec<u32>> {
    let m = modulus.len() - 1;
    let q = f.q();
    for d in 1..=m / 2 {
        let count = (q as u64).pow(d as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                cand.push((c % q as u64) as u32);
                c /= q as u64;
            }
            cand.push(1);
            if poly_rem(modulus, &cand, f).is_empty() {
                return Some(cand);
            }
        }
    }
    None
}

struct ExtInner {
    base: BaseField,
    m: u32,
    modulus: Vec<u32>,
    size: u32,
    alpha: u32,
    primitive: bool,
    // exp[i] = g^i for a multiplicative generator g (g = alpha when primitive).
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(q^m) presented as GF(q)[x] / (modulus).
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.q())
            .field("m", &self.m())
            .field("modulus", &self.inner.modulus)
            .field("primitive", &self.inner.primitive)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.base == other.inner.base && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// Builds GF(q^m) from a monic degree-m modulus (coefficients lowest
    /// degree first). The modulus must be irreducible.
    pub fn new(q: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        let base = BaseField::new(q)?;
        if m == 0 {
            return Err(Error::InvalidModulus("degree must be positive".into()));
        }
        if modulus.len() != m as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients for degree {m}, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= q) {
            return Err(Error::InvalidModulus(format!(
                "coefficient {c} is not an element of GF({q})"
            )));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let size = (q as u64).pow(m);
        if size > MAX_EXT_ORDER {
            return Err(Error::FieldTooLarge(format!(
                "GF({q}^{m}) has {size} elements, the bound is {MAX_EXT_ORDER}"
            )));
        }
        if let Some(factor) = find_factor(modulus, &base) {
            let mut mult = 0;
            let mut rest = modulus.to_vec();
            while poly_rem(&rest, &factor, &base).is_empty() {
                rest = poly_div_exact(&rest, &factor, &base);
                mult += 1;
            }
            let factor = if mult > 1 {
                format!("({})^{mult}", format_poly(&factor))
            } else {
                format!("({})", format_poly(&factor))
            };
            return Err(Error::ReducibleModulus { q, factor });
        }

        let size = size as u32;
        let mut field = ExtInner {
            base,
            m,
            modulus: modulus.to_vec(),
            size,
            alpha: 0,
            primitive: false,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.alpha = field.encode(&poly_rem(&[0, 1], modulus, &base));
        let order = size as u64 - 1;
        let factors = prime_factors(order);
        let has_full_order =
            |g: u32, f: &ExtInner| factors.iter().all(|&p| f.slow_pow(g, order / p) != 1);
        field.primitive = has_full_order(field.alpha, &field);
        let generator = if field.primitive {
            field.alpha
        } else {
            (1..size)
                .find(|&g| has_full_order(g, &field))
                .expect("multiplicative group of a finite field is cyclic")
        };
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; size as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = field.slow_mul(acc, generator);
        }
        field.exp = exp;
        field.log = log;
        Ok(ExtField {
            inner: Arc::new(field),
        })
    }

    /// GF(2^4) with a^4 = a + 1.
    pub fn gf16() -> Self {
        ExtField::new(2, 4, &[1, 1, 0, 0, 1]).expect("x^4+x+1 is irreducible")
    }

    /// GF(2^7) with a^7 = a + 1.
    pub fn gf128() -> Self {
        ExtField::new(2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]).expect("x^7+x+1 is irreducible")
    }

    pub fn q(&self) -> u32 {
        self.inner.base.q()
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn base(&self) -> BaseField {
        self.inner.base
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Whether the class of the indeterminate generates the multiplicative group.
    pub fn is_primitive(&self) -> bool {
        self.inner.primitive
    }

    /// The class of the indeterminate.
    pub fn alpha(&self) -> u32 {
        self.inner.alpha
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = self.inner.size as u64 - 1;
        let l = self.inner.log[a as usize] as u64;
        self.inner.exp[((l * (e % order)) % order) as usize]
    }

    /// `a^k` for the class `a` of the indeterminate.
    pub fn alpha_pow(&self, k: u64) -> u32 {
        self.pow(self.alpha(), k)
    }

    /// Exponent k with a^k = x, when the modulus is primitive.
    pub fn alpha_log(&self, x: u32) -> Option<u32> {
        if !self.inner.primitive || x == 0 || x >= self.inner.size {
            return None;
        }
        Some(self.inner.log[x as usize])
    }

    /// Coefficient vector (length m, lowest degree first).
    pub fn coefficients(&self, x: u32) -> Vec<u32> {
        self.inner.decode(x)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        self.inner.encode(coeffs)
    }

    /// Whether `x` lies in the prime subfield.
    pub fn is_base_element(&self, x: u32) -> bool {
        x < self.q()
    }

    /// Text form: `a^k` (or `0`) when the modulus is primitive, the integer
    /// encoding otherwise.
    pub fn format_element(&self, x: u32) -> String {
        match self.alpha_log(x) {
            _ if x == 0 => "0".into(),
            Some(k) => format!("a^{k}"),
            None => x.to_string(),
        }
    }

    /// Accepts integer encodings and `a`, `a^k` literals.
    pub fn parse_element(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let value = if let Some(rest) = s.strip_prefix('a') {
            let k = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad element literal {s:?}")))?
            };
            self.alpha_pow(k)
        } else {
            s.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad element literal {s:?}")))?
        };
        if value >= self.inner.size {
            return Err(Error::Parse(format!(
                "{s:?} is not an element of GF({}^{})",
                self.q(),
                self.m()
            )));
        }
        Ok(value)
    }
}

impl ExtInner {
    fn decode(&self, mut x: u32) -> Vec<u32> {
        let q = self.base.q();
        (0..self.m)
            .map(|_| {
                let d = x % q;
                x /= q;
                d
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        let q = self.base.q();
        coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul(&trim(self.decode(a)), &trim(self.decode(b)), &self.base);
        self.encode(&poly_rem(&prod, &self.modulus, &self.base))
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Field for ExtField {
    fn order(&self) -> u32 {
        self.inner.size
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let q = self.q();
        if q == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % q + b % q) % q) * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        let q = self.q();
        if q == 2 {
            return a;
        }
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += ((q - a % q) % q) * place;
            a /= q;
            place *= q;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.inner.size - 1;
        let l = (self.inner.log[a as usize] + self.inner.log[b as usize]) % order;
        self.inner.exp[l as usize]
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.inner.size - 1;
        let l = (order - self.inner.log[a as usize]) % order;
        Some(self.inner.exp[l as usize])
    }
}

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("rows of unequal length".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Like [`Matrix::from_rows`] but for a known column count, so that
    /// matrices with zero rows keep their width.
    pub fn with_cols(cols: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "rows must have {cols} entries"
            )));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul<F: Field + ?Sized>(&self, f: &F, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn entries_in<F: Field + ?Sized>(&self, f: &F) -> bool {
        self.data.iter().all(|&x| f.contains(x))
    }
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. The zero rows of the result sit at the bottom.
pub fn rref<F: Field + ?Sized>(f: &F, m: &Matrix) -> RowEchelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                let (x, y) = (a.get(p, j), a.get(r, j));
                a.set(p, j, y);
                a.set(r, j, x);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            let factor = a.get(i, c);
            if i == r || factor == 0 {
                continue;
            }
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowEchelon {
        matrix: a,
        rank: r,
        pivots,
    }
}

pub fn rank<F: Field + ?Sized>(f: &F, m: &Matrix) -> usize {
    rref(f, m).rank
}

/// Basis of the right null space, as the rows of a matrix in RREF.
pub fn kernel<F: Field + ?Sized>(f: &F, m: &Matrix) -> Matrix {
    let ech = rref(f, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![0u32; m.cols];
        v[fc] = 1;
        for (i, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = f.neg(ech.matrix.get(i, fc));
        }
        rows.push(v);
    }
    let basis = Matrix::with_cols(m.cols, rows).expect("uniform width");
    let red = rref(f, &basis);
    let mut out = red.matrix;
    out.rows = red.rank;
    out.data.truncate(red.rank * out.cols);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> BaseField {
        BaseField::new(2).unwrap()
    }

    #[test]
    fn rejects_non_primes_and_large_primes() {
        assert!(matches!(BaseField::new(4), Err(Error::NotPrime(4))));
        assert!(matches!(BaseField::new(1), Err(Error::NotPrime(1))));
        assert!(BaseField::new(17).is_err());
        assert!(BaseField::new(13).is_ok());
        assert!(ExtField::new(6, 2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn gf16_relation_and_size() {
        let f = ExtField::gf16();
        assert_eq!(f.order(), 16);
        assert!(f.is_primitive());
        let a = f.alpha();
        // a^4 = a + 1
        assert_eq!(f.alpha_pow(4), f.add(a, 1));
        assert_eq!(f.alpha_pow(15), 1);
        assert_eq!(f.format_element(f.alpha_pow(11)), "a^11");
    }

    #[test]
    fn gf128_relation() {
        let f = ExtField::gf128();
        assert_eq!(f.order(), 128);
        assert_eq!(f.alpha_pow(7), f.add(f.alpha(), 1));
        assert_eq!(f.parse_element("a^36").unwrap(), f.alpha_pow(36));
    }

    #[test]
    fn reducible_modulus_names_factor() {
        match ExtField::new(2, 2, &[1, 0, 1]) {
            Err(Error::ReducibleModulus { factor, .. }) => assert_eq!(factor, "(x + 1)^2"),
            other => panic!("unexpected {other:?}"),
        }
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over GF(2)
        match ExtField::new(2, 4, &[1, 0, 1, 0, 1]) {
            Err(Error::ReducibleModulus { factor, .. }) => assert_eq!(factor, "(x^2 + x + 1)^2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_primitive_modulus_is_accepted() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible over GF(2) but x has order 5.
        let f = ExtField::new(2, 4, &[1, 1, 1, 1, 1]).unwrap();
        assert!(!f.is_primitive());
        assert_eq!(f.pow(f.alpha(), 5), 1);
        assert_eq!(f.format_element(f.alpha()), "2");
        for x in 1..16 {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
    }

    #[test]
    fn ternary_extension() {
        // x^2 + 1 is irreducible over GF(3)
        let f = ExtField::new(3, 2, &[1, 0, 1]).unwrap();
        let a = f.alpha();
        assert_eq!(f.mul(a, a), f.neg(1));
        assert_eq!(f.add(a, f.neg(a)), 0);
    }

    fn check_axioms<F: Field>(f: &F) {
        let n = f.order();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..n {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 5, 7] {
            check_axioms(&BaseField::new(q).unwrap());
        }
        check_axioms(&ExtField::gf16());
        check_axioms(&ExtField::new(3, 2, &[2, 2, 1]).unwrap());
        check_axioms(&ExtField::new(5, 2, &[2, 0, 1]).unwrap());
    }

    #[test]
    fn rref_examples() {
        let f = gf2();
        let id = Matrix::identity(3);
        let e = rref(&f, &id);
        assert_eq!(e.matrix, id);
        assert_eq!(e.rank, 3);

        let z = Matrix::zero(2, 4);
        let e = rref(&f, &z);
        assert_eq!(e.matrix, z);
        assert_eq!(e.rank, 0);

        let m =
            Matrix::from_rows(vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]).unwrap();
        let e = rref(&f, &m);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(rref(&f, &e.matrix), e, "idempotent");
    }

    /// Row space by brute force: all GF(2) combinations of the rows.
    fn row_space(m: &Matrix) -> std::collections::BTreeSet<Vec<u32>> {
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << m.rows()) {
            let mut v = vec![0; m.cols()];
            for i in 0..m.rows() {
                if mask >> i & 1 == 1 {
                    for (j, x) in v.iter_mut().enumerate() {
                        *x ^= m.get(i, j);
                    }
                }
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn rank_two_example_by_row_space() {
        let m =
            Matrix::from_rows(vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]).unwrap();
        // 4 vectors in the row space means dimension 2
        assert_eq!(row_space(&m).len(), 4);
        assert_eq!(row_space(&rref(&gf2(), &m).matrix), row_space(&m));
    }

    #[test]
    fn kernel_examples() {
        let f = gf2();
        assert_eq!(kernel(&f, &Matrix::identity(2)).rows(), 0);
        assert_eq!(kernel(&f, &Matrix::zero(1, 3)).rows(), 3);
        let m = Matrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let k = kernel(&f, &m);
        // Oracle: every vector of GF(2)^3 with M v = 0.
        let mut null = Vec::new();
        for v in 0u32..8 {
            let v: Vec<u32> = (0..3).map(|i| v >> i & 1).collect();
            if (0..2).all(|i| (0..3).map(|j| m.get(i, j) * v[j]).sum::<u32>() % 2 == 0) {
                null.push(v);
            }
        }
        assert_eq!(null.len(), 2);
        assert_eq!(k.to_rows(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn rank_nullity_over_extension() {
        let f = ExtField::gf16();
        let a = f.alpha();
        let m = Matrix::from_rows(vec![
            vec![1, a, 0, f.alpha_pow(11)],
            vec![0, 0, 1, f.alpha_pow(4)],
        ])
        .unwrap();
        let r = rank(&f, &m);
        let k = kernel(&f, &m);
        assert_eq!(r + k.rows(), m.cols());
        let prod = m.mul(&f, &k.transpose()).unwrap();
        assert!(prod.to_rows().iter().flatten().all(|&x| x == 0));
    }
}
