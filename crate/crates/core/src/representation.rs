//! q-matroids represented by matrices over GF(q^m), linear sets on the
//! projective line, and the search for free-product representations.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::constructions::is_free_product_of_uniforms;
use crate::error::{Error, Result};
use crate::gf::{rank, ExtField, Field, Matrix};
use crate::qmatroid::QMatroid;
use crate::subspace::{digits, Subspace, SubspaceLattice};

/// The F_q-span of the columns of a k x n matrix over GF(q^m).
#[derive(Clone, Debug)]
pub struct QSystem {
    field: ExtField,
    g: Matrix,
}

impl QSystem {
    /// Requires full row rank over GF(q^m) and F_q-independent columns.
    pub fn new(field: ExtField, g: Matrix) -> Result<Self> {
        check_full_rank(&field, &g)?;
        let sys = QSystem { field, g };
        let n = sys.n();
        if sys.column_rank_over_base() < n {
            return Err(Error::InvalidSystem(
                "columns are linearly dependent over the base field".into(),
            ));
        }
        Ok(sys)
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    /// G v for a coefficient vector v over F_q.
    pub fn image(&self, v: &[u8]) -> Vec<u32> {
        image(&self.field, &self.g, v)
    }

    /// dim over GF(q^m) of the span of G(U).
    pub fn rank_of(&self, u: &Subspace) -> u32 {
        rank_of(&self.field, &self.g, u)
    }

    /// F_q-rank of the columns, each read as a vector of length k m over F_q.
    fn column_rank_over_base(&self) -> usize {
        let f = &self.field;
        let rows: Vec<Vec<u32>> = (0..self.n())
            .map(|j| {
                self.g
                    .column(j)
                    .iter()
                    .flat_map(|&x| f.coefficients(x))
                    .collect()
            })
            .collect();
        rank(&f.base(), &Matrix::from_rows(rows).expect("uniform width"))
    }

    /// dim over F_q of the intersection with the hyperplane a . x = 0.
    pub fn hyperplane_meet_dim(&self, a: &[u32]) -> usize {
        let f = &self.field;
        let rows: Vec<Vec<u32>> = (0..self.n())
            .map(|j| {
                let s = (0..self.k()).fold(0, |acc, i| f.add(acc, f.mul(a[i], self.g.get(i, j))));
                f.coefficients(s)
            })
            .collect();
        let m = Matrix::from_rows(rows).expect("uniform width");
        self.n() - rank(&f.base(), &m)
    }
}

fn check_full_rank(field: &ExtField, g: &Matrix) -> Result<()> {
    if !g.entries_in(field) {
        return Err(Error::InvalidSystem("entries outside the field".into()));
    }
    let r = rank(field, g);
    if r < g.rows() {
        return Err(Error::NotFullRank {
            rank: r,
            rows: g.rows(),
        });
    }
    Ok(())
}

fn image(f: &ExtField, g: &Matrix, v: &[u8]) -> Vec<u32> {
    (0..g.rows())
        .map(|i| {
            v.iter().enumerate().fold(0, |acc, (j, &c)| {
                if c == 0 {
                    acc
                } else {
                    f.add(acc, f.mul(c as u32, g.get(i, j)))
                }
            })
        })
        .collect()
}

fn rank_of(f: &ExtField, g: &Matrix, u: &Subspace) -> u32 {
    if u.is_zero() {
        return 0;
    }
    let rows: Vec<Vec<u32>> = u.basis().iter().map(|b| image(f, g, b)).collect();
    rank(
        f,
        &Matrix::with_cols(g.rows(), rows).expect("uniform width"),
    ) as u32
}

/// r(U) = rk(G A^U), with A^U the transpose of U's canonical basis.
pub fn qmatroid_from_matrix(field: &ExtField, g: &Matrix, budget: Budget) -> Result<QMatroid> {
    check_full_rank(field, g)?;
    let q = field.q() as u8;
    let lattice = SubspaceLattice::get(q, g.cols(), budget)?;
    let ranks = lattice
        .elements()
        .par_iter()
        .map(|u| rank_of(field, g, u))
        .collect();
    Ok(QMatroid::from_rank_table_unchecked(lattice, ranks))
}

/// (G1 X; 0 G2).
pub fn block_rep(g1: &Matrix, g2: &Matrix, x: &Matrix) -> Result<Matrix> {
    if x.rows() != g1.rows() || x.cols() != g2.cols() {
        return Err(Error::ShapeMismatch(format!(
            "X must be {}x{}, got {}x{}",
            g1.rows(),
            g2.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let (k1, n1) = (g1.rows(), g1.cols());
    let mut out = Matrix::zero(k1 + g2.rows(), n1 + g2.cols());
    for i in 0..k1 {
        for j in 0..n1 {
            out.set(i, j, g1.get(i, j));
        }
        for j in 0..x.cols() {
            out.set(i, n1 + j, x.get(i, j));
        }
    }
    for i in 0..g2.rows() {
        for j in 0..g2.cols() {
            out.set(k1 + i, n1 + j, g2.get(i, j));
        }
    }
    Ok(out)
}

/// Points of PG(1, q^m) met by a rank-n system, with their weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSetProfile {
    /// Normalized representatives ((1, x) or (0, 1)) and weights, sorted.
    pub points: Vec<(Vec<u32>, u32)>,
    pub rank: usize,
    /// Points of the projective line that were scanned.
    pub scanned: u64,
}

impl LinearSetProfile {
    /// Σ (q^w - 1) over the points.
    pub fn weight_sum(&self, q: u32) -> u64 {
        self.points
            .iter()
            .map(|(_, w)| (q as u64).pow(*w) - 1)
            .sum()
    }

    pub fn count_of_weight(&self, w: u32) -> usize {
        self.points.iter().filter(|p| p.1 == w).count()
    }

    /// Some i >= 2 when exactly one point has weight i and all others weight 1.
    pub fn club_index(&self) -> Option<u32> {
        let heavy: Vec<u32> = self
            .points
            .iter()
            .map(|p| p.1)
            .filter(|&w| w != 1)
            .collect();
        match heavy[..] {
            [i] if i >= 2 => Some(i),
            _ => None,
        }
    }
}

pub fn linear_set_profile(s: &QSystem) -> Result<LinearSetProfile> {
    if s.k() != 2 {
        return Err(Error::InvalidSystem(format!(
            "linear sets need k = 2, got k = {}",
            s.k()
        )));
    }
    let f = s.field();
    let (q, n) = (f.q(), s.n());
    let size = f.order();
    let mut counts = vec![0u64; size as usize + 1];
    for code in 1..(q as u64).pow(n as u32) {
        let v = digits(code, q as u8, n);
        let p = s.image(&v);
        let slot = match f.inv(p[0]) {
            Some(inv) => f.mul(p[1], inv) as usize,
            None => size as usize,
        };
        counts[slot] += 1;
    }
    let points = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(slot, &c)| {
            let point = if slot == size as usize {
                vec![0, 1]
            } else {
                vec![1, slot as u32]
            };
            let w = (c + 1).ilog(q as u64);
            (point, w)
        })
        .collect();
    Ok(LinearSetProfile {
        points,
        rank: n,
        scanned: size as u64 + 1,
    })
}

/// The i of an i-club, if the linear set is one.
pub fn is_i_club(s: &QSystem) -> Result<Option<u32>> {
    Ok(linear_set_profile(s)?.club_index())
}

/// Normalized projective points of PG(k-1, q^m).
fn ext_projective_points(f: &ExtField, k: usize) -> Vec<Vec<u32>> {
    let size = f.order() as u64;
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        for code in 0..size.pow(free as u32) {
            let mut p = vec![0u32; k];
            p[lead] = 1;
            let mut c = code;
            for slot in p[lead + 1..].iter_mut().rev() {
                *slot = (c % size) as u32;
                c /= size;
            }
            out.push(p);
        }
    }
    out
}

/// Every hyperplane not containing F^{k1} ⊕ 0 meets S in F_q-dimension at most h.
pub fn is_evasive(s: &QSystem, k1: usize, h: usize, budget: Budget) -> Result<bool> {
    Ok(evasion_witness(s, k1, h, budget)?.is_none())
}

/// Normal vector of a hyperplane in the family meeting S in dimension > h.
pub fn evasion_witness(
    s: &QSystem,
    k1: usize,
    h: usize,
    budget: Budget,
) -> Result<Option<Vec<u32>>> {
    let (k, size) = (s.k(), s.field().order() as u128);
    if k1 > k {
        return Err(Error::ShapeMismatch(format!("k1 = {k1} exceeds k = {k}")));
    }
    budget.check_count((size.pow(k as u32) - 1) / (size - 1))?;
    // a . x vanishes on F^{k1} ⊕ 0 iff a_1 = ... = a_{k1} = 0
    Ok(ext_projective_points(s.field(), k)
        .into_par_iter()
        .filter(|a| a[..k1].iter().any(|&c| c != 0))
        .find_first(|a| s.hyperplane_meet_dim(a) > h))
}

/// M[G] has exactly the cyclic flats 0, F_q^{n1} ⊕ 0 and F_q^n with ranks
/// 0, k1 and k.
pub fn verify_free_product_rep(
    field: &ExtField,
    g: &Matrix,
    n1: usize,
    k1: usize,
    budget: Budget,
) -> Result<bool> {
    let m = qmatroid_from_matrix(field, g, budget)?;
    is_free_product_of_uniforms(&m, k1, n1, budget)
}

/// Every X with (G1 X; 0 G2) a free-product representation, in
/// lexicographic order of entries (row-major). x_11 is fixed to 0 when G1
/// has one row.
pub fn search_x(field: &ExtField, g1: &Matrix, g2: &Matrix, budget: Budget) -> Result<Vec<Matrix>> {
    let (k1, n1, n2) = (g1.rows(), g1.cols(), g2.cols());
    let size = field.order() as u64;
    let fixed = usize::from(k1 == 1);
    let free = k1 * n2 - fixed;
    let space = (size as u128).pow(free as u32);
    budget.check_count(space)?;
    budget.check_lattice(field.q() as u8, n1 + n2)?;
    check_full_rank(field, g1)?;
    check_full_rank(field, g2)?;
    let hits = (0..space as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut entries = vec![0u32; k1 * n2];
            let mut c = code;
            for slot in entries[fixed..].iter_mut().rev() {
                *slot = (c % size) as u32;
                c /= size;
            }
            let x = Matrix::from_rows(entries.chunks(n2).map(<[u32]>::to_vec).collect())
                .expect("uniform width");
            let g = block_rep(g1, g2, &x).expect("shapes checked");
            match verify_free_product_rep(field, &g, n1, k1, budget) {
                Ok(true) => Some(Ok(x)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hits)
}
