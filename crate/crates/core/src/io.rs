//! JSON documents for fields, subspaces, q-matroids and matrices, and a
//! plain-text rendering of cyclic-flat lattices.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factorization::{vamos, FactorKind, FactorizationReport};
use crate::gf::{ExtField, Matrix};
use crate::qmatroid::{CyclicFlatLattice, QMatroid};
use crate::subspace::{Subspace, SubspaceLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub q: u32,
    pub m: u32,
    /// Coefficients, lowest degree first.
    pub modulus: Vec<u32>,
}

impl FieldDoc {
    pub fn build(&self) -> Result<ExtField> {
        ExtField::new(self.q, self.m, &self.modulus)
    }

    pub fn of(f: &ExtField) -> Self {
        FieldDoc {
            q: f.q(),
            m: f.m(),
            modulus: f.modulus().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub q: u8,
    pub n: usize,
    pub basis: Vec<Vec<u8>>,
}

impl SubspaceDoc {
    /// Rejects bases that are not in reduced row echelon form.
    pub fn build(&self) -> Result<Subspace> {
        Subspace::from_rref(self.q, self.n, &self.basis)
    }

    pub fn of(s: &Subspace) -> Self {
        SubspaceDoc {
            q: s.q(),
            n: s.n(),
            basis: s.basis(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatDoc {
    pub basis: Vec<Vec<u8>>,
    pub rank: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDoc {
    pub basis: Vec<Vec<u8>>,
    pub r: i64,
}

/// A q-matroid by its cyclic flats, its full rank table, as U_{k,n}, or by
/// name (`"vamos"`, on F_q^8).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMatroidDoc {
    pub q: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic_flats: Option<Vec<FlatDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<RankDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
}

/// A parsed document before any axiom is checked.
#[derive(Clone, Debug)]
pub enum RawQMatroid {
    CyclicFlats(Vec<(Subspace, i64)>),
    Ranks(Arc<SubspaceLattice>, Vec<i64>),
    Built(QMatroid),
}

impl QMatroidDoc {
    fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::Parse("field \"n\" is required".into()))
    }

    pub fn raw(&self, budget: Budget) -> Result<RawQMatroid> {
        let given = [
            self.cyclic_flats.is_some(),
            self.ranks.is_some(),
            self.uniform.is_some(),
            self.named.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Error::Parse(
                "give exactly one of cyclic_flats, ranks, uniform, named".into(),
            ));
        }
        if let Some(name) = &self.named {
            return match name.as_str() {
                "vamos" => Ok(RawQMatroid::Built(vamos(self.q)?)),
                other => Err(Error::Parse(format!("unknown q-matroid {other:?}"))),
            };
        }
        let (q, n) = (self.q, self.require_n()?);
        if let Some(k) = self.uniform {
            return Ok(RawQMatroid::Built(QMatroid::uniform(q, k, n)?));
        }
        if let Some(flats) = &self.cyclic_flats {
            let family = flats
                .iter()
                .map(|f| Ok((Subspace::from_rref(q, n, &f.basis)?, f.rank)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(RawQMatroid::CyclicFlats(family));
        }
        let entries = self.ranks.as_ref().expect("one form is present");
        let lattice = SubspaceLattice::get(q, n, budget)?;
        let mut table = vec![None; lattice.len()];
        for e in entries {
            let s = Subspace::from_rref(q, n, &e.basis)?;
            let id = lattice.id_of(&s);
            if table[id].replace(e.r).is_some() {
                return Err(Error::Parse(format!("rank of {s} given twice")));
            }
        }
        let ranks = table
            .iter()
            .zip(lattice.elements())
            .map(|(r, s)| r.ok_or_else(|| Error::Parse(format!("no rank given for {s}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(RawQMatroid::Ranks(lattice, ranks))
    }

    /// Parses and validates.
    pub fn build(&self, budget: Budget) -> Result<QMatroid> {
        match self.raw(budget)? {
            RawQMatroid::Built(m) => Ok(m),
            RawQMatroid::CyclicFlats(family) => {
                let mut flats = Vec::with_capacity(family.len());
                for (s, r) in family {
                    let r = u32::try_from(r)
                        .map_err(|_| Error::Parse(format!("negative rank at {s}")))?;
                    flats.push((s, r));
                }
                let n = self.require_n()?;
                QMatroid::from_cyclic_flats(self.q, n, flats)
            }
            RawQMatroid::Ranks(lattice, ranks) => {
                crate::qmatroid::check_rank_axioms(&lattice, &ranks)?;
                let ranks = ranks.into_iter().map(|r| r as u32).collect();
                QMatroid::from_rank_table(lattice, ranks)
            }
        }
    }

    /// The cyclic-flat form.
    pub fn of(m: &QMatroid, budget: Budget) -> Result<Self> {
        let z = m.cyclic_flats(budget)?;
        Ok(Self::of_flats(z))
    }

    pub fn of_flats(z: &CyclicFlatLattice) -> Self {
        QMatroidDoc {
            q: z.q(),
            n: Some(z.n()),
            cyclic_flats: Some(
                z.elements()
                    .iter()
                    .map(|(s, r)| FlatDoc {
                        basis: s.basis(),
                        rank: *r as i64,
                    })
                    .collect(),
            ),
            ranks: None,
            uniform: None,
            named: None,
        }
    }

    /// The full-table form.
    pub fn table_of(m: &QMatroid, budget: Budget) -> Result<Self> {
        let (lattice, ranks) = m.rank_table(budget)?;
        Ok(QMatroidDoc {
            q: m.q(),
            n: Some(m.n()),
            cyclic_flats: None,
            ranks: Some(
                lattice
                    .elements()
                    .iter()
                    .zip(ranks)
                    .map(|(s, r)| RankDoc {
                        basis: s.basis(),
                        r: r as i64,
                    })
                    .collect(),
            ),
            uniform: None,
            named: None,
        })
    }
}

/// A matrix entry: integer encoding or `a^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Int(u32),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub field: FieldDoc,
    pub rows: Vec<Vec<ElementDoc>>,
}

impl MatrixDoc {
    pub fn build(&self) -> Result<(ExtField, Matrix)> {
        let f = self.field.build()?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        ElementDoc::Int(x) => f.parse_element(&x.to_string()),
                        ElementDoc::Text(s) => f.parse_element(s),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((f, Matrix::from_rows(rows)?))
    }

    pub fn of(f: &ExtField, g: &Matrix) -> Self {
        MatrixDoc {
            field: FieldDoc::of(f),
            rows: g
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|&x| element_doc(f, x)).collect())
                .collect(),
        }
    }
}

fn element_doc(f: &ExtField, x: u32) -> ElementDoc {
    match f.alpha_log(x) {
        Some(k) if x > 1 => ElementDoc::Text(format!("a^{k}")),
        _ => ElementDoc::Int(x),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub flag: Vec<Vec<Vec<u8>>>,
    pub factors: Vec<QMatroidDoc>,
    pub kinds: Vec<String>,
}

impl FactorizationDoc {
    pub fn of(rep: &FactorizationReport, budget: Budget) -> Result<Self> {
        Ok(FactorizationDoc {
            flag: rep.flag.iter().map(Subspace::basis).collect(),
            factors: rep
                .factors
                .iter()
                .map(|f| QMatroidDoc::of(f, budget))
                .collect::<Result<_>>()?,
            kinds: rep
                .kinds
                .iter()
                .map(|k| match k {
                    FactorKind::Uniform => "uniform".to_string(),
                    FactorKind::Irreducible => "irreducible".to_string(),
                })
                .collect(),
        })
    }
}

/// Text Hasse diagram: one line per node (in dimension, then canonical row
/// order), then one line per covering pair.
pub fn render_hasse(z: &CyclicFlatLattice) -> String {
    let mut out = String::new();
    for (i, (s, r)) in z.elements().iter().enumerate() {
        let _ = writeln!(out, "Z{i} dim={} rank={r} {s}", s.dim());
    }
    for (lo, hi) in z.hasse_edges() {
        let _ = writeln!(out, "Z{lo} < Z{hi}");
    }
    out
}
