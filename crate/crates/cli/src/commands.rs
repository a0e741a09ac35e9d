use std::fmt::Write as _;

use serde_json::{json, Value};

use qmat_core::constructions::{
    direct_sum_with_budget, free_product_with_budget, weak_compare_identity,
};
use qmat_core::factorization::is_irreducible;
use qmat_core::io::{render_hasse, FactorizationDoc, MatrixDoc, QMatroidDoc, RawQMatroid};
use qmat_core::qmatroid::{check_cyclic_flat_axioms, check_rank_axioms, enumerate_qmatroids};
use qmat_core::representation::{
    evasion_witness, linear_set_profile, qmatroid_from_matrix, search_x, verify_free_product_rep,
};
use qmat_core::subspace::galois_number;
use qmat_core::{
    primary_factorization, AxiomFailure, Budget, Field, QMatroid, QSystem, Subspace, WeakRelation,
};

use crate::input;
use crate::{Cli, Format, Verb};

/// Exit code and message for a command that could not produce a verdict.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

pub struct Output {
    json: Value,
    text: String,
    /// False makes the process exit with status 1.
    pub verdict: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            verdict: true,
        }
    }

    fn verdict(mut self, v: bool) -> Self {
        self.verdict = v;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{:#}\n", self.json),
            Format::Text => self.text.clone(),
        }
    }
}

fn basis(s: &Subspace) -> Value {
    json!(s.basis())
}

fn to_json<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("documents serialize")
}

fn failure_json(f: &AxiomFailure) -> Value {
    json!({
        "valid": false,
        "axiom": f.axiom.to_string(),
        "witness": f.witness.iter().map(basis).collect::<Vec<_>>(),
        "message": f.to_string(),
    })
}

/// Cyclic flats plus the Hasse diagram as text.
fn qmatroid_output(m: &QMatroid, budget: Budget) -> Result<Output, Failure> {
    announce_scan(m, budget);
    let z = m.cyclic_flats(budget)?;
    Ok(Output::new(
        to_json(&QMatroidDoc::of_flats(z)),
        render_hasse(z),
    ))
}

/// Long exhaustive scans get a note on stderr so the wait is not silent.
fn announce_scan(m: &QMatroid, budget: Budget) {
    if m.certificate().is_some() {
        return;
    }
    let count = galois_number(m.n(), m.q() as u64);
    if count > Budget::CLI.max_subspaces as u128 && count <= budget.max_subspaces as u128 {
        eprintln!(
            "scanning {count} subspaces of F_{}^{} for cyclic flats",
            m.q(),
            m.n()
        );
    }
}

fn matrix_rows(f: &qmat_core::ExtField, g: &qmat_core::Matrix) -> Value {
    to_json(&MatrixDoc::of(f, g).rows)
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = input::parse_budget(&cli.budget)?;
    let modulus = cli.modulus.as_deref();
    match &cli.verb {
        Verb::VerifyAxioms { matroid } => {
            let doc = input::qmatroid_doc(matroid)?;
            let verdict = match doc.raw(budget)? {
                RawQMatroid::CyclicFlats(family) => check_cyclic_flat_axioms(&family),
                RawQMatroid::Ranks(lattice, ranks) => check_rank_axioms(&lattice, &ranks),
                RawQMatroid::Built(_) => Ok(()),
            };
            Ok(match verdict {
                Ok(()) => Output::new(json!({ "valid": true }), "valid\n".into()),
                Err(f) => Output::new(failure_json(&f), format!("{f}\n")).verdict(false),
            })
        }
        Verb::CyclicFlats { matroid } => {
            qmatroid_output(&input::qmatroid(matroid, budget)?, budget)
        }
        Verb::Rank { matroid, subspace } => {
            let m = input::qmatroid(matroid, budget)?;
            let a = input::subspace(subspace, &m)?;
            let r = m.try_rank(&a)?;
            Ok(Output::new(json!({ "rank": r }), format!("{r}\n")))
        }
        Verb::FreeProduct { first, second } => {
            let (m1, m2) = (
                input::qmatroid(first, budget)?,
                input::qmatroid(second, budget)?,
            );
            qmatroid_output(&free_product_with_budget(&m1, &m2, budget)?, budget)
        }
        Verb::DirectSum { first, second } => {
            let (m1, m2) = (
                input::qmatroid(first, budget)?,
                input::qmatroid(second, budget)?,
            );
            qmatroid_output(&direct_sum_with_budget(&m1, &m2, budget)?, budget)
        }
        Verb::Dual { matroid } => {
            qmatroid_output(&input::qmatroid(matroid, budget)?.dual(), budget)
        }
        Verb::Restrict { matroid, subspace } => {
            let m = input::qmatroid(matroid, budget)?;
            let a = input::subspace(subspace, &m)?;
            qmatroid_output(&m.restriction(&a)?, budget)
        }
        Verb::Contract { matroid, subspace } => {
            let m = input::qmatroid(matroid, budget)?;
            let a = input::subspace(subspace, &m)?;
            qmatroid_output(&m.contraction(&a)?, budget)
        }
        Verb::Minor {
            matroid,
            lower,
            upper,
        } => {
            let m = input::qmatroid(matroid, budget)?;
            let (a, b) = (input::subspace(lower, &m)?, input::subspace(upper, &m)?);
            qmatroid_output(&m.minor(&a, &b)?, budget)
        }
        Verb::WeakCompare { first, second } => {
            let (m1, m2) = (
                input::qmatroid(first, budget)?,
                input::qmatroid(second, budget)?,
            );
            let v = weak_compare_identity(&m1, &m2, budget)?;
            let relation = match v.relation {
                WeakRelation::Equal => "equal",
                WeakRelation::SecondBelowFirst => "second-below-first",
                WeakRelation::FirstBelowSecond => "first-below-second",
                WeakRelation::IncomparableViaIdentity => "incomparable-via-identity",
            };
            let mut text = format!("{relation}\n");
            if let Some(w) = v.witness() {
                let _ = writeln!(text, "witness {w}");
            }
            let comparable = v.relation != WeakRelation::IncomparableViaIdentity;
            Ok(Output::new(
                json!({
                    "relation": relation,
                    "first_above": v.first_above.as_ref().map(basis),
                    "second_above": v.second_above.as_ref().map(basis),
                }),
                text,
            )
            .verdict(comparable))
        }
        Verb::Factorize { matroid } => {
            let m = input::qmatroid(matroid, budget)?;
            announce_scan(&m, budget);
            let rep = primary_factorization(&m, budget)?;
            let doc = FactorizationDoc::of(&rep, budget)?;
            let mut text = String::new();
            for t in &rep.flag {
                let _ = writeln!(text, "T dim={} {t}", t.dim());
            }
            for (f, k) in rep.factors.iter().zip(&doc.kinds) {
                let _ = writeln!(text, "factor n={} rank={} {k}", f.n(), f.full_rank());
            }
            Ok(Output::new(to_json(&doc), text))
        }
        Verb::Irreducible { matroid } => {
            let m = input::qmatroid(matroid, budget)?;
            announce_scan(&m, budget);
            let v = is_irreducible(&m, budget)?;
            let text = match &v.witness {
                Some(w) => format!("reducible\nwitness {w}\n"),
                None => "irreducible\n".to_string(),
            };
            Ok(Output::new(
                json!({
                    "irreducible": v.irreducible,
                    "witness": v.witness.as_ref().map(basis),
                }),
                text,
            )
            .verdict(v.irreducible))
        }
        Verb::FromMatrix { matrix } => {
            let (f, g) = input::matrix(matrix, modulus)?;
            qmatroid_output(&qmatroid_from_matrix(&f, &g, budget)?, budget)
        }
        Verb::VerifyFreeProductRep { matrix, n1, k1 } => {
            let (f, g) = input::matrix(matrix, modulus)?;
            let ok = verify_free_product_rep(&f, &g, *n1, *k1, budget)?;
            Ok(Output::new(json!({ "free_product": ok }), format!("{ok}\n")).verdict(ok))
        }
        Verb::ClubCheck { matrix } => {
            let (f, g) = input::matrix(matrix, modulus)?;
            let s = QSystem::new(f, g)?;
            let p = linear_set_profile(&s)?;
            let club = p.club_index();
            let text = match club {
                Some(i) => format!("{i}-club of rank {}\n", p.rank),
                None => format!("not a club (rank {})\n", p.rank),
            };
            let mut weights: Vec<u32> = p.points.iter().map(|x| x.1).collect();
            weights.sort_unstable();
            weights.dedup();
            let histogram: Vec<Value> = weights
                .iter()
                .map(|&w| json!({ "weight": w, "points": p.count_of_weight(w) }))
                .collect();
            Ok(Output::new(
                json!({
                    "rank": p.rank,
                    "club": club,
                    "points_met": p.points.len(),
                    "weights": histogram,
                    "weight_sum": p.weight_sum(s.field().q()),
                }),
                text,
            )
            .verdict(club.is_some()))
        }
        Verb::EvasiveCheck { matrix, k1, h } => {
            let (f, g) = input::matrix(matrix, modulus)?;
            let s = QSystem::new(f, g)?;
            let h = h.unwrap_or(s.k().saturating_sub(1));
            let w = evasion_witness(&s, *k1, h, budget)?;
            let text = match &w {
                Some(a) => format!("not evasive\nnormal {a:?}\n"),
                None => "evasive\n".to_string(),
            };
            Ok(Output::new(
                json!({ "evasive": w.is_none(), "h": h, "witness": w }),
                text,
            )
            .verdict(w.is_none()))
        }
        Verb::SearchX { g1, g2 } => {
            let (f, a) = input::matrix(g1, modulus)?;
            let (f2, b) = input::matrix(g2, modulus)?;
            if f.modulus() != f2.modulus() || f.q() != f2.q() {
                return Err(Failure::input("G1 and G2 are over different fields"));
            }
            let hits = search_x(&f, &a, &b, budget)?;
            // x_11 is pinned to 0 when G1 has a single row
            let free = a.rows() * b.cols() - usize::from(a.rows() == 1);
            let candidates = (f.order() as u128).pow(free as u32);
            let rows: Vec<Value> = hits.iter().map(|x| matrix_rows(&f, x)).collect();
            let mut text = String::new();
            for r in &rows {
                let _ = writeln!(text, "{r}");
            }
            Ok(Output::new(
                json!({ "candidates": candidates as u64, "count": rows.len(), "solutions": rows }),
                text,
            ))
        }
        Verb::Enumerate { n } => {
            let all = enumerate_qmatroids(cli.q, *n, budget)?;
            let mut docs = Vec::with_capacity(all.len());
            let mut text = format!("{} q-matroids\n", all.len());
            for m in &all {
                let z = m.cyclic_flats(budget)?;
                let _ = writeln!(
                    text,
                    "rank {} cyclic flats {:?}",
                    m.full_rank(),
                    z.profile()
                );
                docs.push(to_json(&QMatroidDoc::of_flats(z)));
            }
            Ok(Output::new(
                json!({ "count": all.len(), "qmatroids": docs }),
                text,
            ))
        }
    }
}
