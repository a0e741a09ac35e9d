//! Acceptance suite: one PASS/FAIL line per criterion with its wall time and
//! pinned limit. Every check is exact; there are no numeric tolerances.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use qmat_core::constructions::{
    direct_sum, free_product, free_product_by_independents, free_product_by_rank_formula,
    free_product_independents, weak_compare_identity, WeakRelation,
};
use qmat_core::factorization::{dm_lattice, is_irreducible, vamos, VAMOS_CIRCUITS};
use qmat_core::qmatroid::{
    check_cyclic_flat_axioms, check_independence_axioms, check_rank_axioms, enumerate_qmatroids,
};
use qmat_core::{primary_factorization, Budget, QMatroid, Subspace, SubspaceLattice};

const B: Budget = Budget::DEFAULT;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<(), String>,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

/// Runs the binary and returns (exit code, parsed stdout).
fn qmat(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qmat"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "qmat {args:?} exited {code}: {e}: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((code, v))
}

fn u(k: usize, n: usize) -> QMatroid {
    QMatroid::uniform(2, k, n).unwrap()
}

/// Binary span of 1-based sums of unit vectors.
fn sp(n: usize, vectors: &[&[usize]]) -> Subspace {
    let rows: Vec<Vec<u8>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0u8; n];
            for &i in v.iter() {
                row[i - 1] ^= 1;
            }
            row
        })
        .collect();
    Subspace::span(2, n, &rows).unwrap()
}

fn pool() -> Vec<QMatroid> {
    vec![u(0, 1), u(1, 1), u(1, 2), u(2, 3)]
}

fn ranks(m: &QMatroid) -> Vec<u32> {
    m.rank_table(B).unwrap().1
}

fn matrix_free_product() -> Result<(), String> {
    let (code, v) = qmat(&["from-matrix", &data("f16_free_product.json")])?;
    ensure(code == 0, format!("from-matrix exited {code}"))?;
    let expected = json!([
        { "basis": [], "rank": 0 },
        { "basis": [[1, 0, 0, 0], [0, 1, 0, 0]], "rank": 1 },
        { "basis": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], "rank": 2 },
    ]);
    ensure(
        v["cyclic_flats"] == expected,
        format!("cyclic flats {}", v["cyclic_flats"]),
    )?;
    let (code, v) = qmat(&[
        "verify-free-product-rep",
        "--n1",
        "2",
        "--k1",
        "1",
        &data("f16_free_product.json"),
    ])?;
    ensure(
        code == 0 && v["free_product"] == json!(true),
        "verify-free-product-rep is false",
    )
}

fn search_negative() -> Result<(), String> {
    let (code, v) = qmat(&[
        "search-x",
        &data("f16_g1.json"),
        &data("f16_g2_negative.json"),
    ])?;
    ensure(code == 0, format!("search-x exited {code}"))?;
    ensure(
        v["candidates"] == json!(16),
        format!("scanned {}", v["candidates"]),
    )?;
    ensure(
        v["solutions"] == json!([]),
        format!("solutions {}", v["solutions"]),
    )
}

fn club_rank_five() -> Result<(), String> {
    let (code, v) = qmat(&["club-check", &data("f128_club.json")])?;
    ensure(code == 0, format!("club-check exited {code}"))?;
    ensure(
        v["club"] == json!(2) && v["rank"] == json!(5),
        format!("{v}"),
    )?;
    let weights = json!([{ "weight": 1, "points": 28 }, { "weight": 2, "points": 1 }]);
    ensure(v["weights"] == weights, format!("weights {}", v["weights"]))?;
    // (2^2 - 1) + 28 (2^1 - 1) = 2^5 - 1
    ensure(
        v["weight_sum"] == json!(31),
        format!("weight sum {}", v["weight_sum"]),
    )
}

fn triple_agreement() -> Result<(), String> {
    for m1 in &pool() {
        for m2 in &pool() {
            let a = ranks(&free_product(m1, m2).unwrap());
            let b = ranks(&free_product_by_rank_formula(m1, m2).unwrap());
            let c = ranks(&free_product_by_independents(m1, m2, B).unwrap());
            ensure(a == b && a == c, format!("{m1:?} and {m2:?} disagree"))?;
        }
    }
    Ok(())
}

fn axiom_suites() -> Result<(), String> {
    for m1 in &pool() {
        for m2 in &pool() {
            let (lattice, member) = free_product_independents(m1, m2, B).unwrap();
            check_independence_axioms(&lattice, &member).map_err(|e| e.to_string())?;
            let p = free_product(m1, m2).unwrap();
            let signed: Vec<i64> = ranks(&p).into_iter().map(i64::from).collect();
            check_rank_axioms(&lattice, &signed).map_err(|e| e.to_string())?;
            let z: Vec<(Subspace, i64)> = p
                .cyclic_flats(B)
                .unwrap()
                .elements()
                .iter()
                .map(|(s, r)| (s.clone(), i64::from(*r)))
                .collect();
            check_cyclic_flat_axioms(&z).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn l4_flats() -> Vec<(Subspace, u32)> {
    vec![
        (Subspace::zero(2, 4), 0),
        (sp(4, &[&[1], &[2]]), 1),
        (sp(4, &[&[3], &[4]]), 1),
        (sp(4, &[&[1, 3], &[2, 4]]), 1),
        (Subspace::full(2, 4), 2),
    ]
}

fn l4() -> QMatroid {
    QMatroid::from_cyclic_flats(2, 4, l4_flats()).unwrap()
}

fn direct_sum_not_minimal() -> Result<(), String> {
    let signed: Vec<(Subspace, i64)> = l4_flats()
        .into_iter()
        .map(|(s, r)| (s, i64::from(r)))
        .collect();
    check_cyclic_flat_axioms(&signed).map_err(|e| e.to_string())?;
    let (d, l) = (direct_sum(&u(1, 2), &u(1, 2)).unwrap(), l4());
    let v = weak_compare_identity(&d, &l, B).unwrap();
    ensure(
        v.relation == WeakRelation::SecondBelowFirst,
        format!("{:?}", v.relation),
    )?;
    let w = sp(4, &[&[1, 3], &[2, 4]]);
    ensure((d.rank(&w), l.rank(&w)) == (2, 1), "ranks at the witness")
}

fn maximality() -> Result<(), String> {
    let p = free_product(&u(1, 2), &u(1, 2)).unwrap();
    let lattice = SubspaceLattice::get(2, 4, B).unwrap();
    ensure(lattice.len() == 67, "lattice size")?;
    for other in [direct_sum(&u(1, 2), &u(1, 2)).unwrap(), l4()] {
        let above = lattice
            .elements()
            .iter()
            .all(|x| p.rank(x) >= other.rank(x));
        let strict = lattice.elements().iter().any(|x| p.rank(x) > other.rank(x));
        ensure(above && strict, format!("against {other:?}"))?;
    }
    Ok(())
}

fn duality_and_associativity() -> Result<(), String> {
    let reps = enumerate_qmatroids(2, 2, B).unwrap();
    for m1 in &reps {
        for m2 in &reps {
            let lhs = free_product(m1, m2).unwrap().dual_phi();
            let rhs = free_product(&m2.dual_phi(), &m1.dual_phi()).unwrap();
            ensure(lhs.same_ranks(&rhs, B).unwrap(), "duality")?;
        }
    }
    let (a, b, c) = (u(1, 1), u(1, 2), u(0, 1));
    let left = free_product(&free_product(&a, &b).unwrap(), &c).unwrap();
    let right = free_product(&a, &free_product(&b, &c).unwrap()).unwrap();
    ensure(left.same_ranks(&right, B).unwrap(), "associativity")
}

fn factorization_round_trip() -> Result<(), String> {
    let p = free_product(&u(1, 2), &u(1, 2)).unwrap();
    let rep = primary_factorization(&p, B).unwrap();
    let flag = vec![
        Subspace::zero(2, 4),
        sp(4, &[&[1], &[2]]),
        Subspace::full(2, 4),
    ];
    ensure(rep.flag == flag, format!("flag {:?}", rep.flag))?;
    ensure(rep.factors.len() == 2, "two factors")?;
    for f in &rep.factors {
        ensure(f.same_ranks(&u(1, 2), B).unwrap(), "factor is U_{1,2}")?;
    }
    let rebuilt = rep.reconstruct(B).unwrap();
    ensure(ranks(&rebuilt) == ranks(&p), "rank tables differ")
}

fn vamos_irreducible() -> Result<(), String> {
    let m = vamos(2).unwrap();
    let z = m.cyclic_flats(Budget::VAMOS).map_err(|e| e.to_string())?;
    for idx in VAMOS_CIRCUITS {
        let c = Subspace::unit(2, 8, idx);
        ensure(
            z.rank_of(&c) == Some(3),
            format!("{c} is not a cyclic flat of rank 3"),
        )?;
    }
    let d = dm_lattice(&m, Budget::VAMOS).unwrap();
    let trivial = vec![Subspace::zero(2, 8), Subspace::full(2, 8)];
    ensure(d.pinchpoints() == trivial, "non-trivial pinchpoint")?;
    ensure(
        is_irreducible(&m, Budget::VAMOS).unwrap().irreducible,
        "reducible",
    )
}

fn stacked_golden() -> Result<(), String> {
    let m = QMatroid::from_cyclic_flats(
        2,
        5,
        vec![
            (sp(5, &[&[1, 3, 5]]), 0),
            (sp(5, &[&[1, 5], &[2, 4, 5], &[3]]), 1),
            (sp(5, &[&[1, 4], &[2, 4], &[3, 4, 5]]), 1),
            (sp(5, &[&[1, 3], &[2], &[5]]), 1),
            (Subspace::full(2, 5), 2),
        ],
    )
    .map_err(|e| e.to_string())?;
    let n = QMatroid::from_cyclic_flats(
        2,
        8,
        vec![
            (Subspace::zero(2, 8), 0),
            (sp(8, &[&[1], &[2]]), 1),
            (sp(8, &[&[1], &[2], &[3], &[4]]), 2),
            (sp(8, &[&[5], &[6], &[7], &[8]]), 3),
            (Subspace::full(2, 8), 4),
        ],
    )
    .map_err(|e| e.to_string())?;
    let p = free_product(&m, &n).unwrap();
    // the certificate is stacked directly; F_2^13 is never enumerated
    let z = p.certificate().ok_or("product has no certificate")?;
    ensure(z.len() == 9, format!("{} nodes", z.len()))?;

    // expected nodes in order: F_i + 0 with rank f_i, then F^5 + G_j with
    // rank 2 + g_j for the non-zero G_j
    let lift = |s: &Subspace, shift: usize| {
        let rows: Vec<Vec<u8>> = s
            .basis()
            .into_iter()
            .map(|r| {
                let mut row = vec![0u8; 13];
                row[shift..shift + r.len()].copy_from_slice(&r);
                row
            })
            .collect();
        Subspace::span(2, 13, &rows).unwrap()
    };
    let seam = Subspace::unit(2, 13, 0..5);
    let mut expected: Vec<(Subspace, u32)> = m
        .cyclic_flats(B)
        .unwrap()
        .elements()
        .iter()
        .map(|(s, r)| (lift(s, 0), *r))
        .collect();
    for (s, r) in &n.cyclic_flats(B).unwrap().elements()[1..] {
        expected.push((seam.sum(&lift(s, 5)), 2 + r));
    }
    for (s, r) in &expected {
        ensure(
            z.rank_of(s) == Some(*r),
            format!("{s} missing or with the wrong rank"),
        )?;
    }

    // lower diamond into the seam (4), which branches into the chain
    // G1 (5) < G2 (6) and into G3 (7), both below the top (8)
    let name = |i: usize| {
        expected
            .iter()
            .position(|(t, _)| *t == z.elements()[i].0)
            .unwrap()
    };
    let mut edges: Vec<(usize, usize)> = z
        .hasse_edges()
        .into_iter()
        .map(|(a, b)| (name(a), name(b)))
        .collect();
    edges.sort();
    let golden = vec![
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 4),
        (2, 4),
        (3, 4),
        (4, 5),
        (4, 7),
        (5, 6),
        (6, 8),
        (7, 8),
    ];
    ensure(edges == golden, format!("edges {edges:?}"))
}

fn counting() -> Result<(), String> {
    let one = enumerate_qmatroids(2, 1, B).unwrap().len();
    let two = enumerate_qmatroids(2, 2, B).unwrap().len();
    ensure(one == 2 && two == 4, format!("counts {one}, {two}"))?;
    ensure(two >= one * one, "count(2, 2) < count(2, 1)^2")
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "matrix over GF(16) represents U_{1,2} free U_{1,2}",
            limit: secs(5),
            run: matrix_free_product,
        },
        Criterion {
            id: 2,
            name: "search over 16 candidates finds nothing",
            limit: secs(10),
            run: search_negative,
        },
        Criterion {
            id: 3,
            name: "2-club of rank 5 over GF(128)",
            limit: secs(30),
            run: club_rank_five,
        },
        Criterion {
            id: 4,
            name: "three free product constructions agree",
            limit: secs(60),
            run: triple_agreement,
        },
        Criterion {
            id: 5,
            name: "independence, rank and cyclic-flat axioms",
            limit: secs(60),
            run: axiom_suites,
        },
        Criterion {
            id: 6,
            name: "direct sum is not weakly minimal",
            limit: secs(5),
            run: direct_sum_not_minimal,
        },
        Criterion {
            id: 7,
            name: "free product is weakly maximal",
            limit: secs(5),
            run: maximality,
        },
        Criterion {
            id: 8,
            name: "duality and associativity",
            limit: secs(30),
            run: duality_and_associativity,
        },
        Criterion {
            id: 9,
            name: "primary factorization round trip",
            limit: secs(10),
            run: factorization_round_trip,
        },
        Criterion {
            id: 10,
            name: "Vamos q-matroid is irreducible",
            limit: secs(1800),
            run: vamos_irreducible,
        },
        Criterion {
            id: 11,
            name: "stacked cyclic-flat lattice, certificate level",
            limit: None,
            run: stacked_golden,
        },
        Criterion {
            id: 12,
            name: "q-matroid counts on F_2 and F_2^2",
            limit: secs(60),
            run: counting,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if took > limit => {
                Err(format!("over the {} s limit", limit.as_secs()))
            }
            (o, _) => o,
        };
        let limit = c
            .limit
            .map_or("none".to_string(), |l| format!("{} s", l.as_secs()));
        match outcome {
            Ok(()) => println!(
                "PASS {:>2} {} ({:.2} s, limit {limit})",
                c.id,
                c.name,
                took.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {} ({:.2} s, limit {limit}): {why}",
                    c.id,
                    c.name,
                    took.as_secs_f64()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
