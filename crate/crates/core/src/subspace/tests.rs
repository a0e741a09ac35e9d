use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn e(_n: usize, idx: &[usize]) -> u64 {
    idx.iter().fold(0, |acc, &i| acc | 1 << i)
}

fn sp(n: usize, vs: &[&[usize]]) -> Subspace {
    Subspace::span_packed(2, n, vs.iter().map(|v| e(n, v)))
}

/// Element set of a binary subspace, computed without row reduction.
fn elements(s: &Subspace) -> BTreeSet<u64> {
    let mut out = BTreeSet::from([0u64]);
    for &r in s.rows() {
        let more: Vec<u64> = out.iter().map(|&x| x ^ r).collect();
        out.extend(more);
    }
    out
}

#[test]
fn lines_of_the_plane() {
    let a = sp(2, &[&[0]]);
    let b = sp(2, &[&[1]]);
    assert_eq!(a.sum(&b), Subspace::full(2, 2));
    assert_eq!(a.intersect(&b), Subspace::zero(2, 2));
    let big = Subspace::full(2, 2);
    assert_eq!(a.sum(&big), big);
    assert_eq!(a.intersect(&big), a);
}

#[test]
fn skew_planes_in_four_space() {
    let a = sp(4, &[&[0], &[1]]);
    let b = sp(4, &[&[0, 2], &[1, 3]]);
    let (ea, eb) = (elements(&a), elements(&b));
    assert_eq!(ea.intersection(&eb).count(), 1);
    assert_eq!(a.intersect(&b), Subspace::zero(2, 4));
    assert_eq!(a.sum(&b), Subspace::full(2, 4));
}

#[test]
fn orthogonal_complement_examples() {
    assert_eq!(sp(2, &[&[0]]).orthogonal_complement(), sp(2, &[&[1]]));
    let diag = sp(2, &[&[0, 1]]);
    assert_eq!(diag.orthogonal_complement(), diag);
    let ctx = DirectSumContext::new(2, 2, 3).unwrap();
    assert_eq!(
        ctx.block(Side::First).orthogonal_complement(),
        ctx.block(Side::Second)
    );
}

#[test]
fn complement_over_odd_field() {
    // <(1,2,0)> over GF(3): complement has dot product zero with it
    let a = Subspace::span(3, 3, &[vec![1, 2, 0]]).unwrap();
    let perp = a.orthogonal_complement();
    assert_eq!(perp.dim(), 2);
    for v in perp.basis() {
        assert_eq!((v[0] as u32 + 2 * v[1] as u32) % 3, 0);
    }
    assert_eq!(perp.orthogonal_complement(), a);
}

#[test]
fn rev_and_phi() {
    assert_eq!(sp(3, &[&[0]]).rev(), sp(3, &[&[2]]));
    let ctx = DirectSumContext::new(2, 2, 2).unwrap();
    let e1 = ctx.block(Side::First);
    // φ(E₁⊕0) = (0⊕E₂) reversed = E₁⊕0, read as the E₂-shaped block
    assert_eq!(e1.phi(), sp(4, &[&[0], &[1]]));
    assert_eq!(e1.phi().dim(), ctx.n2);
}

#[test]
fn slice_examples() {
    let ctx = DirectSumContext::new(2, 2, 2).unwrap();
    let (lo, hi) = ctx.slice(&sp(4, &[&[0], &[2]])).unwrap();
    assert_eq!((lo, hi), (sp(2, &[&[0]]), sp(2, &[&[0]])));
    let (lo, hi) = ctx.slice(&sp(4, &[&[0, 2], &[1, 3]])).unwrap();
    assert_eq!((lo, hi), (Subspace::zero(2, 2), Subspace::full(2, 2)));
    let (lo, hi) = ctx.slice(&ctx.block(Side::First)).unwrap();
    assert_eq!((lo, hi), (Subspace::full(2, 2), Subspace::zero(2, 2)));
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_subspaces(2, 2).count(), 5);
    let all4: Vec<_> = enumerate_subspaces(2, 4).collect();
    assert_eq!(all4.len(), 67);
    assert_eq!(all4.iter().filter(|s| s.dim() == 2).count(), 35);
    assert_eq!((15 * 14) / (3 * 2), 35);
    assert_eq!(enumerate_subspaces(2, 5).count(), 374);
    assert_eq!(
        [1, 31, 155, 155, 31, 1].iter().sum::<u128>(),
        galois_number(5, 2)
    );
    let dims: Vec<usize> = all4.iter().map(Subspace::dim).collect();
    assert!(
        dims.windows(2).all(|w| w[0] <= w[1]),
        "grouped by dimension"
    );
    let distinct: BTreeSet<_> = all4.iter().collect();
    assert_eq!(distinct.len(), 67);
    for q in [3u8, 5] {
        for n in 0..=3 {
            assert_eq!(
                enumerate_subspaces(q, n).count() as u128,
                galois_number(n, q as u64)
            );
        }
    }
}

#[test]
fn galois_numbers_binary() {
    let expected = [1u128, 2, 5, 16, 67, 374, 2825, 29212, 417199];
    for (n, &g) in expected.iter().enumerate() {
        assert_eq!(galois_number(n, 2), g);
    }
}

#[test]
fn covers_hyperplanes_atoms() {
    assert_eq!(Subspace::zero(2, 2).covers().len(), 3);
    let planes = Subspace::full(2, 3).hyperplanes();
    assert_eq!(planes.len() as u128, gaussian_binomial(3, 2, 2));
    assert!(planes.iter().all(|p| p.dim() == 2));
    assert_eq!(planes.iter().collect::<BTreeSet<_>>().len(), 7);
    assert_eq!(Subspace::full(3, 2).atoms().len(), 4);
    let a = sp(4, &[&[0]]);
    let covers = a.covers();
    assert_eq!(covers.len(), 7);
    assert!(covers.iter().all(|c| c.dim() == 2 && c.contains(&a)));
}

#[test]
fn quotient_of_plane_by_line() {
    let a = sp(3, &[&[0]]);
    let b = sp(3, &[&[0], &[1]]);
    let qm = QuotientMap::new(&a, &b).unwrap();
    assert_eq!(qm.quotient_dim(), 1);
    assert_eq!(qm.complement(), &[e(3, &[1])]);
    assert_eq!(qm.project_vector(e(3, &[1])), vec![1]);
    assert_eq!(qm.project_vector(e(3, &[0, 1])), vec![1]);
    assert_eq!(qm.project_vector(e(3, &[0])), vec![0]);
    assert!(QuotientMap::new(&b, &a).is_err());
}

#[test]
fn quotient_lift_project_roundtrip() {
    let a = sp(4, &[&[0, 1]]);
    let b = sp(4, &[&[0], &[1], &[2, 3]]);
    let qm = QuotientMap::new(&a, &b).unwrap();
    for y in enumerate_subspaces(2, 2) {
        let x = qm.lift(&y);
        assert!(b.contains(&x) && x.contains(&a));
        assert_eq!(qm.project(&x), y);
    }
}

#[test]
fn from_rref_rejects_non_canonical() {
    let err = Subspace::from_rref(2, 3, &[vec![1, 1, 0], vec![0, 1, 0]]).unwrap_err();
    match err {
        crate::Error::NotCanonical { suggestion } => {
            assert_eq!(suggestion, vec![vec![1, 0, 0], vec![0, 1, 0]])
        }
        other => panic!("{other}"),
    }
    assert!(Subspace::from_rref(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).is_ok());
}

#[test]
fn display_form() {
    assert_eq!(Subspace::zero(2, 3).to_string(), "0");
    assert_eq!(sp(4, &[&[0, 2], &[1, 3]]).to_string(), "<1010,0101>");
}

#[test]
fn modularity_exhaustive_f2_4() {
    let all: Vec<_> = enumerate_subspaces(2, 4).collect();
    for a in &all {
        for b in &all {
            assert_eq!(a.dim() + b.dim(), a.sum(b).dim() + a.intersect(b).dim());
        }
    }
}

#[test]
fn slice_identity_and_monotonicity_exhaustive() {
    let ctx = DirectSumContext::new(2, 2, 2).unwrap();
    let all: Vec<_> = enumerate_subspaces(2, 4).collect();
    let slices: Vec<_> = all.iter().map(|a| ctx.slice(a).unwrap()).collect();
    for (a, (lo, hi)) in all.iter().zip(&slices) {
        assert_eq!(a.dim(), lo.dim() + hi.dim());
    }
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if b.le(a) {
                assert!(slices[j].0.le(&slices[i].0));
                assert!(slices[j].1.le(&slices[i].1));
            }
        }
    }
}

#[test]
fn intersection_matches_elementwise_oracle() {
    let all: Vec<_> = enumerate_subspaces(2, 4).collect();
    for a in &all {
        for b in all.iter().step_by(3) {
            let expect: BTreeSet<u64> = elements(a).intersection(&elements(b)).copied().collect();
            assert_eq!(elements(&a.intersect(b)), expect);
        }
    }
}

#[test]
fn lattice_cache_and_covers() {
    let l = SubspaceLattice::get(2, 4, crate::Budget::DEFAULT).unwrap();
    assert_eq!(l.len(), 67);
    assert_eq!(l.ids_of_dim(2).len(), 35);
    assert_eq!(l.up()[l.bottom()].len(), 15);
    assert_eq!(l.down()[l.top()].len(), 15);
    let again = SubspaceLattice::get(2, 4, crate::Budget::DEFAULT).unwrap();
    assert!(std::sync::Arc::ptr_eq(&l, &again));
    assert!(SubspaceLattice::get(2, 4, crate::Budget::new(10)).is_err());
}

fn arb_subspace(q: u8, n: usize) -> impl Strategy<Value = (Subspace, Vec<Vec<u8>>)> {
    prop::collection::vec(prop::collection::vec(0..q, n), 0..=n + 1)
        .prop_map(move |vs| (Subspace::span(q, n, &vs).unwrap(), vs))
}

proptest! {
    #[test]
    fn canonical_under_scrambles((a, vs) in arb_subspace(3, 4), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let shuffled: Vec<Vec<u8>> = perm.iter().filter(|&&i| i < vs.len()).map(|&i| vs[i].clone()).collect();
        let mut doubled = shuffled.clone();
        // add the sum of the first two generators as an extra redundant row
        if shuffled.len() >= 2 {
            doubled.push(shuffled[0].iter().zip(&shuffled[1]).map(|(x, y)| (x + y) % 3).collect());
        }
        prop_assert_eq!(Subspace::span(3, 4, &doubled).unwrap(), a);
    }

    #[test]
    fn phi_is_invertible_and_reverses_order((a, _) in arb_subspace(2, 4), (b, _) in arb_subspace(2, 4)) {
        prop_assert_eq!(a.phi().phi_inverse(), a.clone());
        prop_assert_eq!(a.phi_inverse().phi(), a.clone());
        prop_assert_eq!(a.rev().rev(), a.clone());
        prop_assert_eq!(a.phi().dim(), 4 - a.dim());
        if a.le(&b) {
            prop_assert!(b.phi().le(&a.phi()));
        }
        prop_assert_eq!(a.sum(&b).phi(), a.phi().intersect(&b.phi()));
    }

    #[test]
    fn complement_is_involutive_odd((a, _) in arb_subspace(5, 4)) {
        prop_assert_eq!(a.orthogonal_complement().dim() + a.dim(), 4);
        prop_assert_eq!(a.orthogonal_complement().orthogonal_complement(), a);
    }

    #[test]
    fn odd_modularity((a, _) in arb_subspace(3, 4), (b, _) in arb_subspace(3, 4)) {
        let s = a.sum(&b);
        let i = a.intersect(&b);
        prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        prop_assert!(i.le(&a) && i.le(&b) && a.le(&s) && b.le(&s));
    }

    #[test]
    fn embed_project_roundtrip((a, _) in arb_subspace(2, 3), (b, _) in arb_subspace(2, 2)) {
        let ctx = DirectSumContext::new(2, 3, 2).unwrap();
        let ea = ctx.embed(Side::First, &a).unwrap();
        let eb = ctx.embed(Side::Second, &b).unwrap();
        prop_assert_eq!(ctx.project(Side::First, &ea).unwrap(), a.clone());
        prop_assert_eq!(ctx.project(Side::Second, &eb).unwrap(), b.clone());
        prop_assert!(ctx.project(Side::First, &eb).unwrap().is_zero());
        prop_assert!(ctx.project(Side::Second, &ea).unwrap().is_zero());
        prop_assert_eq!(ctx.slice(&ctx.direct_sum(&a, &b).unwrap()).unwrap(), (a, b));
    }
}
