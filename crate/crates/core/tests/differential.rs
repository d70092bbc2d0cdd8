//! `∂`, `∂̄`, `D̂`, partial derivatives and local derivatives.

use std::collections::BTreeSet;

use cohdiff::differential::{
    check_clique_derivative, dbar, dhat, dpartial, dpartial_via_dbar, dtilde, local_derivative, partial_derivative,
};
use cohdiff::exponential::kleisli_compose;
use cohdiff::lawcheck::Gen;
use cohdiff::text::parse_atom;
use cohdiff::{Atom, Budget, Kind, Rel, Space};
use proptest::prelude::*;

fn at(s: &str) -> Atom {
    parse_atom(s).unwrap()
}

fn rel(pairs: &[(&str, &str)]) -> Rel {
    pairs.iter().map(|(a, b)| (at(a), at(b))).collect()
}

fn single_a(kind: Kind) -> Space {
    Space::flat("E", kind, vec![at("a")])
}

#[test]
fn dbar_membership() {
    let d = dbar(Kind::Coh, Budget::degree(3)).unwrap();
    assert!(d.contains(&Atom::point(0), &at("[]")));
    assert!(d.contains(&Atom::point(1), &Atom::mset([Atom::point(1)].into_iter().collect())));
    assert!(!d.contains(&Atom::point(1), &Atom::mset([Atom::point(1), Atom::point(1)].into_iter().collect())));
}

#[test]
fn partial_on_a_single_atom() {
    let d = dpartial(&single_a(Kind::Coh), Budget::degree(2)).unwrap();
    assert_eq!(d, rel(&[("[]", "0·[]"), ("[0·a]", "0·[a]"), ("[0·a,0·a]", "0·[a,a]"), ("[1·a]", "1·[a]")]));
    // The uniformity proviso: a ∉ Supp m0.
    let excluded = (at("[0·a,1·a]"), at("1·[a,a]"));
    assert!(!d.contains(&excluded.0, &excluded.1));
    for kind in [Kind::Nucs, Kind::Rel] {
        let d = dpartial(&single_a(kind), Budget::degree(2)).unwrap();
        assert!(d.contains(&excluded.0, &excluded.1), "{kind}");
    }
}

#[test]
fn the_three_presentations_of_partial_agree() {
    for kind in Kind::ALL {
        let e = Space::base("E", kind, vec![at("a"), at("b")], &[(at("a"), at("b"))], &[]).unwrap();
        let budget = Budget::degree(3);
        let closed = dpartial(&e, budget).unwrap();
        assert_eq!(closed, dpartial_via_dbar(&e, budget).unwrap(), "{kind}");
        // ∂̃ relates !X ⊗ I to !(X ⊗ I) and is non-empty on every point.
        let dt = dtilde(&e, budget).unwrap();
        assert!(dt.domain().iter().any(|x| x.as_pair().is_some_and(|(_, i)| *i == Atom::point(1))));
    }
}

#[test]
fn derivative_of_the_taylor_examples() {
    let s = rel(&[("[a]", "b")]);
    let s2 = rel(&[("[a,a]", "b")]);
    assert_eq!(dhat(&s, &single_a(Kind::Coh)), rel(&[("[0·a]", "0·b"), ("[1·a]", "1·b")]));
    assert_eq!(dhat(&s2, &single_a(Kind::Coh)), rel(&[("[0·a,0·a]", "0·b")]));
    assert_eq!(dhat(&s2, &single_a(Kind::Nucs)), rel(&[("[0·a,0·a]", "0·b"), ("[0·a,1·a]", "1·b")]));
}

#[test]
fn local_derivative_examples() {
    let e = single_a(Kind::Coh);
    let web = [at("a")];
    let s = rel(&[("[a]", "b")]);
    assert_eq!(local_derivative(&s, &e, &web, &BTreeSet::new()), rel(&[("a", "b")]));
    // At x = {a} the a itself is not in the local web E_x.
    let s2 = rel(&[("[a,a]", "b")]);
    let x: BTreeSet<Atom> = [at("a")].into();
    assert!(local_derivative(&s2, &e, &web, &x).is_empty());
    // With a second atom coherent to a, the derivative at {a} is non-zero.
    let e2 = Space::base("E", Kind::Coh, vec![at("a"), at("c")], &[(at("a"), at("c"))], &[]).unwrap();
    let s3 = rel(&[("[a,c]", "b")]);
    assert_eq!(local_derivative(&s3, &e2, &[at("a"), at("c")], &x), rel(&[("c", "b")]));
}

#[test]
fn partial_derivatives_of_a_projection() {
    let e = single_a(Kind::Rel);
    let budget = Budget::degree(2);
    // f = first projection on E & E, as a Kleisli map.
    let f = rel(&[("[0·a]", "a")]);
    let d0 = partial_derivative(&f, 0, &e, &e, budget).unwrap();
    let d1 = partial_derivative(&f, 1, &e, &e, budget).unwrap();
    let linear = |r: &Rel| r.pairs().iter().filter(|(_, b)| b.as_tag().is_some_and(|(i, _)| i == 1)).count();
    assert!(linear(&d0) > 0);
    assert_eq!(linear(&d1), 0, "unused argument:\n{d1}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn clique_derivative_theorem(seed in any::<u64>()) {
        let mut g = Gen::new(seed, Kind::Coh, 3, Budget::default());
        let (e, f) = (g.space_upto(3), g.space_upto(3));
        let s = g.morphism_deg(&e.bang(), &f, 3, 0).unwrap();
        let web = e.enumerate(Budget::degree(0)).unwrap();
        prop_assert_eq!(check_clique_derivative(&s, &e, &web, 3), None);
    }

    #[test]
    fn dhat_is_functorial(seed in any::<u64>(), kind in prop::sample::select(Kind::ALL.to_vec())) {
        let mut g = Gen::new(seed, kind, 2, Budget::default());
        let (e, f, h) = (g.space(), g.space(), g.space());
        let s = g.kleisli(&e, &f).unwrap();
        let t = g.kleisli(&f, &h).unwrap();
        let budget = Budget::degree(2);
        let left = dhat(&kleisli_compose(&s, &t, &e, budget).unwrap(), &e);
        let right = kleisli_compose(&dhat(&s, &e), &dhat(&t, &f), &e.s(), budget).unwrap();
        // Compare on inputs where neither side was truncated.
        let keep = |r: &Rel| r.filter(|a, _| a.degree() <= budget.max_degree);
        prop_assert_eq!(keep(&left), keep(&right));
    }

    #[test]
    fn dhat_is_a_morphism(seed in any::<u64>(), kind in prop::sample::select(Kind::ALL.to_vec())) {
        let mut g = Gen::new(seed, kind, 3, Budget::default());
        let (e, f) = (g.space(), g.space());
        let s = g.kleisli(&e, &f).unwrap();
        prop_assert!(e.s().bang().is_morphism(&f.s(), &dhat(&s, &e)));
    }
}
