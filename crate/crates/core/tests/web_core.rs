//! Atoms, multisets, enumeration and the relation algebra.

use std::collections::BTreeSet;

use cohdiff::text::{parse_atom, parse_rel, print_rel};
use cohdiff::{mset_sum, rel_compose, rel_equal_on, Atom, Budget, Kind, Multiset, Rel, Space};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Atom> {
    let leaf = prop_oneof![Just(Atom::base("a")), Just(Atom::base("b")), Just(Atom::base("c")), Just(Atom::star()),];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (0u8..2, inner.clone()).prop_map(|(i, a)| Atom::tag(i, a)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Atom::pair(a, b)),
            prop::collection::vec(inner, 0..3).prop_map(|xs| Atom::mset(xs.into_iter().collect())),
        ]
    })
}

fn multiset() -> impl Strategy<Value = Multiset> {
    prop::collection::vec(atom(), 0..4).prop_map(|xs| xs.into_iter().collect())
}

/// A relation on the atoms `x0 … x4`.
fn small_rel() -> impl Strategy<Value = Rel> {
    prop::collection::vec((0usize..5, 0usize..5), 0..8).prop_map(|ps| {
        ps.into_iter().map(|(i, j)| (Atom::base(&format!("x{i}")), Atom::base(&format!("x{j}")))).collect()
    })
}

fn ms(xs: &[Atom]) -> Atom {
    Atom::mset(xs.iter().cloned().collect())
}

#[test]
fn multiset_sum_examples() {
    let (a, b) = (Atom::base("a"), Atom::base("b"));
    let m: Multiset = [a.clone()].into_iter().collect();
    let n: Multiset = [a.clone(), b.clone()].into_iter().collect();
    assert_eq!(mset_sum(&m, &n), [a.clone(), a.clone(), b.clone()].into_iter().collect());
    assert_eq!(mset_sum(&Multiset::empty(), &n), n);
    assert_eq!(n.count(&a), 1);
    assert_eq!(n.support().count(), 2);
}

#[test]
fn composition_examples() {
    let at = |s: &str| Atom::base(s);
    let s: Rel = [(at("a"), at("b"))].into_iter().collect();
    let t: Rel = [(at("b"), at("c"))].into_iter().collect();
    assert_eq!(rel_compose(&s, &t), [(at("a"), at("c"))].into_iter().collect());
    assert!(rel_compose(&Rel::empty(), &t).is_empty());
    let s2: Rel = [(at("a"), at("b")), (at("a"), at("b'"))].into_iter().collect();
    let t2: Rel = [(at("b"), at("c")), (at("b'"), at("c"))].into_iter().collect();
    assert_eq!(rel_compose(&s2, &t2).len(), 1);
}

#[test]
fn enumeration_examples() {
    let one = Space::one(Kind::Coh);
    let w = one.bang().enumerate(Budget::degree(2)).unwrap();
    let expect: BTreeSet<Atom> = [ms(&[]), ms(&[Atom::star()]), ms(&[Atom::star(), Atom::star()])].into();
    assert_eq!(w.iter().cloned().collect::<BTreeSet<_>>(), expect);
    assert_eq!(w.len(), 3);

    let i = Space::interval(Kind::Coh);
    for d in 0..4 {
        assert_eq!(i.enumerate(Budget::degree(d)).unwrap(), vec![Atom::point(0), Atom::point(1)]);
    }
    let w = i.bang().enumerate(Budget::degree(1)).unwrap();
    let expect: BTreeSet<Atom> = [ms(&[]), ms(&[Atom::point(0)]), ms(&[Atom::point(1)])].into();
    assert_eq!(w.into_iter().collect::<BTreeSet<_>>(), expect);
}

#[test]
fn enumeration_cap_is_reported() {
    let e = Space::flat("E", Kind::Rel, (0..4).map(|i| Atom::base(&format!("a{i}"))).collect());
    let err = e.bang().bang().enumerate(Budget { max_degree: 6, max_atoms: 50 }).unwrap_err();
    assert!(matches!(err, cohdiff::Error::BudgetExceeded { .. }), "{err}");
}

#[test]
fn equality_on_a_domain() {
    let at = |s: &str| Atom::base(s);
    let f: Rel = [(at("a"), at("b"))].into_iter().collect();
    assert!(rel_equal_on(&f, &f, &[at("a")]).is_ok());
    let cex = rel_equal_on(&f, &Rel::empty(), &[at("a")]).unwrap_err();
    assert_eq!(cex.input, at("a"));
    assert_eq!(cex.left, [at("b")].into());
    assert!(cex.right.is_empty());
    // Differences outside the domain are invisible.
    assert!(rel_equal_on(&f, &Rel::empty(), &[at("z")]).is_ok());
}

#[test]
fn relation_text_round_trip() {
    let src = "# a comment\nsource = !E\n[a, a] ↦ b\n0·a -> (a, [b])\n";
    let rf = parse_rel(src).unwrap();
    assert_eq!(rf.source.as_deref(), Some("!E"));
    assert_eq!(rf.rel.len(), 2);
    assert_eq!(parse_rel(&print_rel(&rf.rel)).unwrap().rel, rf.rel);
}

proptest! {
    #[test]
    fn multiset_sum_is_a_commutative_monoid(m0 in multiset(), m1 in multiset(), m2 in multiset()) {
        prop_assert_eq!(mset_sum(&m0, &m1), mset_sum(&m1, &m0));
        prop_assert_eq!(mset_sum(&mset_sum(&m0, &m1), &m2), mset_sum(&m0, &mset_sum(&m1, &m2)));
        prop_assert_eq!(mset_sum(&m0, &Multiset::empty()), m0.clone());
        prop_assert_eq!(mset_sum(&m0, &m1).len(), m0.len() + m1.len());
        prop_assert_eq!(mset_sum(&m0, &m1).nested_degree(), m0.nested_degree() + m1.nested_degree());
        prop_assert!(m0.entries().iter().all(|(_, c)| *c >= 1));
    }

    #[test]
    fn atoms_print_and_parse_back(a in atom()) {
        prop_assert_eq!(parse_atom(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn composition_is_associative_with_identities(r in small_rel(), s in small_rel(), t in small_rel()) {
        prop_assert_eq!(rel_compose(&rel_compose(&r, &s), &t), rel_compose(&r, &rel_compose(&s, &t)));
        let web: Vec<Atom> = (0..5).map(|i| Atom::base(&format!("x{i}"))).collect();
        let id = Rel::identity(&web);
        prop_assert_eq!(rel_compose(&id, &r), r.clone());
        prop_assert_eq!(rel_compose(&r, &id), r);
    }

    #[test]
    fn enumeration_is_monotone_in_the_degree(n in 1usize..4, d in 0u32..3, kind in prop::sample::select(Kind::ALL.to_vec())) {
        let e = Space::flat("E", kind, (0..n).map(|i| Atom::base(&format!("a{i}"))).collect());
        for space in [e.bang(), e.s().bang(), Space::tensor(&e.bang(), &e)] {
            let small = space.enumerate(Budget::degree(d)).unwrap();
            let big = space.enumerate(Budget::degree(d + 1)).unwrap();
            prop_assert_eq!(&small, &space.enumerate(Budget::degree(d)).unwrap());
            let big_set: BTreeSet<&Atom> = big.iter().collect();
            prop_assert!(small.iter().all(|a| big_set.contains(a)));
            prop_assert!(small.iter().all(|a| a.degree() <= d));
            let restricted: Vec<&Atom> = big.iter().filter(|a| a.degree() <= d).collect();
            prop_assert_eq!(restricted, small.iter().collect::<Vec<_>>());
        }
    }
}
