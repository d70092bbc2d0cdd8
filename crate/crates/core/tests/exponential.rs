//! The resource comonad: structural maps, promotion and Kleisli composition.

use std::collections::BTreeSet;

use cohdiff::exponential::{bang_morphism, kleisli_compose, promotion, structural, StructuralMap};
use cohdiff::lawcheck::Gen;
use cohdiff::{rel_compose, Atom, Budget, Kind, Rel, Space};
use proptest::prelude::*;

fn ms(xs: &[Atom]) -> Atom {
    Atom::mset(xs.iter().cloned().collect())
}

fn a() -> Atom {
    Atom::base("a")
}

fn b() -> Atom {
    Atom::base("b")
}

#[test]
fn dereliction_on_bang_one() {
    let one = Space::one(Kind::Coh);
    let der = structural(StructuralMap::Der, &one, None, Budget::degree(2)).unwrap();
    assert_eq!(der, [(ms(&[Atom::star()]), Atom::star())].into_iter().collect());
}

#[test]
fn digging_splits_into_all_decompositions() {
    let one = Space::one(Kind::Rel);
    let star = Atom::star;
    let dig = structural(StructuralMap::Dig, &one, None, Budget::degree(5)).unwrap();
    let outs = dig.image(&ms(&[star(), star()]));
    // Two stars split into non-empty parts, plus any number of empty parts
    // allowed by the degree bound.
    assert!(outs.contains(&ms(&[ms(&[star(), star()])])));
    assert!(outs.contains(&ms(&[ms(&[star()]), ms(&[star()])])));
    assert!(outs.contains(&ms(&[ms(&[star()]), ms(&[star()]), ms(&[])])));
    assert!(outs.iter().all(|o| {
        let parts = o.as_mset().unwrap();
        parts.elements().iter().map(|p| p.as_mset().unwrap().len()).sum::<u32>() == 2
    }));
}

#[test]
fn contraction_at_two_atoms() {
    let e = Space::flat("E", Kind::Rel, vec![a(), b()]);
    let contr = structural(StructuralMap::Contr, &e, None, Budget::degree(3)).unwrap();
    let outs = contr.image(&ms(&[a(), b()]));
    let expect: BTreeSet<Atom> = [
        Atom::pair(ms(&[a()]), ms(&[b()])),
        Atom::pair(ms(&[b()]), ms(&[a()])),
        Atom::pair(ms(&[a(), b()]), ms(&[])),
        Atom::pair(ms(&[]), ms(&[a(), b()])),
    ]
    .into();
    assert_eq!(outs, expect);
}

#[test]
fn functorial_action_examples() {
    let e = Space::flat("E", Kind::Rel, vec![a()]);
    let budget = Budget::degree(2);
    let s: Rel = [(a(), b())].into_iter().collect();
    let bs = bang_morphism(&s, &e, budget).unwrap();
    assert!(bs.contains(&ms(&[a(), a()]), &ms(&[b(), b()])));
    let b0 = bang_morphism(&Rel::empty(), &e, budget).unwrap();
    assert_eq!(b0, [(ms(&[]), ms(&[]))].into_iter().collect());
    assert_eq!(promotion(&Rel::empty(), &e, budget).unwrap(), b0);
}

#[test]
fn kleisli_composition_examples() {
    let e = Space::flat("E", Kind::Rel, vec![a()]);
    let budget = Budget::degree(3);
    // A constant s composes with t at the multisets of its value.
    let s: Rel = [(ms(&[]), b())].into_iter().collect();
    let t: Rel = [(ms(&[b(), b()]), Atom::base("c")), (ms(&[b()]), Atom::base("d"))].into_iter().collect();
    let st = kleisli_compose(&s, &t, &e, budget).unwrap();
    assert_eq!(st, [(ms(&[]), Atom::base("c")), (ms(&[]), Atom::base("d"))].into_iter().collect());
    assert!(kleisli_compose(&s, &Rel::empty(), &e, budget).unwrap().is_empty());
    // Dereliction is the unit.
    let der = structural(StructuralMap::Der, &e, None, budget).unwrap();
    let u: Rel = [(ms(&[a(), a()]), b()), (ms(&[a()]), a())].into_iter().collect();
    assert_eq!(kleisli_compose(&der, &u, &e, budget).unwrap(), u);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn promotion_of_dereliction_is_the_identity(seed in any::<u64>(), kind in prop::sample::select(Kind::ALL.to_vec())) {
        let mut g = Gen::new(seed, kind, 3, Budget::default());
        let e = g.space();
        let budget = Budget::degree(3);
        let der = structural(StructuralMap::Der, &e, None, budget).unwrap();
        let web = e.bang().enumerate(budget).unwrap();
        prop_assert_eq!(promotion(&der, &e, budget).unwrap(), Rel::identity(&web));
    }

    #[test]
    fn structural_maps_are_morphisms(seed in any::<u64>(), kind in prop::sample::select(Kind::ALL.to_vec())) {
        let mut g = Gen::new(seed, kind, 2, Budget::default());
        let (e, f) = (g.space(), g.space());
        for name in StructuralMap::ALL {
            let (src, tgt) = name.signature(&e, Some(&f));
            let r = structural(name, &e, Some(&f), Budget::degree(2)).unwrap();
            prop_assert!(src.is_morphism(&tgt, &r), "{:?} on {}", name, e);
        }
    }

    #[test]
    fn kleisli_composition_is_promotion_then_composition(seed in any::<u64>(), kind in prop::sample::select(Kind::ALL.to_vec())) {
        let mut g = Gen::new(seed, kind, 2, Budget::default());
        let (e, f, h) = (g.space(), g.space(), g.space());
        let s = g.kleisli(&e, &f).unwrap();
        let t = g.kleisli(&f, &h).unwrap();
        let budget = Budget::degree(3);
        let direct = kleisli_compose(&s, &t, &e, budget).unwrap();
        let via = rel_compose(&promotion(&s, &e, budget).unwrap(), &t);
        prop_assert_eq!(direct, via);
    }
}
