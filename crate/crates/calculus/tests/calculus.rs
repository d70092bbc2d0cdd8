//! Properties of typing and reduction on generated corpora.

use cohdiff_calculus::corpus::{corpus, TermGen};
use cohdiff_calculus::reduce::{dlet, trace, Reducer, Rule};
use cohdiff_calculus::syntax::{Term, Ty};
use cohdiff_calculus::{check, parse, parse_judgment, typecheck, CalcError};
use proptest::prelude::*;

const FUEL: usize = 300;

#[test]
fn subject_reduction_on_a_generated_corpus() {
    let reducer = Reducer::default();
    for (k, j) in corpus(1, 200, 10).into_iter().enumerate() {
        check(&j.ctx, &j.term, &j.ty).unwrap();
        let (steps, _) = trace(&reducer, &j.term, FUEL);
        for (i, (rule, t)) in steps.iter().enumerate() {
            if let Err(e) = check(&j.ctx, t, &j.ty) {
                panic!("term {k}, step {i} ({rule}): `{t}` lost type {}: {e}", j.ty);
            }
        }
    }
}

#[test]
fn the_general_sum_rule_is_absent() {
    let (ctx, m) = parse_judgment("x : i, y : i |- x + y").unwrap();
    assert!(matches!(typecheck(&ctx, &m), Err(CalcError::Type { rule: "sum", .. })));
    let (ctx, m) = parse_judgment("f : i -> i, g : i -> i |- f + g").unwrap();
    assert!(typecheck(&ctx, &m).is_err());
}

#[test]
fn derivative_of_the_identity_is_the_identity() {
    let m = parse("D (\\x:i -> i1. x)").unwrap();
    let nf = cohdiff_calculus::normalize(&Reducer::default(), &m, FUEL).unwrap();
    let expect = parse("\\y:i -> i2. y").unwrap();
    assert!(nf.alpha_eq(&expect), "{nf}");
}

/// Whether `t` has a `Plus` or `0` directly under a linear position.
fn linear_redex_left(t: &Term) -> bool {
    let bad = |c: &Term| matches!(c, Term::Plus(..) | Term::Zero);
    match t {
        Term::App(f, a) => bad(f) || linear_redex_left(f) || linear_redex_left(a),
        Term::Abs(_, _, b)
        | Term::D(b)
        | Term::Proj(_, _, b)
        | Term::Inj(_, _, b)
        | Term::Sum(_, b)
        | Term::Flip(_, b) => bad(b) || linear_redex_left(b),
        Term::Plus(a, b) => linear_redex_left(a) || linear_redex_left(b),
        Term::Fix(_, b) => linear_redex_left(b),
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_rewriting_terminates_in_linear_normal_form(seed in 0u64..10_000, size in 2usize..12) {
        let j = TermGen::new(seed).judgment(size);
        let r = Reducer::default();
        let mut t = j.term.clone();
        let mut n = 0;
        while let Some((next, rule)) = r.linear_step(&t) {
            prop_assert!(rule.is_linear());
            t = next;
            n += 1;
            prop_assert!(n < 10_000, "⇝ does not terminate on {}", j.term);
        }
        prop_assert!(!linear_redex_left(&t), "{} is not ⇝-normal", t);
        // ⇝ preserves types.
        prop_assert!(check(&j.ctx, &t, &j.ty).is_ok());
    }

    #[test]
    fn only_the_sigma_projection_introduces_sums(seed in 0u64..10_000, size in 2usize..12) {
        let mut g = TermGen::new(seed);
        g.with_sums = false;
        let j = g.judgment(size);
        prop_assume!(j.term.plus_count() == 0);
        let (steps, _) = trace(&Reducer::default(), &j.term, FUEL);
        if let Some((rule, _)) = steps.iter().find(|(_, t)| t.plus_count() > 0) {
            prop_assert_eq!(*rule, Rule::Proj1Sum);
        }
    }

    #[test]
    fn dlet_has_the_derivative_type(seed in 0u64..10_000, size in 1usize..9) {
        let mut g = TermGen::new(seed);
        let (mut ctx, b) = g.context_and_type();
        let a = g.arg_type();
        ctx.push(("z".to_string(), a.clone()));
        let m = g.term(&ctx, &b, size);
        ctx.pop();
        let n = g.term(&ctx, &a.diff(), size.min(4));
        let out = dlet("z", &n, &m);
        prop_assert!(
            check(&ctx, &out, &b.diff()).is_ok(),
            "∂let z ← {} in {} = {} is not of type {}", n, m, out, b.diff()
        );
    }
}

#[test]
fn reduction_is_deterministic() {
    for j in corpus(9, 50, 8) {
        let a = trace(&Reducer::default(), &j.term, 100);
        let b = trace(&Reducer::default(), &j.term, 100);
        assert_eq!(a, b);
    }
}

#[test]
fn displayed_rules_alone_still_reduce_the_core_calculus() {
    let r = Reducer::displayed_only();
    let m = parse("pi1^0 (D (\\x:i. x) (iota1^0 #2))").unwrap();
    let nf = cohdiff_calculus::normalize(&r, &m, FUEL).unwrap();
    assert_eq!(nf, Term::Num(2));
    assert_eq!(typecheck(&[], &m).unwrap(), Ty::nat());
}

#[test]
fn printing_round_trips_through_the_parser() {
    for j in corpus(3, 150, 10) {
        let (steps, _) = trace(&Reducer::default(), &j.term, 60);
        for t in std::iter::once(j.term.clone()).chain(steps.into_iter().map(|(_, t)| t)) {
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{t}");
        }
    }
}
