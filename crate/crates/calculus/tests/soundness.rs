//! Every reduction step preserves the relational interpretation.

use cohdiff::Kind;
use cohdiff_calculus::corpus::{corpus, RULE_PROBES};
use cohdiff_calculus::denot::is_coherent;
use cohdiff_calculus::{
    interp_term, parse_judgment, soundness_check, typecheck, validate_rules, Reducer, Rule, SemEnv,
};

const FUEL: usize = 300;

#[test]
fn every_rule_probe_is_sound() {
    let env = SemEnv::default();
    let probes: Vec<_> = RULE_PROBES.iter().map(|(_, s)| parse_judgment(s).unwrap()).collect();
    let (report, fixed) = validate_rules(&Reducer::default(), &probes, &env, FUEL).unwrap();
    assert!(report.sound(), "{:?}", report.violations);
    assert_eq!(fixed, Reducer::default());
    for (rule, _) in RULE_PROBES {
        assert!(report.rule_counts.get(&rule).copied().unwrap_or(0) > 0, "{rule} never checked");
    }
}

#[test]
fn generated_corpus_is_sound() {
    let env = SemEnv::default();
    let judgments: Vec<_> = corpus(2, 200, 10).into_iter().map(|j| (j.ctx, j.term)).collect();
    let (report, _) = validate_rules(&Reducer::default(), &judgments, &env, FUEL).unwrap();
    assert!(report.sound(), "{:?}", report.violations);
    assert!(report.checked > 200, "only {} steps were compared", report.checked);
}

#[test]
fn derivative_of_a_fixpoint_is_sound_while_it_unfolds() {
    // D over fix unfolds without bound; every step taken within the fuel
    // must still be sound.
    let env = SemEnv::default();
    let (ctx, m) = parse_judgment("|- D (fix (\\f:i -> i. \\n:i. if0 n #0 (f (pred n))))").unwrap();
    typecheck(&ctx, &m).unwrap();
    let report = soundness_check(&Reducer::default(), &ctx, &m, &env, 12).unwrap();
    assert!(report.sound(), "{:?}", report.violations);
    assert!(report.rule_counts.contains_key(&Rule::DLam) || report.rule_counts.contains_key(&Rule::Fix));
}

#[test]
fn closed_ground_terms_are_deterministic_in_nucs() {
    let env = SemEnv { kind: Kind::Nucs, ..SemEnv::default() };
    for j in corpus(3, 120, 8) {
        if !j.ctx.is_empty() || j.ty.depth() > 0 || matches!(j.ty, cohdiff_calculus::Ty::Arrow(..)) {
            continue;
        }
        let Ok(r) = interp_term(&j.ctx, &j.term, &env) else { continue };
        assert!(r.len() <= 1, "{} denotes {} values", j.term, r.len());
        assert!(is_coherent(&j.ctx, &j.ty, &r, &env));
    }
}
