//! The diagram registry and its runner.

use std::collections::BTreeSet;

use cohdiff::differential::dpartial;
use cohdiff::expr::{p, Expr, Prim};
use cohdiff::lawcheck::{check_claim, equal, gen_space, registry, run_all, run_diagram, GenParams, RunConfig, Status};
use cohdiff::{Atom, Budget, Kind, Space};

/// The law families every model must be checked against.
const COVERAGE: &[&str] = &[
    "joint-monicity",
    "s-com",
    "s-zero",
    "s-wit",
    "s-ass",
    "s-tensor",
    "s-with",
    "s-sums",
    "monad",
    "theta-flip",
    "strength",
    "smont-symmetry",
    "comonad",
    "comonoid",
    "seely-digg-comm",
    "seelyt-mont-commut",
    "d-local",
    "d-lin",
    "d-chain",
    "d-with",
    "d-schwarz",
    "leibniz",
    "dbar-coalgebra",
    "dbar-local",
    "dbar-lin",
    "sdiffst-mon-tens",
    "can-comonoid-into",
    "s-fun-iso",
];

#[test]
fn registry_covers_every_law_family() {
    let topics: BTreeSet<&str> = registry().iter().map(|s| s.topic).collect();
    for t in COVERAGE {
        assert!(topics.contains(t), "no diagram for {t}");
    }
    // Every diagram applies at least to coherence spaces.
    for s in registry() {
        assert!(s.kinds.contains(&Kind::Coh), "{} skips COH", s.name);
    }
}

#[test]
fn every_diagram_passes_a_short_run() {
    let cfg = RunConfig { trials: 8, seed: 11, ..RunConfig::default() };
    for kind in Kind::ALL {
        for r in run_all(kind, cfg, None).unwrap() {
            assert!(r.passed(), "{}", r.line());
            assert_eq!(r.trials_run, 8);
        }
    }
}

#[test]
fn chain_rule_on_coh_and_associativity_on_rel() {
    let budget = Budget::degree(3);
    let cfg = RunConfig { trials: 50, seed: 3, budget, web_size: 4 };
    let reg = registry();
    let chain = reg.iter().find(|s| s.name == "d-chain").unwrap();
    assert!(run_diagram(chain, Kind::Coh, cfg).passed());
    let ass = reg.iter().find(|s| s.name == "s-ass").unwrap();
    assert!(run_diagram(ass, Kind::Rel, cfg).passed());
}

#[test]
fn runs_are_deterministic_and_filterable() {
    let cfg = RunConfig { trials: 5, seed: 42, ..RunConfig::default() };
    let a = run_all(Kind::Nucs, cfg, Some("monad")).unwrap();
    let b = run_all(Kind::Nucs, cfg, Some("monad")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert!(run_all(Kind::Coh, cfg, Some("no-such-law")).is_err());
}

#[test]
fn a_corrupted_partial_is_reported_with_a_witness() {
    let x = Space::flat("E", Kind::Coh, vec![Atom::base("a"), Atom::base("b")]);
    let budget = Budget::default();
    let mut d = dpartial(&x, budget).unwrap();
    let victim =
        d.pairs().iter().find(|(a, b)| a.degree() == 1 && b.as_tag().is_some_and(|(i, _)| i == 1)).unwrap().clone();
    d.remove(&victim.0, &victim.1);
    let claim = equal("S der ∘ ∂ = der", &x.s().bang(), p(Prim::Der).s().after(&Expr::lit(d)), p(Prim::Der));
    let f = check_claim(&claim, budget).unwrap().expect("the mutant is caught");
    assert_eq!(f.input.as_deref(), Some(victim.0.to_string().as_str()));
    assert_ne!(f.left, f.right);
}

#[test]
fn a_failing_run_carries_the_counterexample() {
    // A fake diagram claiming σ = π0 on S E.
    let spec = cohdiff::lawcheck::DiagramSpec {
        name: "fake",
        topic: "fake",
        about: "σ = π0",
        kinds: &[Kind::Coh],
        build: |g| {
            let x = g.space();
            Ok(vec![equal("σ = π0", &x.s(), p(Prim::Sigma), p(Prim::Proj(0)))])
        },
    };
    let r = run_diagram(&spec, Kind::Coh, RunConfig { trials: 3, ..RunConfig::default() });
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failed_trial, Some(0));
    let c = r.counterexample.as_ref().unwrap();
    assert!(c.input.as_deref().unwrap().starts_with("1·"));
    assert!(r.line().starts_with("FAIL fake"));
}

#[test]
fn generated_spaces_are_valid() {
    for seed in 0..50 {
        for kind in Kind::ALL {
            let e = gen_space(seed, GenParams { web_size: 4, kind });
            let web = e.enumerate(Budget::degree(0)).unwrap();
            for a in &web {
                for b in &web {
                    assert_eq!(e.coherent(a, b).unwrap(), e.coherent(b, a).unwrap());
                }
            }
            assert_eq!(e.to_string(), gen_space(seed, GenParams { web_size: 4, kind }).to_string());
        }
    }
}
