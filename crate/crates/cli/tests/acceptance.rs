//! Acceptance criteria, one line of output per criterion.
//!
//! Every criterion is an exact (set-equality) comparison; the only
//! numerical tolerance is the wall-clock bound on the law suite.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cohdiff::differential::{check_clique_derivative, dbar, dhat, dpartial, lafont_solutions};
use cohdiff::expr::{p, Expr, Prim};
use cohdiff::lawcheck::{check_claim, equal, gen_space, run_all, Gen, GenParams, RunConfig};
use cohdiff::summability::nary_summable;
use cohdiff::text::parse_atom;
use cohdiff::{Atom, Budget, Kind, Rel, Space};
use cohdiff_calculus::corpus::{corpus, RULE_PROBES};
use cohdiff_calculus::{
    check, normalize, parse, parse_judgment, trace, typecheck, validate_rules, Reducer, Rule, SemEnv, Term,
};

/// Wall-clock bound for the whole law suite.
const LAW_SUITE_LIMIT: Duration = Duration::from_secs(60);
/// Trials per diagram and model in the law suite.
const LAW_TRIALS: usize = 100;
/// Number of random morphisms for the clique-derivative theorem.
const CLIQUE_MORPHISMS: u64 = 30;
/// Generated terms for subject reduction and soundness.
const CORPUS_SIZE: usize = 200;
/// Step bound when reducing generated terms.
const FUEL: usize = 300;

type Outcome = Result<String, String>;

fn rel(pairs: &[(&str, &str)]) -> Rel {
    pairs.iter().map(|(a, b)| (parse_atom(a).unwrap(), parse_atom(b).unwrap())).collect()
}

fn law_suite() -> Outcome {
    let start = Instant::now();
    let cfg = RunConfig { trials: LAW_TRIALS, seed: 0, budget: Budget::degree(3), web_size: 4 };
    let mut run = 0;
    for kind in Kind::ALL {
        for r in run_all(kind, cfg, None).map_err(|e| e.to_string())? {
            if !r.passed() {
                return Err(r.line());
            }
            run += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > LAW_SUITE_LIMIT {
        return Err(format!("{run} diagrams passed but took {elapsed:.1?} (limit {LAW_SUITE_LIMIT:?})"));
    }
    // Mutation: drop one linear pair from ∂ and check the chain rule.
    let x = Space::flat("E", Kind::Coh, vec![Atom::base("a")]);
    let budget = Budget::degree(3);
    let mut d = dpartial(&x, budget).map_err(|e| e.to_string())?;
    let victim = d
        .pairs()
        .iter()
        .find(|(_, b)| b.as_tag().is_some_and(|(t, _)| t == 1))
        .cloned()
        .ok_or("∂ has no linear pair")?;
    d.remove(&victim.0, &victim.1);
    let mutant = Expr::lit(d);
    let honest_bang = cohdiff::expr::partial(Kind::Coh, Some(&x.bang()));
    let claims = [
        equal("S der ∘ ∂ = der", &x.s().bang(), p(Prim::Der).s().after(&mutant), p(Prim::Der)),
        equal(
            "S dig ∘ ∂ = ∂_! ∘ !∂ ∘ dig",
            &x.s().bang(),
            p(Prim::Dig).s().after(&mutant),
            Expr::seq([p(Prim::Dig), mutant.bang(), honest_bang]),
        ),
    ];
    let mut caught = None;
    for c in &claims {
        if let Some(f) = check_claim(c, budget).map_err(|e| e.to_string())? {
            caught = Some(f);
            break;
        }
    }
    let f = caught.ok_or("the corrupted ∂ passed the chain rule")?;
    let input = f.input.ok_or("the failure carries no witness")?;
    Ok(format!("{run} diagram runs x {LAW_TRIALS} trials in {elapsed:.1?}; mutant caught by `{}` at {input}", f.claim))
}

fn exact_formulas() -> Outcome {
    let e = Space::flat("E", Kind::Coh, vec![Atom::base("a")]);
    let d = dpartial(&e, Budget::degree(2)).map_err(|e| e.to_string())?;
    let expect = rel(&[("[]", "0·[]"), ("[0·a]", "0·[a]"), ("[0·a,0·a]", "0·[a,a]"), ("[1·a]", "1·[a]")]);
    if d != expect {
        return Err(format!("∂_E =\n{d}"));
    }
    let pt = |i: u8| Atom::point(i);
    let ms = |xs: &[u8]| Atom::mset(xs.iter().map(|&i| Atom::point(i)).collect());
    let expect: Rel = [
        (pt(0), ms(&[])),
        (pt(0), ms(&[0])),
        (pt(0), ms(&[0, 0])),
        (pt(0), ms(&[0, 0, 0])),
        (pt(1), ms(&[1])),
        (pt(1), ms(&[0, 1])),
        (pt(1), ms(&[0, 0, 1])),
    ]
    .into_iter()
    .collect();
    for kind in Kind::ALL {
        let db = dbar(kind, Budget::degree(3)).map_err(|e| e.to_string())?;
        if db != expect {
            return Err(format!("∂̄ in {kind} =\n{db}"));
        }
    }
    Ok("∂ on {a} has the 4 expected pairs; ∂̄ up to degree 3 has the 7 expected pairs in all models".into())
}

fn taylor_contrast() -> Outcome {
    let s = rel(&[("[a]", "b")]);
    let s2 = rel(&[("[a,a]", "b")]);
    let coh = Space::flat("E", Kind::Coh, vec![Atom::base("a")]);
    let nucs = coh.with_kind(Kind::Nucs);
    let cases = [
        ("D̂s in COH", dhat(&s, &coh), rel(&[("[0·a]", "0·b"), ("[1·a]", "1·b")])),
        ("D̂s' in COH", dhat(&s2, &coh), rel(&[("[0·a,0·a]", "0·b")])),
        ("D̂s' in NUCS", dhat(&s2, &nucs), rel(&[("[0·a,0·a]", "0·b"), ("[0·a,1·a]", "1·b")])),
    ];
    for (name, got, want) in cases {
        if got != want {
            return Err(format!("{name} =\n{got}"));
        }
    }
    Ok("COH derivative of [a,a] ↦ b vanishes; NUCS adds [0·a,1·a] ↦ 1·b".into())
}

fn clique_derivative() -> Outcome {
    let budget = Budget::degree(3);
    let mut pairs = 0;
    for seed in 0..CLIQUE_MORPHISMS {
        let mut g = Gen::new(seed, Kind::Coh, 3, budget);
        let (e, f) = (g.space_upto(3), g.space_upto(3));
        let s = g.morphism_deg(&e.bang(), &f, 3, 0).map_err(|e| e.to_string())?;
        pairs += s.len();
        let web = e.enumerate(Budget::degree(0)).map_err(|e| e.to_string())?;
        if let Some(w) = check_clique_derivative(&s, &e, &web, 3) {
            let shown: Vec<String> = w.iter().map(Atom::to_string).collect();
            return Err(format!("seed {seed}: s =\n{s}fails at the clique {{{}}}", shown.join(", ")));
        }
    }
    Ok(format!("{CLIQUE_MORPHISMS} morphisms ({pairs} pairs), every clique (x, u) with |x| + |u| ≤ 3"))
}

fn lafont_uniqueness() -> Outcome {
    for kind in [Kind::Coh, Kind::Nucs] {
        let sols = lafont_solutions(kind, 2).map_err(|e| e.to_string())?;
        let db = dbar(kind, Budget::degree(2)).map_err(|e| e.to_string())?;
        if sols != [db] {
            return Err(format!("{kind}: {} solutions", sols.len()));
        }
    }
    Ok("exactly one comonoid morphism I → !I up to degree 2 in COH and NUCS, equal to ∂̄".into())
}

fn calculus() -> Outcome {
    let reducer = Reducer::default();
    let judgments = corpus(1, CORPUS_SIZE, 10);
    let mut steps = 0;
    for (k, j) in judgments.iter().enumerate() {
        let (tr, _) = trace(&reducer, &j.term, FUEL);
        for (rule, t) in &tr {
            if check(&j.ctx, t, &j.ty).is_err() {
                return Err(format!("term {k}: `{t}` after {rule} lost type {}", j.ty));
            }
        }
        steps += tr.len();
    }
    let (ctx, m) = parse_judgment("x : i, y : i |- x + y").map_err(|e| e.to_string())?;
    if typecheck(&ctx, &m).is_ok() {
        return Err("x + y has a type".into());
    }
    let nf =
        normalize(&reducer, &parse("D (\\x:i. x)").map_err(|e| e.to_string())?, FUEL).map_err(|e| e.to_string())?;
    match &nf {
        Term::Abs(y, _, body) if **body == Term::Var(y.clone()) => {}
        _ => return Err(format!("D(λx.x) normalizes to {nf}")),
    }
    let env = SemEnv::default();
    let mut sample: Vec<_> = judgments.into_iter().map(|j| (j.ctx, j.term)).collect();
    sample.extend(RULE_PROBES.iter().map(|(_, s)| parse_judgment(s).expect("probes parse")));
    let (report, _) = validate_rules(&reducer, &sample, &env, FUEL).map_err(|e| e.to_string())?;
    if let Some(v) = report.violations.first() {
        return Err(format!(
            "{} violations; first: {} at `{}`: {}",
            report.violations.len(),
            v.rule,
            v.before,
            v.detail
        ));
    }
    let unchecked: Vec<&str> =
        Rule::ALL.iter().filter(|r| !report.rule_counts.contains_key(r)).map(|r| r.name()).collect();
    if !unchecked.is_empty() {
        return Err(format!("rules never exercised: {}", unchecked.join(", ")));
    }
    Ok(format!(
        "{CORPUS_SIZE} terms, {steps} typed steps; x + y rejected; D(λx.x) ↦ {nf}; {} steps compared, {} rules, 0 violations",
        report.checked,
        Rule::ALL.len()
    ))
}

/// All partitions of `0..n` into non-empty blocks.
fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in partitions(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            if i == p.len() {
                q.push(vec![n - 1]);
            } else {
                q[i].push(n - 1);
            }
            out.push(q);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Multisets of size `k` over `0..n`, as sorted index vectors.
fn multichoose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multichoose(n, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

fn summability_algebra() -> Outcome {
    let mut families = 0usize;
    let mut summable = 0usize;
    for kind in Kind::ALL {
        for seed in 0..3u64 {
            let e = gen_space(seed, GenParams { web_size: 3, kind });
            let f = gen_space(seed + 100, GenParams { web_size: 3, kind });
            let ew = e.enumerate(Budget::degree(0)).map_err(|e| e.to_string())?;
            let fw = f.enumerate(Budget::degree(0)).map_err(|e| e.to_string())?;
            // Every morphism with at most one pair.
            let mut pool = vec![Rel::empty()];
            for a in &ew {
                for b in &fw {
                    let r: Rel = [(a.clone(), b.clone())].into_iter().collect();
                    if e.is_morphism(&f, &r) {
                        pool.push(r);
                    }
                }
            }
            for size in [3, 4] {
                for choice in multichoose(pool.len(), size) {
                    let fam: Vec<Rel> = choice.iter().map(|&i| pool[i].clone()).collect();
                    let whole = nary_summable(&fam, &e, &f).ok();
                    families += 1;
                    summable += whole.is_some() as usize;
                    for perm in permutations(size) {
                        let permuted: Vec<Rel> = perm.iter().map(|&i| fam[i].clone()).collect();
                        if nary_summable(&permuted, &e, &f).ok() != whole {
                            return Err(format!("{kind}: permutation {perm:?} of {choice:?} changes the sum"));
                        }
                    }
                    for blocks in partitions(size) {
                        let sums: Option<Vec<Rel>> = blocks
                            .iter()
                            .map(|b| nary_summable(&b.iter().map(|&i| fam[i].clone()).collect::<Vec<_>>(), &e, &f).ok())
                            .collect();
                        let regrouped = sums.and_then(|s| nary_summable(&s, &e, &f).ok());
                        if regrouped != whole {
                            return Err(format!("{kind}: grouping {blocks:?} of {choice:?} changes the sum"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{families} families of 3 and 4 morphisms ({summable} summable), all orders and groupings agree"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("law suite and mutation", law_suite),
        ("exact ∂ and ∂̄", exact_formulas),
        ("Taylor contrast", taylor_contrast),
        ("clique derivative", clique_derivative),
        ("Lafont uniqueness", lafont_uniqueness),
        ("calculus", calculus),
        ("summability algebra", summability_algebra),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} PASS {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
