//! Randomised checking of commuting diagrams.
//!
//! A [`DiagramSpec`] builds, from a seeded generator, a list of
//! [`Claim`]s: equalities of two composite expressions on a source web,
//! morphism-hood of a map, or summability of two maps. [`run_diagram`]
//! evaluates the claims over many random instances and reports the first
//! counterexample, if any. Every law proved for summability, the resource
//! comonad and differentiation is registered in [`registry`].

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::expr::{p, partial, Evaluator, Expr, Prim};
use crate::rel::{Budget, Rel};
use crate::space::{Kind, Space};
use crate::summability::witness;

/// Parameters for [`gen_space`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Number of web atoms (at least 1).
    pub web_size: usize,
    /// Model kind.
    pub kind: Kind,
}

/// A random base space with `params.web_size` atoms named `a0, a1, …`.
///
/// COH: each pair of distinct atoms is coherent or incoherent with equal
/// probability. NUCS: each pair, diagonal included, is strictly coherent,
/// neutral or strictly incoherent. REL: a plain set.
pub fn gen_space(seed: u64, params: GenParams) -> Space {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_space(&mut rng, "E", params)
}

fn random_space(rng: &mut ChaCha8Rng, name: &str, params: GenParams) -> Space {
    let atoms: Vec<Atom> = (0..params.web_size.max(1)).map(|i| Atom::base(&format!("a{i}"))).collect();
    let mut coh = Vec::new();
    let mut inc = Vec::new();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i..] {
            let diag = a == b;
            match params.kind {
                Kind::Coh if !diag => {
                    if rng.gen_bool(0.5) {
                        coh.push((a.clone(), b.clone()));
                    }
                }
                Kind::Nucs => match rng.gen_range(0..3) {
                    0 => coh.push((a.clone(), b.clone())),
                    1 => inc.push((a.clone(), b.clone())),
                    _ => {}
                },
                _ => {}
            }
        }
    }
    Space::base(name, params.kind, atoms, &coh, &inc).expect("generated space is well formed")
}

/// Seeded source of random spaces and morphisms for one trial.
pub struct Gen {
    rng: ChaCha8Rng,
    /// Model kind of everything generated.
    pub kind: Kind,
    /// Maximal web size of generated base spaces.
    pub web_size: usize,
    /// Evaluation budget.
    pub budget: Budget,
    spaces: usize,
}

impl Gen {
    /// A generator for one trial.
    pub fn new(seed: u64, kind: Kind, web_size: usize, budget: Budget) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), kind, web_size: web_size.max(1), budget, spaces: 0 }
    }

    /// A random base space with between 1 and `web_size` atoms.
    pub fn space(&mut self) -> Space {
        self.space_upto(self.web_size)
    }

    /// A random base space with between 1 and `n` atoms.
    pub fn space_upto(&mut self, n: usize) -> Space {
        let size = self.rng.gen_range(1..=n.max(1));
        let name = format!("X{}", self.spaces);
        self.spaces += 1;
        let kind = self.kind;
        random_space(&mut self.rng, &name, GenParams { web_size: size, kind })
    }

    /// A random morphism `src → tgt` built greedily from shuffled pairs
    /// with input degree at most `in_deg` and output degree at most
    /// `out_deg`; every accepted pair keeps the relation a morphism.
    pub fn morphism_deg(&mut self, src: &Space, tgt: &Space, in_deg: u32, out_deg: u32) -> Result<Rel> {
        let ins = src.enumerate(Budget { max_degree: in_deg, ..self.budget })?;
        let outs = tgt.enumerate(Budget { max_degree: out_deg, ..self.budget })?;
        let mut cands: Vec<(usize, usize)> =
            (0..ins.len()).flat_map(|i| (0..outs.len()).map(move |j| (i, j))).collect();
        cands.shuffle(&mut self.rng);
        cands.truncate(400);
        let target = self.rng.gen_range(0..=8usize);
        let hom = Space::limpl(src, tgt);
        let mut chosen: Vec<Atom> = Vec::new();
        let mut out = Rel::empty().labelled(src.to_string(), tgt.to_string());
        for (i, j) in cands {
            if chosen.len() >= target {
                break;
            }
            let x = Atom::pair(ins[i].clone(), outs[j].clone());
            if self.kind != Kind::Rel {
                if !hom.contains(&x) {
                    continue;
                }
                let ok = chosen.iter().chain([&x]).all(|y| hom.coherent(&x, y).map(|v| v.coherent()).unwrap_or(false));
                if !ok {
                    continue;
                }
            }
            out.insert(ins[i].clone(), outs[j].clone());
            chosen.push(x);
        }
        Ok(out)
    }

    /// A random morphism between spaces whose atoms of interest have
    /// degree at most 1.
    pub fn morphism(&mut self, src: &Space, tgt: &Space) -> Result<Rel> {
        self.morphism_deg(src, tgt, 1, 1)
    }

    /// A random Kleisli morphism `!src → tgt` with inputs of degree ≤ 2.
    pub fn kleisli(&mut self, src: &Space, tgt: &Space) -> Result<Rel> {
        self.morphism_deg(&src.bang(), tgt, 2, 1)
    }

    /// A random summable pair of morphisms `src → tgt` (see
    /// [`gen_summable_pair`]).
    pub fn summable_pair(&mut self, src: &Space, tgt: &Space) -> Result<(Rel, Rel)> {
        match self.rng.gen_range(0..3) {
            0 => {
                let f = self.morphism(src, tgt)?;
                Ok(if self.rng.gen_bool(0.5) { (f, Rel::empty()) } else { (Rel::empty(), f) })
            }
            1 => {
                let g = self.morphism(src, &tgt.s())?;
                let part = |i: u8| {
                    g.pairs()
                        .iter()
                        .filter_map(|(a, b)| match b.as_tag() {
                            Some((j, y)) if j == i => Some((a.clone(), y.clone())),
                            _ => None,
                        })
                        .collect::<Rel>()
                };
                Ok((part(0), part(1)))
            }
            _ => {
                for _ in 0..20 {
                    let f0 = self.morphism(src, tgt)?;
                    let f1 = self.morphism(src, tgt)?;
                    if witness(&f0, &f1, src, tgt).is_ok() {
                        return Ok((f0, f1));
                    }
                }
                let f = self.morphism(src, tgt)?;
                Ok((f, Rel::empty()))
            }
        }
    }

    /// A random morphism split into `n` disjoint parts; the parts of a
    /// morphism are always summable in any grouping.
    pub fn parts(&mut self, src: &Space, tgt: &Space, n: usize) -> Result<Vec<Rel>> {
        let g = self.morphism(src, tgt)?;
        let mut parts = vec![Rel::empty(); n];
        for (a, b) in g.pairs() {
            let k = self.rng.gen_range(0..n);
            parts[k].insert(a.clone(), b.clone());
        }
        Ok(parts)
    }

    /// `∂_X` for this generator's kind.
    pub fn d(&self, x: &Space) -> Expr {
        partial(self.kind, Some(x))
    }
}

/// A random summable pair `E → F` drawn by one of three strategies:
/// `(f, 0)`, the two projections of a random `g : E → S F`, or a
/// rejection-sampled pair accepted by [`witness`].
pub fn gen_summable_pair(seed: u64, e: &Space, f: &Space) -> Result<(Rel, Rel)> {
    let mut g = Gen::new(seed, e.kind(), 4, Budget::default());
    g.summable_pair(e, f)
}

/// A checkable statement about morphisms.
#[derive(Clone, Debug)]
pub enum Claim {
    /// `left = right` on every atom of `src` within budget.
    Equal {
        /// Which equation of the diagram this is.
        label: String,
        /// Common source.
        src: Space,
        /// Left-hand composite.
        left: Expr,
        /// Right-hand composite.
        right: Expr,
    },
    /// `map : src → tgt` is a morphism of the model.
    Morphism {
        /// Description.
        label: String,
        /// Source.
        src: Space,
        /// Target.
        tgt: Space,
        /// The map.
        map: Expr,
    },
    /// `f0, f1 : src → tgt` are summable.
    Summable {
        /// Description.
        label: String,
        /// Source.
        src: Space,
        /// Target.
        tgt: Space,
        /// First component.
        f0: Expr,
        /// Second component.
        f1: Expr,
    },
    /// If every hypothesis holds then every conclusion holds.
    Implies {
        /// Description.
        label: String,
        /// Hypotheses.
        hypotheses: Vec<Claim>,
        /// Conclusions.
        conclusions: Vec<Claim>,
    },
}

/// Shorthand for [`Claim::Equal`].
pub fn equal(label: &str, src: &Space, left: Expr, right: Expr) -> Claim {
    Claim::Equal { label: label.to_string(), src: src.clone(), left, right }
}

/// Shorthand for [`Claim::Morphism`].
pub fn morphism(label: &str, src: &Space, tgt: &Space, map: Expr) -> Claim {
    Claim::Morphism { label: label.to_string(), src: src.clone(), tgt: tgt.clone(), map }
}

/// Shorthand for [`Claim::Summable`].
pub fn summable(label: &str, src: &Space, tgt: &Space, f0: Expr, f1: Expr) -> Claim {
    Claim::Summable { label: label.to_string(), src: src.clone(), tgt: tgt.clone(), f0, f1 }
}

impl Claim {
    /// The claim's label.
    pub fn label(&self) -> &str {
        match self {
            Claim::Equal { label, .. }
            | Claim::Morphism { label, .. }
            | Claim::Summable { label, .. }
            | Claim::Implies { label, .. } => label,
        }
    }
}

/// Why a claim failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Label of the failing claim.
    pub claim: String,
    /// Input atom at which the two sides differ (equalities only).
    pub input: Option<String>,
    /// Left-hand image at that input.
    pub left: Vec<String>,
    /// Right-hand image at that input.
    pub right: Vec<String>,
    /// Human-readable explanation.
    pub detail: String,
}

fn show(s: &BTreeSet<Atom>) -> Vec<String> {
    s.iter().map(|a| a.to_string()).collect()
}

/// Checks one claim; `Ok(None)` means it holds within budget.
pub fn check_claim(claim: &Claim, budget: Budget) -> Result<Option<Failure>> {
    let mut ev = Evaluator::new(budget.max_atoms);
    check_with(&mut ev, claim, budget)
}

fn check_with(ev: &mut Evaluator, claim: &Claim, budget: Budget) -> Result<Option<Failure>> {
    let cap = budget.max_degree;
    match claim {
        Claim::Equal { label, src, left, right } => {
            for a in src.enumerate(budget)? {
                let l = ev.image(left, &a, cap)?;
                let r = ev.image(right, &a, cap)?;
                if l != r {
                    return Ok(Some(Failure {
                        claim: label.clone(),
                        input: Some(a.to_string()),
                        left: show(&l),
                        right: show(&r),
                        detail: format!("{left}  ≠  {right}"),
                    }));
                }
            }
            Ok(None)
        }
        Claim::Morphism { label, src, tgt, map } => {
            let dom = src.enumerate(budget)?;
            let rel = ev.relation(map, &dom, cap)?;
            Ok(src.morphism_violation(tgt, &rel).map(|(x, y)| Failure {
                claim: label.clone(),
                input: None,
                left: vec![format!("{} ↦ {}", x.0, x.1)],
                right: vec![format!("{} ↦ {}", y.0, y.1)],
                detail: format!("{map} is not a morphism {src} → {tgt}"),
            }))
        }
        Claim::Summable { label, src, tgt, f0, f1 } => {
            let dom = src.enumerate(budget)?;
            let r0 = ev.relation(f0, &dom, cap)?;
            let r1 = ev.relation(f1, &dom, cap)?;
            Ok(witness(&r0, &r1, src, tgt).err().map(|ns| Failure {
                claim: label.clone(),
                input: None,
                left: vec![format!("{} ↦ {}", ns.left.0, ns.left.1)],
                right: vec![format!("{} ↦ {}", ns.right.0, ns.right.1)],
                detail: ns.reason,
            }))
        }
        Claim::Implies { hypotheses, conclusions, .. } => {
            for h in hypotheses {
                if check_with(ev, h, budget)?.is_some() {
                    return Ok(None);
                }
            }
            for c in conclusions {
                if let Some(f) = check_with(ev, c, budget)? {
                    return Ok(Some(f));
                }
            }
            Ok(None)
        }
    }
}

/// A registered diagram.
#[derive(Clone, Copy)]
pub struct DiagramSpec {
    /// Unique name, used by `--only`.
    pub name: &'static str,
    /// The law family it belongs to (see [`REQUIRED_TOPICS`]).
    pub topic: &'static str,
    /// One-line description.
    pub about: &'static str,
    /// Models it applies to.
    pub kinds: &'static [Kind],
    /// Builds the claims of one random instance.
    pub build: fn(&mut Gen) -> Result<Vec<Claim>>,
}

impl std::fmt::Debug for DiagramSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiagramSpec").field("name", &self.name).field("topic", &self.topic).finish()
    }
}

/// Outcome of a diagram run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every claim held on every trial.
    Pass,
    /// A counterexample was found.
    Fail,
    /// Evaluation could not complete (budget exceeded).
    Error,
}

/// Result of running one diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Diagram name.
    pub diagram: String,
    /// Model.
    pub model: String,
    /// Base seed.
    pub seed: u64,
    /// Trials requested.
    pub trials: usize,
    /// Trials completed.
    pub trials_run: usize,
    /// Claims evaluated over all trials.
    pub claims_checked: usize,
    /// Outcome.
    pub status: Status,
    /// Trial index of the failure or error.
    pub failed_trial: Option<usize>,
    /// First counterexample.
    pub counterexample: Option<Failure>,
    /// Error message when `status` is [`Status::Error`].
    pub error: Option<String>,
}

impl CheckReport {
    /// Whether the run passed.
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line of text summarising the run.
    pub fn line(&self) -> String {
        match self.status {
            Status::Pass => format!(
                "PASS {:<28} {:<4} trials={} claims={}",
                self.diagram, self.model, self.trials_run, self.claims_checked
            ),
            Status::Fail => {
                let c = self.counterexample.as_ref().expect("failures carry a counterexample");
                format!(
                    "FAIL {:<28} {:<4} trial={} claim=`{}` input={} left=[{}] right=[{}] ({})",
                    self.diagram,
                    self.model,
                    self.failed_trial.unwrap_or(0),
                    c.claim,
                    c.input.as_deref().unwrap_or("-"),
                    c.left.join(", "),
                    c.right.join(", "),
                    c.detail
                )
            }
            Status::Error => format!(
                "ERROR {:<27} {:<4} trial={} {}",
                self.diagram,
                self.model,
                self.failed_trial.unwrap_or(0),
                self.error.as_deref().unwrap_or("")
            ),
        }
    }
}

/// Run-wide parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Trials per diagram.
    pub trials: usize,
    /// Base seed.
    pub seed: u64,
    /// Evaluation budget.
    pub budget: Budget,
    /// Maximal web size of generated spaces.
    pub web_size: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig { trials: 100, seed: 0, budget: Budget::default(), web_size: 4 }
    }
}

/// Deterministic per-trial seed (FNV-1a over the diagram name, mixed with
/// the base seed and trial index).
pub fn trial_seed(seed: u64, name: &str, kind: Kind, trial: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes().chain(kind.name().bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (trial as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

/// Runs `spec` in model `kind`.
pub fn run_diagram(spec: &DiagramSpec, kind: Kind, cfg: RunConfig) -> CheckReport {
    let mut report = CheckReport {
        diagram: spec.name.to_string(),
        model: kind.name().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        trials_run: 0,
        claims_checked: 0,
        status: Status::Pass,
        failed_trial: None,
        counterexample: None,
        error: None,
    };
    for t in 0..cfg.trials {
        let mut g = Gen::new(trial_seed(cfg.seed, spec.name, kind, t), kind, cfg.web_size, cfg.budget);
        let outcome = (spec.build)(&mut g).and_then(|claims| {
            let mut ev = Evaluator::new(cfg.budget.max_atoms);
            for c in &claims {
                report.claims_checked += 1;
                if let Some(f) = check_with(&mut ev, c, cfg.budget)? {
                    return Ok(Some(f));
                }
            }
            Ok(None)
        });
        match outcome {
            Ok(None) => report.trials_run += 1,
            Ok(Some(f)) => {
                report.status = Status::Fail;
                report.failed_trial = Some(t);
                report.counterexample = Some(f);
                break;
            }
            Err(e) => {
                report.status = Status::Error;
                report.failed_trial = Some(t);
                report.error = Some(e.to_string());
                break;
            }
        }
    }
    report
}

/// Runs every registered diagram applying to `kind` (optionally only the
/// one named `only`), in parallel; reports are in registry order.
pub fn run_all(kind: Kind, cfg: RunConfig, only: Option<&str>) -> Result<Vec<CheckReport>> {
    let specs: Vec<DiagramSpec> = registry()
        .into_iter()
        .filter(|s| s.kinds.contains(&kind))
        .filter(|s| only.is_none_or(|o| s.name == o || s.topic == o))
        .collect();
    if let Some(o) = only {
        if specs.is_empty() {
            return Err(Error::InvalidSpace(format!("no diagram or topic named `{o}`")));
        }
    }
    Ok(specs.par_iter().map(|s| run_diagram(s, kind, cfg)).collect())
}

/// Law families that the registry must cover.
pub const REQUIRED_TOPICS: &[&str] = &[
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
    "structural",
    "seely-digg-comm",
    "seelyt-mont-commut",
    "d-local",
    "d-lin",
    "d-chain",
    "d-with",
    "d-schwarz",
    "leibniz",
    "d-natural",
    "dhat",
    "dbar-coalgebra",
    "dbar-local",
    "dbar-lin",
    "dbar-lafont",
    "d-presentations",
    "sdiffst-mon-tens",
    "can-comonoid-into",
    "canonical-iso",
    "s-fun-iso",
    "morphisms",
];

const ALL: &[Kind] = &Kind::ALL;

fn pr(prim: Prim) -> Expr {
    p(prim)
}

fn proj(i: u8) -> Expr {
    p(Prim::Proj(i))
}

fn lit(r: &Rel) -> Expr {
    Expr::lit(r.clone())
}

fn seq<const N: usize>(maps: [Expr; N]) -> Expr {
    Expr::seq(maps)
}

fn id() -> Expr {
    Expr::id()
}

fn tens(f: &Expr, g: &Expr) -> Expr {
    Expr::tensor(f, g)
}

/// `((a, b), (c, d)) ↦ ((a, c), (b, d))`, built from associators and the
/// symmetry.
fn medial() -> Expr {
    seq([
        pr(Prim::AssocR),
        pr(Prim::AssocL).id_tensor(),
        pr(Prim::Swap).tensor_id().id_tensor(),
        pr(Prim::AssocR).id_tensor(),
        pr(Prim::AssocL),
    ])
}

fn s_iso_i(kind: Kind) -> Space {
    Space::interval(kind)
}

/// Every registered diagram.
pub fn registry() -> Vec<DiagramSpec> {
    vec![
        DiagramSpec {
            name: "presum-joint-monic",
            topic: "joint-monicity",
            about: "π0, π1 (and the four π_i π_j) are jointly monic",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let h = g.morphism(&x, &y.s())?;
                let h2 = g.morphism(&x, &y.s_pow(2))?;
                let pij = |i: u8, j: u8, h: &Rel| seq([lit(h), proj(i), proj(j)]);
                Ok(vec![
                    equal(
                        "h = ⟨⟨π0 h, π1 h⟩⟩",
                        &x,
                        lit(&h),
                        Expr::pairing(&proj(0).after(&lit(&h)), &proj(1).after(&lit(&h))),
                    ),
                    equal(
                        "h = ⟨⟨⟨⟨π0π0h, π1π0h⟩⟩, ⟨⟨π0π1h, π1π1h⟩⟩⟩⟩",
                        &x,
                        lit(&h2),
                        Expr::pairing(
                            &Expr::pairing(&pij(0, 0, &h2), &pij(0, 1, &h2)),
                            &Expr::pairing(&pij(1, 0, &h2), &pij(1, 1, &h2)),
                        ),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "s-com",
            topic: "s-com",
            about: "π1, π0 summable and σ ∘ ⟨⟨π1, π0⟩⟩ = σ",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let sx = x.s();
                let swap = Expr::pairing(&proj(1), &proj(0));
                Ok(vec![
                    summable("π1, π0 summable", &sx, &x, proj(1), proj(0)),
                    equal("σ ∘ ⟨⟨π1, π0⟩⟩ = σ", &sx, pr(Prim::Sigma).after(&swap), pr(Prim::Sigma)),
                    equal("⟨⟨π0, π1⟩⟩ = id", &sx, Expr::pairing(&proj(0), &proj(1)), id()),
                    equal("⟨⟨π1, π0⟩⟩ involutive", &sx, swap.after(&swap), id()),
                ])
            },
        },
        DiagramSpec {
            name: "s-zero",
            topic: "s-zero",
            about: "f and 0 are summable with sum f",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let f = g.morphism(&x, &y)?;
                Ok(vec![
                    summable("f, 0 summable", &x, &y, lit(&f), Expr::zero()),
                    summable("0, f summable", &x, &y, Expr::zero(), lit(&f)),
                    equal(
                        "σ ∘ ⟨⟨f, 0⟩⟩ = f",
                        &x,
                        pr(Prim::Sigma).after(&Expr::pairing(&lit(&f), &Expr::zero())),
                        lit(&f),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "s-wit",
            topic: "s-wit",
            about: "witnesses of summable pairs with summable sums are summable",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let h = g.morphism(&x, &y.s_pow(2))?;
                let f = |i: u8, j: u8| seq([lit(&h), proj(i), proj(j)]);
                let mut claims = vec![summable(
                    "⟨⟨f00, f01⟩⟩, ⟨⟨f10, f11⟩⟩ summable (from h : X → S²Y)",
                    &x,
                    &y.s(),
                    Expr::pairing(&f(0, 0), &f(0, 1)),
                    Expr::pairing(&f(1, 0), &f(1, 1)),
                )];
                let q = if g.rng.gen_bool(0.5) {
                    g.parts(&x, &y, 4)?
                } else {
                    (0..4).map(|_| g.morphism(&x, &y)).collect::<Result<Vec<_>>>()?
                };
                let l: Vec<Expr> = q.iter().map(lit).collect();
                claims.push(Claim::Implies {
                    label: "S-wit on a sampled quadruple".into(),
                    hypotheses: vec![
                        summable("f00, f01", &x, &y, l[0].clone(), l[1].clone()),
                        summable("f10, f11", &x, &y, l[2].clone(), l[3].clone()),
                        summable("f00+f01, f10+f11", &x, &y, Expr::sum(&l[0], &l[1]), Expr::sum(&l[2], &l[3])),
                    ],
                    conclusions: vec![summable(
                        "⟨⟨f00, f01⟩⟩, ⟨⟨f10, f11⟩⟩ summable",
                        &x,
                        &y.s(),
                        Expr::pairing(&l[0], &l[1]),
                        Expr::pairing(&l[2], &l[3]),
                    )],
                });
                Ok(claims)
            },
        },
        DiagramSpec {
            name: "s-ass",
            topic: "s-ass",
            about: "S σ ∘ c = σ_{SX}",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                Ok(vec![equal("S σ ∘ c = σ", &x.s_pow(2), pr(Prim::Sigma).s().after(&pr(Prim::Flip)), pr(Prim::Sigma))])
            },
        },
        DiagramSpec {
            name: "s-ass-4",
            topic: "s-ass",
            about: "regrouping a summable 2×2 family",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let q = if g.rng.gen_bool(0.5) {
                    g.parts(&x, &y, 4)?
                } else {
                    (0..4).map(|_| g.morphism(&x, &y)).collect::<Result<Vec<_>>>()?
                };
                let l: Vec<Expr> = q.iter().map(lit).collect();
                let s = |a: usize, b: usize| Expr::sum(&l[a], &l[b]);
                Ok(vec![Claim::Implies {
                    label: "2×2 regrouping".into(),
                    hypotheses: vec![
                        summable("f00, f01", &x, &y, l[0].clone(), l[1].clone()),
                        summable("f10, f11", &x, &y, l[2].clone(), l[3].clone()),
                        summable("f00+f01, f10+f11", &x, &y, s(0, 1), s(2, 3)),
                    ],
                    conclusions: vec![
                        summable("f00, f10", &x, &y, l[0].clone(), l[2].clone()),
                        summable("f01, f11", &x, &y, l[1].clone(), l[3].clone()),
                        summable("f00+f10, f01+f11", &x, &y, s(0, 2), s(1, 3)),
                        equal(
                            "(f00+f01)+(f10+f11) = (f00+f10)+(f01+f11)",
                            &x,
                            Expr::sum(&s(0, 1), &s(2, 3)),
                            Expr::sum(&s(0, 2), &s(1, 3)),
                        ),
                    ],
                }])
            },
        },
        DiagramSpec {
            name: "flip",
            topic: "s-ass",
            about: "c is characterised by π_i π_j c = π_j π_i and is the witness of the π_i π_j",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let s2 = x.s_pow(2);
                let c = pr(Prim::Flip);
                let mut claims = Vec::new();
                for i in 0..2u8 {
                    for j in 0..2u8 {
                        claims.push(equal(
                            &format!("π{i} π{j} c = π{j} π{i}"),
                            &s2,
                            seq([c.clone(), proj(j), proj(i)]),
                            seq([proj(i), proj(j)]),
                        ));
                    }
                }
                let pp = |i: u8, j: u8| seq([proj(j), proj(i)]);
                claims.push(equal(
                    "c = ⟨⟨⟨⟨π0π0, π0π1⟩⟩, ⟨⟨π1π0, π1π1⟩⟩⟩⟩",
                    &s2,
                    c.clone(),
                    Expr::pairing(&Expr::pairing(&pp(0, 0), &pp(0, 1)), &Expr::pairing(&pp(1, 0), &pp(1, 1))),
                ));
                claims.push(equal("c ∘ c = id", &s2, c.after(&c), id()));
                Ok(claims)
            },
        },
        DiagramSpec {
            name: "theta-def",
            topic: "monad",
            about: "θ = ⟨⟨π0π0, π1π0 + π0π1⟩⟩",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let s2 = x.s_pow(2);
                let pp = |i: u8, j: u8| seq([proj(j), proj(i)]);
                Ok(vec![
                    summable("π1π0, π0π1 summable", &s2, &x, pp(1, 0), pp(0, 1)),
                    equal(
                        "θ = ⟨⟨π0π0, π1π0 + π0π1⟩⟩",
                        &s2,
                        pr(Prim::Theta),
                        Expr::pairing(&pp(0, 0), &Expr::sum(&pp(1, 0), &pp(0, 1))),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "monad-laws",
            topic: "monad",
            about: "(S, ι0, θ) is a monad; ι0 and θ are natural",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let f = lit(&g.morphism(&x, &y)?);
                let th = pr(Prim::Theta);
                let i0 = pr(Prim::Inj(0));
                Ok(vec![
                    equal("θ ∘ ι0 = id", &x.s(), th.after(&i0), id()),
                    equal("θ ∘ S ι0 = id", &x.s(), th.after(&i0.s()), id()),
                    equal("θ ∘ θ_S = θ ∘ S θ", &x.s_pow(3), th.after(&th), th.after(&th.s())),
                    equal("S f ∘ ι0 = ι0 ∘ f", &x, f.s().after(&i0), i0.after(&f)),
                    equal("S f ∘ θ = θ ∘ S² f", &x.s_pow(2), f.s().after(&th), th.after(&f.s().s())),
                ])
            },
        },
        DiagramSpec {
            name: "theta-flip",
            topic: "theta-flip",
            about: "θ ∘ c = θ",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                Ok(vec![equal("θ ∘ c = θ", &x.s_pow(2), pr(Prim::Theta).after(&pr(Prim::Flip)), pr(Prim::Theta))])
            },
        },
        DiagramSpec {
            name: "s-preserves-sums",
            topic: "s-sums",
            about: "⟨⟨S f0, S f1⟩⟩ = c ∘ S⟨⟨f0, f1⟩⟩ and S(f0 + f1) = S f0 + S f1",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let (f0, f1) = g.summable_pair(&x, &y)?;
                let (f0, f1) = (lit(&f0), lit(&f1));
                Ok(vec![
                    summable("S f0, S f1 summable", &x.s(), &y.s(), f0.s(), f1.s()),
                    equal(
                        "⟨⟨S f0, S f1⟩⟩ = c ∘ S⟨⟨f0, f1⟩⟩",
                        &x.s(),
                        Expr::pairing(&f0.s(), &f1.s()),
                        pr(Prim::Flip).after(&Expr::pairing(&f0, &f1).s()),
                    ),
                    equal("S f0 + S f1 = S(f0 + f1)", &x.s(), Expr::sum(&f0.s(), &f1.s()), Expr::sum(&f0, &f1).s()),
                ])
            },
        },
        DiagramSpec {
            name: "s-tensor",
            topic: "s-tensor",
            about: "(f00 ⊗ f1) + (f01 ⊗ f1) = (f00 + f01) ⊗ f1",
            kinds: ALL,
            build: |g| {
                let (x0, y0, x1, y1) = (g.space(), g.space(), g.space(), g.space());
                let (a, b) = g.summable_pair(&x0, &y0)?;
                let f1 = lit(&g.morphism(&x1, &y1)?);
                let (a, b) = (lit(&a), lit(&b));
                let src = Space::tensor(&x0, &x1);
                let tgt = Space::tensor(&y0, &y1);
                Ok(vec![
                    summable("f00 ⊗ f1, f01 ⊗ f1 summable", &src, &tgt, tens(&a, &f1), tens(&b, &f1)),
                    equal(
                        "(f00 ⊗ f1) + (f01 ⊗ f1) = (f00 + f01) ⊗ f1",
                        &src,
                        Expr::sum(&tens(&a, &f1), &tens(&b, &f1)),
                        tens(&Expr::sum(&a, &b), &f1),
                    ),
                    equal(
                        "str' ∘ (⟨⟨f00, f01⟩⟩ ⊗ f1) = ⟨⟨f00 ⊗ f1, f01 ⊗ f1⟩⟩",
                        &src,
                        pr(Prim::StrL).after(&tens(&Expr::pairing(&a, &b), &f1)),
                        Expr::pairing(&tens(&a, &f1), &tens(&b, &f1)),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "s-with-iso",
            topic: "s-with",
            about: "⟨S π0, S π1⟩ : S(X0 & X1) → S X0 & S X1 is an iso",
            kinds: ALL,
            build: |g| {
                let (x0, x1) = (g.space(), g.space());
                let sw = Space::with(&x0, &x1).s();
                let ws = Space::with(&x0.s(), &x1.s());
                let phi = Expr::pairing(&proj(0).s(), &proj(1).s());
                let c = pr(Prim::Flip);
                Ok(vec![
                    equal("⟨S π0, S π1⟩ = c", &sw, phi.clone(), c.clone()),
                    equal("c ∘ ⟨S π0, S π1⟩ = id", &sw, c.after(&phi), id()),
                    equal("⟨S π0, S π1⟩ ∘ c = id", &ws, phi.after(&c), id()),
                    morphism("⟨S π0, S π1⟩ is a morphism", &sw, &ws, phi),
                    morphism("its inverse is a morphism", &ws, &sw, c),
                ])
            },
        },
        DiagramSpec {
            name: "strength",
            topic: "strength",
            about: "unit, multiplication, commutativity and naturality of the strength",
            kinds: ALL,
            build: |g| {
                let (x, y, x2, y2) = (g.space(), g.space(), g.space(), g.space());
                let f = lit(&g.morphism(&x, &x2)?);
                let h = lit(&g.morphism(&y, &y2)?);
                let st = pr(Prim::Str);
                let stl = pr(Prim::StrL);
                let th = pr(Prim::Theta);
                Ok(vec![
                    equal(
                        "str ∘ (id ⊗ ι0) = ι0",
                        &Space::tensor(&x, &y),
                        st.after(&pr(Prim::Inj(0)).id_tensor()),
                        pr(Prim::Inj(0)),
                    ),
                    equal(
                        "str ∘ (id ⊗ θ) = θ ∘ S str ∘ str",
                        &Space::tensor(&x, &y.s_pow(2)),
                        st.after(&th.id_tensor()),
                        seq([st.clone(), st.s(), th.clone()]),
                    ),
                    equal(
                        "S str' ∘ str = c ∘ S str ∘ str'",
                        &Space::tensor(&x.s(), &y.s()),
                        stl.s().after(&st),
                        seq([stl.clone(), st.s(), pr(Prim::Flip)]),
                    ),
                    equal(
                        "Smont = θ ∘ S str' ∘ str",
                        &Space::tensor(&x.s(), &y.s()),
                        pr(Prim::Smont),
                        seq([st.clone(), stl.s(), th.clone()]),
                    ),
                    equal(
                        "θ ∘ S str' ∘ str = θ ∘ S str ∘ str'",
                        &Space::tensor(&x.s(), &y.s()),
                        seq([st.clone(), stl.s(), th.clone()]),
                        seq([stl.clone(), st.s(), th.clone()]),
                    ),
                    equal(
                        "str ∘ (f ⊗ S h) = S(f ⊗ h) ∘ str",
                        &Space::tensor(&x, &y.s()),
                        st.after(&tens(&f, &h.s())),
                        tens(&f, &h).s().after(&st),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "smont-symmetry",
            topic: "smont-symmetry",
            about: "S γ ∘ Smont = Smont ∘ γ",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                Ok(vec![equal(
                    "S γ ∘ Smont = Smont ∘ γ",
                    &Space::tensor(&x.s(), &y.s()),
                    pr(Prim::Swap).s().after(&pr(Prim::Smont)),
                    pr(Prim::Smont).after(&pr(Prim::Swap)),
                )])
            },
        },
        DiagramSpec {
            name: "comonad-laws",
            topic: "comonad",
            about: "(!, der, dig) is a comonad; der and dig are natural",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let f = lit(&g.morphism(&x, &y)?);
                let (der, dig) = (pr(Prim::Der), pr(Prim::Dig));
                let bx = x.bang();
                Ok(vec![
                    equal("der ∘ dig = id", &bx, der.after(&dig), id()),
                    equal("!der ∘ dig = id", &bx, der.bang().after(&dig), id()),
                    equal("dig ∘ dig = !dig ∘ dig", &bx, dig.after(&dig), dig.bang().after(&dig)),
                    equal("der ∘ !f = f ∘ der", &bx, der.after(&f.bang()), f.after(&der)),
                    equal("dig ∘ !f = !!f ∘ dig", &bx, dig.after(&f.bang()), f.bang().bang().after(&dig)),
                ])
            },
        },
        DiagramSpec {
            name: "comonoid-laws",
            topic: "comonoid",
            about: "(!X, weak, contr) is a commutative comonoid",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let bx = x.bang();
                let (w, c) = (pr(Prim::Weak), pr(Prim::Contr));
                Ok(vec![
                    equal("λ ∘ (weak ⊗ id) ∘ contr = id", &bx, seq([c.clone(), w.tensor_id(), pr(Prim::LUnit)]), id()),
                    equal("ρ ∘ (id ⊗ weak) ∘ contr = id", &bx, seq([c.clone(), w.id_tensor(), pr(Prim::RUnit)]), id()),
                    equal(
                        "α ∘ (contr ⊗ id) ∘ contr = (id ⊗ contr) ∘ contr",
                        &bx,
                        seq([c.clone(), c.tensor_id(), pr(Prim::AssocR)]),
                        c.id_tensor().after(&c),
                    ),
                    equal("γ ∘ contr = contr", &bx, pr(Prim::Swap).after(&c), c.clone()),
                ])
            },
        },
        DiagramSpec {
            name: "structural-defs",
            topic: "structural",
            about: "m0, m2, weak, contr from the Seely isomorphisms; Seely isos are inverse",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let k = g.kind;
                let one = Space::one(k);
                let (s2, s2i) = (pr(Prim::Seely2), pr(Prim::Seely2Inv));
                let (der, dig) = (pr(Prim::Der), pr(Prim::Dig));
                let bxy = Space::tensor(&x.bang(), &y.bang());
                Ok(vec![
                    equal(
                        "m2 = !(der ⊗ der) ∘ !seely2⁻¹ ∘ dig ∘ seely2",
                        &bxy,
                        pr(Prim::M2),
                        seq([s2.clone(), dig.clone(), s2i.bang(), tens(&der, &der).bang()]),
                    ),
                    equal(
                        "m0 = !seely0⁻¹ ∘ dig ∘ seely0",
                        &one,
                        pr(Prim::M0),
                        seq([pr(Prim::Seely0), dig.clone(), pr(Prim::Seely0Inv).bang()]),
                    ),
                    equal(
                        "weak = seely0⁻¹ ∘ !0",
                        &x.bang(),
                        pr(Prim::Weak),
                        pr(Prim::Seely0Inv).after(&Expr::zero().bang()),
                    ),
                    equal(
                        "contr = seely2⁻¹ ∘ !⟨id, id⟩",
                        &x.bang(),
                        pr(Prim::Contr),
                        s2i.after(&Expr::pairing(&id(), &id()).bang()),
                    ),
                    equal("seely2⁻¹ ∘ seely2 = id", &bxy, s2i.after(&s2), id()),
                    equal("seely2 ∘ seely2⁻¹ = id", &Space::with(&x, &y).bang(), s2.after(&s2i), id()),
                    equal("seely0⁻¹ ∘ seely0 = id", &one, pr(Prim::Seely0Inv).after(&pr(Prim::Seely0)), id()),
                ])
            },
        },
        DiagramSpec {
            name: "seely-digg-comm",
            topic: "seely-digg-comm",
            about: "seely2 ∘ (dig ⊗ dig) = !⟨!π0, !π1⟩ ∘ dig ∘ seely2",
            kinds: ALL,
            build: |g| {
                let (x0, x1) = (g.space(), g.space());
                let dig = pr(Prim::Dig);
                Ok(vec![equal(
                    "seely2 ∘ (dig ⊗ dig) = !⟨!π0, !π1⟩ ∘ dig ∘ seely2",
                    &Space::tensor(&x0.bang(), &x1.bang()),
                    pr(Prim::Seely2).after(&tens(&dig, &dig)),
                    seq([pr(Prim::Seely2), dig.clone(), Expr::pairing(&proj(0).bang(), &proj(1).bang()).bang()]),
                )])
            },
        },
        DiagramSpec {
            name: "seelyt-mont-commut",
            topic: "seelyt-mont-commut",
            about: "the two compatibility squares between the Seely isos and m2",
            kinds: ALL,
            build: |g| {
                let (x0, x1, y) = (g.space(), g.space(), g.space());
                let k = g.kind;
                let top = Space::top(k);
                let _ = top;
                let m2 = pr(Prim::M2);
                let s2 = pr(Prim::Seely2);
                Ok(vec![
                    equal(
                        "seely0 ∘ λ ∘ (id ⊗ weak) = !0 ∘ m2 ∘ (seely0 ⊗ id)",
                        &Space::tensor(&Space::one(k), &y.bang()),
                        seq([pr(Prim::Weak).id_tensor(), pr(Prim::LUnit), pr(Prim::Seely0)]),
                        seq([pr(Prim::Seely0).tensor_id(), m2.clone(), Expr::zero().bang()]),
                    ),
                    equal(
                        "seely2 ∘ (m2 ⊗ m2) ∘ σ23 ∘ (id ⊗ contr) = !⟨π0 ⊗ id, π1 ⊗ id⟩ ∘ m2 ∘ (seely2 ⊗ id)",
                        &Space::tensor(&Space::tensor(&x0.bang(), &x1.bang()), &y.bang()),
                        seq([pr(Prim::Contr).id_tensor(), medial(), tens(&m2, &m2), s2.clone()]),
                        seq([
                            s2.tensor_id(),
                            m2.clone(),
                            Expr::pairing(&proj(0).tensor_id(), &proj(1).tensor_id()).bang(),
                        ]),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "d-local",
            topic: "d-local",
            about: "π0 ∘ ∂ = !π0",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                Ok(vec![equal("π0 ∘ ∂ = !π0", &x.s().bang(), proj(0).after(&g.d(&x)), proj(0).bang())])
            },
        },
        DiagramSpec {
            name: "d-lin",
            topic: "d-lin",
            about: "∂ ∘ !ι0 = ι0 and θ ∘ S∂ ∘ ∂_S = ∂ ∘ !θ",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let (d, ds) = (g.d(&x), g.d(&x.s()));
                Ok(vec![
                    equal("∂ ∘ !ι0 = ι0", &x.bang(), d.after(&pr(Prim::Inj(0)).bang()), pr(Prim::Inj(0))),
                    equal(
                        "θ ∘ S∂ ∘ ∂_S = ∂ ∘ !θ",
                        &x.s_pow(2).bang(),
                        seq([ds, d.s(), pr(Prim::Theta)]),
                        d.after(&pr(Prim::Theta).bang()),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "d-chain",
            topic: "d-chain",
            about: "S der ∘ ∂ = der and S dig ∘ ∂ = ∂_! ∘ !∂ ∘ dig",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let (d, db) = (g.d(&x), g.d(&x.bang()));
                Ok(vec![
                    equal("S der ∘ ∂ = der", &x.s().bang(), pr(Prim::Der).s().after(&d), pr(Prim::Der)),
                    equal(
                        "S dig ∘ ∂ = ∂_! ∘ !∂ ∘ dig",
                        &x.s().bang(),
                        pr(Prim::Dig).s().after(&d),
                        seq([pr(Prim::Dig), d.bang(), db]),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "d-with",
            topic: "d-with",
            about: "∂ and the Seely isomorphisms (⊤ and binary cases)",
            kinds: ALL,
            build: |g| {
                let (x0, x1) = (g.space(), g.space());
                let k = g.kind;
                let top = Space::top(k);
                let x = Space::with(&x0, &x1);
                Ok(vec![
                    equal(
                        "S seely0⁻¹ ∘ ∂_⊤ = ι0 ∘ seely0⁻¹ ∘ !0",
                        &top.s().bang(),
                        pr(Prim::Seely0Inv).s().after(&g.d(&top)),
                        seq([Expr::zero().bang(), pr(Prim::Seely0Inv), pr(Prim::Inj(0))]),
                    ),
                    equal(
                        "Smont ∘ (∂ ⊗ ∂) ∘ seely2⁻¹ ∘ !⟨S π0, S π1⟩ = S seely2⁻¹ ∘ ∂",
                        &x.s().bang(),
                        seq([
                            Expr::pairing(&proj(0).s(), &proj(1).s()).bang(),
                            pr(Prim::Seely2Inv),
                            tens(&g.d(&x0), &g.d(&x1)),
                            pr(Prim::Smont),
                        ]),
                        pr(Prim::Seely2Inv).s().after(&g.d(&x)),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "leibniz",
            topic: "leibniz",
            about: "Leibniz rule for weakening and contraction",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let d = g.d(&x);
                let src = x.s().bang();
                Ok(vec![
                    equal(
                        "S weak ∘ ∂ = ι0 ∘ weak",
                        &src,
                        pr(Prim::Weak).s().after(&d),
                        pr(Prim::Inj(0)).after(&pr(Prim::Weak)),
                    ),
                    equal(
                        "S contr ∘ ∂ = Smont ∘ (∂ ⊗ ∂) ∘ contr",
                        &src,
                        pr(Prim::Contr).s().after(&d),
                        seq([pr(Prim::Contr), tens(&d, &d), pr(Prim::Smont)]),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "d-schwarz",
            topic: "d-schwarz",
            about: "c ∘ S∂ ∘ ∂_S = S∂ ∘ ∂_S ∘ !c",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let (d, ds) = (g.d(&x), g.d(&x.s()));
                let second = d.s().after(&ds);
                Ok(vec![equal(
                    "c ∘ S∂ ∘ ∂_S = S∂ ∘ ∂_S ∘ !c",
                    &x.s_pow(2).bang(),
                    pr(Prim::Flip).after(&second),
                    second.after(&pr(Prim::Flip).bang()),
                )])
            },
        },
        DiagramSpec {
            name: "d-natural",
            topic: "d-natural",
            about: "S!f ∘ ∂_X = ∂_Y ∘ !S f",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let f = lit(&g.morphism(&x, &y)?);
                Ok(vec![equal(
                    "S!f ∘ ∂ = ∂ ∘ !S f",
                    &x.s().bang(),
                    f.bang().s().after(&g.d(&x)),
                    g.d(&y).after(&f.s().bang()),
                )])
            },
        },
        DiagramSpec {
            name: "dhat-functor",
            topic: "dhat",
            about: "D̂ is a functor on the Kleisli category and ι0, θ are natural for it",
            kinds: ALL,
            build: |g| {
                let (x, y, z) = (g.space(), g.space(), g.space());
                let f = lit(&g.kleisli(&x, &y)?);
                let h = lit(&g.kleisli(&y, &z)?);
                let k = g.kind;
                let dh = |e: &Expr, sp: &Space| Expr::dhat(e, k, Some(sp));
                let i0l = pr(Prim::Inj(0)).after(&pr(Prim::Der));
                let thl = pr(Prim::Theta).after(&pr(Prim::Der));
                let df = dh(&f, &x);
                Ok(vec![
                    equal("D̂ der = der", &x.s().bang(), dh(&pr(Prim::Der), &x), pr(Prim::Der)),
                    equal(
                        "D̂(h ∘̂ f) = D̂h ∘̂ D̂f",
                        &x.s().bang(),
                        dh(&Expr::kleisli(&h, &f), &x),
                        Expr::kleisli(&dh(&h, &y), &df),
                    ),
                    equal("D̂f ∘̂ ι0 = ι0 ∘̂ f", &x.bang(), Expr::kleisli(&df, &i0l), Expr::kleisli(&i0l, &f)),
                    equal(
                        "D̂f ∘̂ θ = θ ∘̂ D̂²f",
                        &x.s_pow(2).bang(),
                        Expr::kleisli(&df, &thl),
                        Expr::kleisli(&thl, &dh(&df, &x.s())),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "dbar-coalgebra",
            topic: "dbar-coalgebra",
            about: "∂̄ is a !-coalgebra",
            kinds: ALL,
            build: |g| {
                let i = s_iso_i(g.kind);
                let db = pr(Prim::Dbar);
                Ok(vec![
                    equal("der ∘ ∂̄ = id", &i, pr(Prim::Der).after(&db), id()),
                    equal("dig ∘ ∂̄ = !∂̄ ∘ ∂̄", &i, pr(Prim::Dig).after(&db), db.bang().after(&db)),
                ])
            },
        },
        DiagramSpec {
            name: "dbar-local",
            topic: "dbar-local",
            about: "∂̄ ∘ w0 = !w0 ∘ m0",
            kinds: ALL,
            build: |g| {
                let one = Space::one(g.kind);
                Ok(vec![equal(
                    "∂̄ ∘ w0 = !w0 ∘ m0",
                    &one,
                    pr(Prim::Dbar).after(&pr(Prim::Point(0))),
                    pr(Prim::Point(0)).bang().after(&pr(Prim::M0)),
                )])
            },
        },
        DiagramSpec {
            name: "dbar-lin",
            topic: "dbar-lin",
            about: "!π0 ∘ ∂̄ = m0 ∘ π0 and !Δ ∘ ∂̄ = m2 ∘ (∂̄ ⊗ ∂̄) ∘ Δ",
            kinds: ALL,
            build: |g| {
                let i = s_iso_i(g.kind);
                let db = pr(Prim::Dbar);
                Ok(vec![
                    equal("!π0 ∘ ∂̄ = m0 ∘ π0", &i, proj(0).bang().after(&db), pr(Prim::M0).after(&proj(0))),
                    equal(
                        "!Δ ∘ ∂̄ = m2 ∘ (∂̄ ⊗ ∂̄) ∘ Δ",
                        &i,
                        pr(Prim::Delta).bang().after(&db),
                        seq([pr(Prim::Delta), tens(&db, &db), pr(Prim::M2)]),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "dbar-lafont",
            topic: "dbar-lafont",
            about: "∂̄ is a comonoid morphism: der, weak, contr after ∂̄",
            kinds: ALL,
            build: |g| {
                let i = s_iso_i(g.kind);
                let db = pr(Prim::Dbar);
                Ok(vec![
                    equal("der ∘ ∂̄ = id", &i, pr(Prim::Der).after(&db), id()),
                    equal("weak ∘ ∂̄ = π0", &i, pr(Prim::Weak).after(&db), proj(0)),
                    equal(
                        "contr ∘ ∂̄ = (∂̄ ⊗ ∂̄) ∘ Δ",
                        &i,
                        pr(Prim::Contr).after(&db),
                        tens(&db, &db).after(&pr(Prim::Delta)),
                    ),
                ])
            },
        },
        DiagramSpec {
            name: "d-from-dbar",
            topic: "d-presentations",
            about: "closed-form ∂ equals the transpose of !ev ∘ m2 ∘ (id ⊗ ∂̄)",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                Ok(vec![equal(
                    "∂ = can⁻¹ ∘ Cur(!ev ∘ m2 ∘ (id ⊗ ∂̄)) ∘ !can",
                    &x.s().bang(),
                    g.d(&x),
                    crate::differential::dpartial_via_dbar_expr(),
                )])
            },
        },
        DiagramSpec {
            name: "sdiffst-mon-tens",
            topic: "sdiffst-mon-tens",
            about: "m2 ∘ (id ⊗ ∂̃) = ∂̃ ∘ (m2 ⊗ id) up to associativity",
            kinds: ALL,
            build: |g| {
                let (x0, x1) = (g.space(), g.space());
                let i = s_iso_i(g.kind);
                let dt = crate::differential::dtilde_expr();
                Ok(vec![equal(
                    "m2 ∘ (id ⊗ ∂̃) ∘ α = !α ∘ ∂̃ ∘ (m2 ⊗ id)",
                    &Space::tensor(&Space::tensor(&x0.bang(), &x1.bang()), &i),
                    seq([pr(Prim::AssocR), dt.id_tensor(), pr(Prim::M2)]),
                    seq([pr(Prim::M2).tensor_id(), dt.clone(), pr(Prim::AssocR).bang()]),
                )])
            },
        },
        DiagramSpec {
            name: "can-comonoid-into",
            topic: "can-comonoid-into",
            about: "(I, π0, Δ) is a cocommutative comonoid; Δ is determined on points",
            kinds: ALL,
            build: |g| {
                let k = g.kind;
                let i = s_iso_i(k);
                let one = Space::one(k);
                let dl = pr(Prim::Delta);
                let (w0, w1) = (pr(Prim::Point(0)), pr(Prim::Point(1)));
                let ri = pr(Prim::RUnitInv);
                Ok(vec![
                    equal("λ ∘ (π0 ⊗ id) ∘ Δ = id", &i, seq([dl.clone(), proj(0).tensor_id(), pr(Prim::LUnit)]), id()),
                    equal("ρ ∘ (id ⊗ π0) ∘ Δ = id", &i, seq([dl.clone(), proj(0).id_tensor(), pr(Prim::RUnit)]), id()),
                    equal(
                        "α ∘ (Δ ⊗ id) ∘ Δ = (id ⊗ Δ) ∘ Δ",
                        &i,
                        seq([dl.clone(), dl.tensor_id(), pr(Prim::AssocR)]),
                        dl.id_tensor().after(&dl),
                    ),
                    equal("γ ∘ Δ = Δ", &i, pr(Prim::Swap).after(&dl), dl.clone()),
                    equal("Δ ∘ w0 = (w0 ⊗ w0) ∘ ρ⁻¹", &one, dl.after(&w0), tens(&w0, &w0).after(&ri)),
                    equal(
                        "Δ ∘ w1 = (w0 ⊗ w1) ∘ ρ⁻¹ + (w1 ⊗ w0) ∘ ρ⁻¹",
                        &one,
                        dl.after(&w1),
                        Expr::sum(&tens(&w0, &w1).after(&ri), &tens(&w1, &w0).after(&ri)),
                    ),
                    summable("w0, w1 summable", &one, &i, w0.clone(), w1.clone()),
                ])
            },
        },
        DiagramSpec {
            name: "canonical-iso",
            topic: "canonical-iso",
            about: "S X ≅ (I ⊸ X) transports π_i to evaluation at w_i; w0, w1 jointly epic",
            kinds: ALL,
            build: |g| {
                let x = g.space();
                let k = g.kind;
                let i = s_iso_i(k);
                let ix = Space::limpl(&i, &x);
                let f = lit(&g.morphism(&i, &x)?);
                let (can, cani) = (pr(Prim::CanIso), pr(Prim::CanIsoInv));
                let mut claims = vec![
                    equal("can⁻¹ ∘ can = id", &x.s(), cani.after(&can), id()),
                    equal("can ∘ can⁻¹ = id", &ix, can.after(&cani), id()),
                    morphism("can is a morphism", &x.s(), &ix, can.clone()),
                    morphism("can⁻¹ is a morphism", &ix, &x.s(), cani.clone()),
                    equal(
                        "f = f w0 π0 + f w1 π1",
                        &i,
                        f.clone(),
                        Expr::sum(
                            &seq([proj(0), pr(Prim::Point(0)), f.clone()]),
                            &seq([proj(1), pr(Prim::Point(1)), f.clone()]),
                        ),
                    ),
                ];
                for j in 0..2u8 {
                    claims.push(equal(
                        &format!("π{j} = ev ∘ (can ⊗ w{j}) ∘ ρ⁻¹"),
                        &x.s(),
                        proj(j),
                        seq([pr(Prim::RUnitInv), tens(&can, &pr(Prim::Point(j))), pr(Prim::Ev(0))]),
                    ));
                }
                Ok(claims)
            },
        },
        DiagramSpec {
            name: "s-fun-iso",
            topic: "s-fun-iso",
            about: "S(X ⊸ Y) → (X ⊸ S Y) is an iso and equals Cur(S ev ∘ str')",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space(), g.space());
                let sl = Space::limpl(&x, &y).s();
                let ls = Space::limpl(&x, &y.s());
                let xs = x.enumerate(g.budget)?;
                let (sf, sfi) = (pr(Prim::SFun), pr(Prim::SFunInv));
                Ok(vec![
                    equal(
                        "sfun = Cur(S ev ∘ str')",
                        &sl,
                        sf.clone(),
                        Expr::curry(&pr(Prim::Ev(0)).s().after(&pr(Prim::StrL)), xs),
                    ),
                    equal("sfun⁻¹ ∘ sfun = id", &sl, sfi.after(&sf), id()),
                    equal("sfun ∘ sfun⁻¹ = id", &ls, sf.after(&sfi), id()),
                    morphism("sfun is a morphism", &sl, &ls, sf),
                    morphism("sfun⁻¹ is a morphism", &ls, &sl, sfi),
                ])
            },
        },
        DiagramSpec {
            name: "structural-morphisms",
            topic: "morphisms",
            about: "every closed-form structural map is a morphism of the model",
            kinds: ALL,
            build: |g| {
                let (x, y) = (g.space_upto(3), g.space_upto(3));
                let k = g.kind;
                let one = Space::one(k);
                let i = s_iso_i(k);
                let t = |a: &Space, b: &Space| Space::tensor(a, b);
                let (bx, by) = (x.bang(), y.bang());
                Ok(vec![
                    morphism("der", &bx, &x, pr(Prim::Der)),
                    morphism("dig", &bx, &bx.bang(), pr(Prim::Dig)),
                    morphism("weak", &bx, &one, pr(Prim::Weak)),
                    morphism("contr", &bx, &t(&bx, &bx), pr(Prim::Contr)),
                    morphism("seely2", &t(&bx, &by), &Space::with(&x, &y).bang(), pr(Prim::Seely2)),
                    morphism("seely2⁻¹", &Space::with(&x, &y).bang(), &t(&bx, &by), pr(Prim::Seely2Inv)),
                    morphism("m0", &one, &one.bang(), pr(Prim::M0)),
                    morphism("m2", &t(&bx, &by), &t(&x, &y).bang(), pr(Prim::M2)),
                    morphism("π0", &x.s(), &x, proj(0)),
                    morphism("π1", &x.s(), &x, proj(1)),
                    morphism("σ", &x.s(), &x, pr(Prim::Sigma)),
                    morphism("ι0", &x, &x.s(), pr(Prim::Inj(0))),
                    morphism("ι1", &x, &x.s(), pr(Prim::Inj(1))),
                    morphism("c", &x.s_pow(2), &x.s_pow(2), pr(Prim::Flip)),
                    morphism("θ", &x.s_pow(2), &x.s(), pr(Prim::Theta)),
                    morphism("str", &t(&x, &y.s()), &t(&x, &y).s(), pr(Prim::Str)),
                    morphism("str'", &t(&x.s(), &y), &t(&x, &y).s(), pr(Prim::StrL)),
                    morphism("Smont", &t(&x.s(), &y.s()), &t(&x, &y).s(), pr(Prim::Smont)),
                    morphism("∂", &x.s().bang(), &bx.s(), g.d(&x)),
                    morphism("∂̄", &i, &i.bang(), pr(Prim::Dbar)),
                    morphism("Δ", &i, &t(&i, &i), pr(Prim::Delta)),
                    morphism("∂̃", &t(&bx, &i), &t(&x, &i).bang(), crate::differential::dtilde_expr()),
                ])
            },
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_space_is_deterministic() {
        let p = GenParams { web_size: 4, kind: Kind::Nucs };
        assert_eq!(gen_space(7, p).to_string(), gen_space(7, p).to_string());
        let a = gen_space(7, p);
        let b = gen_space(7, p);
        let web = a.enumerate(Budget::degree(0)).unwrap();
        for x in &web {
            for y in &web {
                assert_eq!(a.coherent(x, y).unwrap(), b.coherent(x, y).unwrap());
            }
        }
    }

    #[test]
    fn size_one_is_one() {
        let e = gen_space(3, GenParams { web_size: 1, kind: Kind::Coh });
        let web = e.enumerate(Budget::degree(0)).unwrap();
        assert_eq!(web.len(), 1);
        assert_eq!(e.coherent(&web[0], &web[0]).unwrap(), crate::Verdict::Neutral);
    }

    #[test]
    fn registry_names_are_unique() {
        let reg = registry();
        let names: BTreeSet<&str> = reg.iter().map(|s| s.name).collect();
        assert_eq!(names.len(), reg.len());
    }

    #[test]
    fn generated_pairs_are_summable() {
        for kind in Kind::ALL {
            for seed in 0..20 {
                let mut g = Gen::new(seed, kind, 3, Budget::default());
                let (x, y) = (g.space(), g.space());
                let (f0, f1) = g.summable_pair(&x, &y).unwrap();
                assert!(witness(&f0, &f1, &x, &y).is_ok());
            }
        }
    }

    #[test]
    fn registry_covers_required_topics() {
        let topics: BTreeSet<&str> = registry().iter().map(|s| s.topic).collect();
        for t in REQUIRED_TOPICS {
            assert!(topics.contains(t), "no diagram for {t}");
        }
    }

    #[test]
    fn corrupted_partial_breaks_the_chain_rule() {
        let x = Space::flat("E", Kind::Coh, vec![Atom::base("a")]);
        let budget = Budget::default();
        let mut d = crate::differential::dpartial(&x, budget).unwrap();
        let victim = d.pairs().iter().find(|(a, _)| a.degree() == 1).unwrap().clone();
        d.remove(&victim.0, &victim.1);
        let claim = equal("S der ∘ ∂ = der", &x.s().bang(), pr(Prim::Der).s().after(&lit(&d)), pr(Prim::Der));
        let fail = check_claim(&claim, budget).unwrap().expect("mutant must be caught");
        assert!(fail.input.is_some());
    }

    #[test]
    fn one_diagram_runs_deterministically() {
        let spec = registry().into_iter().find(|s| s.name == "d-chain").unwrap();
        let cfg = RunConfig { trials: 10, ..RunConfig::default() };
        let a = run_diagram(&spec, Kind::Coh, cfg);
        assert!(a.passed(), "{}", a.line());
        assert_eq!(a, run_diagram(&spec, Kind::Coh, cfg));
    }
}
