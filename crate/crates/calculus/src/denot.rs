//! Truncated relational semantics of the calculus, used as an oracle for
//! reduction.
//!
//! A type is interpreted as a web: `ι_d` is `S^d N_B`, the `d`-fold
//! summability construction over the flat web of the naturals `0..=B`
//! (atoms are naturals wrapped in `d` tags, outermost layer first) and
//! `A ⇒ B` is `!⟦A⟧ ⊸ ⟦B⟧`. A term `x1:A1,…,xn:An ⊢ M : A` denotes a
//! Kleisli morphism, stored as a set of pairs (one multiset per context
//! variable, output atom).
//!
//! Webs are infinite, so everything is truncated by nested degree: an
//! element's degree is the sum of the degrees of its context multisets and
//! its output atom. Most clauses preserve degree exactly; application and
//! fixpoints need inputs of higher degree than their outputs, so terms are
//! evaluated with some *slack* above the degree that is finally compared.
//! Truncated denotations only ever under-approximate, hence a mismatch is
//! re-examined at a larger slack before it is reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use cohdiff::{Atom, Budget, Kind, Multiset, Space};

use crate::error::{CalcError, Result};
use crate::reduce::{Reducer, Rule};
use crate::syntax::{Constant, Context, Term, Ty};
use crate::typing::typecheck;

/// Parameters of the truncated semantics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemEnv {
    /// Largest natural number in the web of `ι`.
    pub max_nat: u64,
    /// Degree at which denotations are compared and printed.
    pub degree: u32,
    /// Extra degree used while evaluating.
    pub slack: u32,
    /// Largest slack tried before a mismatch counts as a violation.
    pub max_slack: u32,
    /// Cap on the size of any intermediate relation.
    pub max_elems: usize,
    /// Model kind used for coherence checks.
    pub kind: Kind,
}

impl Default for SemEnv {
    fn default() -> SemEnv {
        SemEnv { max_nat: 3, degree: 3, slack: 2, max_slack: 4, max_elems: 200_000, kind: Kind::Rel }
    }
}

impl SemEnv {
    /// The default environment with another comparison degree.
    pub fn with_degree(degree: u32) -> SemEnv {
        SemEnv { degree, ..SemEnv::default() }
    }

    fn nat(&self, n: u64) -> Atom {
        Atom::base(&n.to_string())
    }

    fn nats(&self) -> Vec<Atom> {
        (0..=self.max_nat).map(|n| self.nat(n)).collect()
    }

    fn read_nat(a: &Atom) -> Option<u64> {
        a.as_base()?.parse().ok()
    }
}

/// The web interpreting `ty`.
pub fn interp_type(ty: &Ty, env: &SemEnv) -> Space {
    match ty {
        Ty::Nat(d) => Space::flat("N", env.kind, env.nats()).s_pow(*d as usize),
        Ty::Arrow(a, b) => Space::limpl(&interp_type(a, env).bang(), &interp_type(b, env)),
    }
}

/// One element of a denotation: a multiset per context variable and an
/// output atom.
pub type Elem = (Vec<Multiset>, Atom);

/// The (truncated) denotation of a term in context.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SemRel {
    /// Number of context variables.
    pub arity: usize,
    /// The elements.
    pub elems: BTreeSet<Elem>,
}

/// The degree of an element.
pub fn elem_degree((ctx, b): &Elem) -> u32 {
    ctx.iter().map(Multiset::nested_degree).sum::<u32>() + b.degree()
}

impl SemRel {
    fn new(arity: usize) -> SemRel {
        SemRel { arity, elems: BTreeSet::new() }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Whether the denotation is empty.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The elements of degree at most `degree`.
    pub fn restrict(&self, degree: u32) -> SemRel {
        SemRel { arity: self.arity, elems: self.elems.iter().filter(|e| elem_degree(e) <= degree).cloned().collect() }
    }

    /// The output atoms (the whole denotation, for a closed term).
    pub fn outputs(&self) -> BTreeSet<Atom> {
        self.elems.iter().map(|(_, b)| b.clone()).collect()
    }

    /// The curried form: the elements of `λx1…λxn. M` as atoms of
    /// `A1 ⇒ … ⇒ An ⇒ A`.
    pub fn curried(&self) -> BTreeSet<Atom> {
        self.elems
            .iter()
            .map(|(ctx, b)| ctx.iter().rev().fold(b.clone(), |acc, m| Atom::pair(Atom::mset(m.clone()), acc)))
            .collect()
    }

    /// The first element of the symmetric difference with `other`, with
    /// the side that has it.
    pub fn first_difference(&self, other: &SemRel) -> Option<(Elem, bool)> {
        let l = self.elems.difference(&other.elems).next().map(|e| (e.clone(), true));
        let r = other.elems.difference(&self.elems).next().map(|e| (e.clone(), false));
        match (l, r) {
            (Some(a), Some(b)) => Some(if elem_degree(&a.0) <= elem_degree(&b.0) { a } else { b }),
            (a, b) => a.or(b),
        }
    }

    fn insert(&mut self, e: Elem, env: &SemEnv) -> Result<()> {
        self.elems.insert(e);
        if self.elems.len() > env.max_elems {
            return Err(budget("denotation", env.max_elems));
        }
        Ok(())
    }
}

/// Formats an element as `[γ1] … [γn] ⊢ β`.
pub fn show_elem((ctx, b): &Elem) -> String {
    let mut s = String::new();
    for m in ctx {
        s.push_str(&format!("{m} "));
    }
    if !ctx.is_empty() {
        s.push_str("⊢ ");
    }
    s.push_str(&b.to_string());
    s
}

impl fmt::Display for SemRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elems {
            writeln!(f, "{}", show_elem(e))?;
        }
        Ok(())
    }
}

fn budget(what: &str, limit: usize) -> CalcError {
    CalcError::Semantics(cohdiff::Error::BudgetExceeded { what: what.to_string(), limit })
}

// ---------------------------------------------------------------------------
// Layer manipulation on ground atoms (reached through the arrow spine).

fn on_ground(a: &Atom, f: &dyn Fn(&Atom) -> Option<Atom>) -> Option<Atom> {
    match a.as_pair() {
        Some((m, b)) => Some(Atom::pair(m.clone(), on_ground(b, f)?)),
        None => f(a),
    }
}

fn insert_tag(g: &Atom, layer: u32, i: u8) -> Atom {
    if layer == 0 {
        return Atom::tag(i, g.clone());
    }
    let (t, inner) = g.as_tag().expect("ground atom has enough layers");
    Atom::tag(t, insert_tag(inner, layer - 1, i))
}

fn take_tag(g: &Atom, layer: u32) -> Option<(u8, Atom)> {
    let (t, inner) = g.as_tag()?;
    if layer == 0 {
        return Some((t, inner.clone()));
    }
    let (u, rest) = take_tag(inner, layer - 1)?;
    Some((u, Atom::tag(t, rest)))
}

fn proj_atom(a: &Atom, i: u8, d: u32) -> Option<Atom> {
    on_ground(a, &|g| take_tag(g, d).filter(|(t, _)| *t == i).map(|(_, r)| r))
}

fn inj_atom(a: &Atom, i: u8, d: u32) -> Atom {
    on_ground(a, &|g| Some(insert_tag(g, d, i))).expect("insertion is total")
}

fn sum_atom(a: &Atom, d: u32) -> Option<Atom> {
    on_ground(a, &|g| {
        let (i, r) = take_tag(g, d)?;
        let (j, r) = take_tag(&r, d)?;
        (i + j <= 1).then(|| insert_tag(&r, d, i + j))
    })
}

fn flip_atom(a: &Atom, d: u32) -> Option<Atom> {
    on_ground(a, &|g| {
        let (i, r) = take_tag(g, d)?;
        let (j, r) = take_tag(&r, d)?;
        Some(insert_tag(&insert_tag(&r, d, i), d, j))
    })
}

fn tag0(a: &Atom, i: u8) -> Atom {
    inj_atom(a, i, 0)
}

/// All tag prefixes of length `d`, applied to `g`.
fn prefixed(g: &Atom, d: u32) -> Vec<Atom> {
    let mut out = vec![g.clone()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|a| [Atom::tag(0, a.clone()), Atom::tag(1, a)]).collect();
    }
    out
}

/// Splits a ground atom into its `d` tags and the natural underneath.
fn strip(g: &Atom, d: u32) -> Option<(Vec<u8>, u64)> {
    let mut tags = Vec::new();
    let mut cur = g.clone();
    for _ in 0..d {
        let (t, inner) = cur.as_tag()?;
        tags.push(t);
        cur = inner.clone();
    }
    Some((tags, SemEnv::read_nat(&cur)?))
}

fn wrap(tags: &[u8], a: Atom) -> Atom {
    tags.iter().rev().fold(a, |acc, t| Atom::tag(*t, acc))
}

// ---------------------------------------------------------------------------
// Interpretation.

struct Interp<'a> {
    env: &'a SemEnv,
    cap: u32,
}

impl Interp<'_> {
    fn web(&self, ty: &Ty, max_degree: u32) -> Result<Vec<Atom>> {
        let space = interp_type(ty, &SemEnv { kind: Kind::Rel, ..self.env.clone() });
        Ok(space.enumerate(Budget { max_degree, max_atoms: self.env.max_elems })?)
    }

    fn closed(&self, ctx: &Context, atoms: impl IntoIterator<Item = Atom>) -> Result<SemRel> {
        let mut r = SemRel::new(ctx.len());
        for b in atoms {
            if b.degree() <= self.cap {
                r.insert((vec![Multiset::empty(); ctx.len()], b), self.env)?;
            }
        }
        Ok(r)
    }

    fn map(&self, r: SemRel, f: impl Fn(&Atom) -> Option<Atom>) -> SemRel {
        SemRel { arity: r.arity, elems: r.elems.into_iter().filter_map(|(c, b)| f(&b).map(|b| (c, b))).collect() }
    }

    fn term(&self, ctx: &Context, m: &Term) -> Result<SemRel> {
        let n = ctx.len();
        match m {
            Term::Var(x) => {
                let k = ctx
                    .iter()
                    .rposition(|(y, _)| y == x)
                    .ok_or_else(|| CalcError::Type { rule: "var", msg: format!("unbound variable `{x}`") })?;
                let mut r = SemRel::new(n);
                if self.cap >= 1 {
                    for a in self.web(&ctx[k].1, (self.cap - 1) / 2)? {
                        let mut c = vec![Multiset::empty(); n];
                        c[k] = Multiset::singleton(a.clone());
                        let e = (c, a);
                        if elem_degree(&e) <= self.cap {
                            r.insert(e, self.env)?;
                        }
                    }
                }
                Ok(r)
            }
            Term::Abs(x, a, body) => {
                let mut inner = ctx.clone();
                inner.push((x.clone(), (*a).clone()));
                let r = self.term(&inner, body)?;
                let mut out = SemRel::new(n);
                for (mut c, b) in r.elems {
                    let mx = c.pop().expect("extended context");
                    out.insert((c, Atom::pair(Atom::mset(mx), b)), self.env)?;
                }
                Ok(out)
            }
            Term::App(f, a) => {
                let rf = self.term(ctx, f)?;
                let ra = self.term(ctx, a)?;
                self.apply(&rf, &ra)
            }
            Term::D(f) => {
                let r = self.term(ctx, f)?;
                let mut out = SemRel::new(n);
                for (c, fa) in r.elems {
                    let (m, b) = fa.as_pair().expect("function atom");
                    let m = m.as_mset().expect("multiset");
                    let m0 = m.map(|a| tag0(a, 0));
                    out.insert((c.clone(), Atom::pair(Atom::mset(m0), tag0(b, 0))), self.env)?;
                    for a in m.support() {
                        let rest = m.remove_one(a).expect("a in support").map(|x| tag0(x, 0));
                        let mm = rest.add(tag0(a, 1));
                        out.insert((c.clone(), Atom::pair(Atom::mset(mm), tag0(b, 1))), self.env)?;
                    }
                }
                Ok(out)
            }
            Term::Proj(i, d, t) => Ok(self.map(self.term(ctx, t)?, |a| proj_atom(a, *i, *d))),
            Term::Inj(i, d, t) => Ok(self.map(self.term(ctx, t)?, |a| Some(inj_atom(a, *i, *d)))),
            Term::Sum(d, t) => Ok(self.map(self.term(ctx, t)?, |a| sum_atom(a, *d))),
            Term::Flip(d, t) => Ok(self.map(self.term(ctx, t)?, |a| flip_atom(a, *d))),
            Term::Zero => Ok(SemRel::new(n)),
            Term::Plus(p, q) => {
                let mut r = self.term(ctx, p)?;
                for e in self.term(ctx, q)?.elems {
                    r.insert(e, self.env)?;
                }
                Ok(r)
            }
            Term::Num(v) => {
                if *v > self.env.max_nat {
                    return Err(budget(&format!("numeral #{v}"), self.env.max_nat as usize));
                }
                self.closed(ctx, [self.env.nat(*v)])
            }
            Term::Const(c, d) => self.closed(ctx, self.constant(*c, *d)),
            Term::Fix(_, f) => {
                let rf = self.term(ctx, f)?;
                let mut x = SemRel::new(n);
                loop {
                    let next = self.apply(&rf, &x)?;
                    if next == x {
                        return Ok(x);
                    }
                    x = next;
                }
            }
        }
    }

    fn constant(&self, c: Constant, d: u32) -> Vec<Atom> {
        let env = self.env;
        let mut out = Vec::new();
        let fun = |a: Atom, b: Atom| Atom::pair(Atom::mset(Multiset::singleton(a)), b);
        for n in 0..=env.max_nat {
            for g in prefixed(&env.nat(n), d) {
                let (tags, _) = strip(&g, d).expect("prefixed numeral");
                match c {
                    Constant::Succ if n < env.max_nat => out.push(fun(g.clone(), wrap(&tags, env.nat(n + 1)))),
                    Constant::Succ => {}
                    Constant::Pred => out.push(fun(g.clone(), wrap(&tags, env.nat(n.saturating_sub(1))))),
                    Constant::If0 => {
                        for a in env.nats() {
                            let res = wrap(&tags, a.clone());
                            let none = Atom::mset(Multiset::empty());
                            let one = Atom::mset(Multiset::singleton(a));
                            let branches = if n == 0 {
                                Atom::pair(one, Atom::pair(none, res))
                            } else {
                                Atom::pair(none, Atom::pair(one, res))
                            };
                            out.push(fun(g.clone(), branches));
                        }
                    }
                }
            }
        }
        out
    }

    /// Kleisli application: `{(γ0 + Σγj, β) | (γ0, ([a1…ak], β)) ∈ f, (γj, aj) ∈ a}`.
    fn apply(&self, f: &SemRel, a: &SemRel) -> Result<SemRel> {
        let mut by_out: BTreeMap<&Atom, Vec<&Elem>> = BTreeMap::new();
        for e in &a.elems {
            by_out.entry(&e.1).or_default().push(e);
        }
        let mut out = SemRel::new(f.arity);
        for (c0, fa) in &f.elems {
            let (m, b) = fa.as_pair().expect("function atom");
            let m = m.as_mset().expect("multiset");
            let base = c0.iter().map(Multiset::nested_degree).sum::<u32>() + b.degree();
            if base > self.cap {
                continue;
            }
            let mut slots: Vec<&[&Elem]> = Vec::new();
            let mut counts = Vec::new();
            let mut dead = false;
            for (x, k) in m.entries() {
                match by_out.get(x) {
                    Some(v) => {
                        slots.push(v);
                        counts.push(*k);
                    }
                    None => dead = true,
                }
            }
            if dead {
                continue;
            }
            let mut acc = c0.clone();
            self.choose(&slots, &counts, 0, 0, &mut acc, base, b, &mut out)?;
        }
        Ok(out)
    }

    /// Chooses, for slot `s`, a multiset of `counts[s]` elements (indices
    /// non-decreasing from `from`) and recurses.
    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        slots: &[&[&Elem]],
        counts: &[u32],
        s: usize,
        from: usize,
        acc: &mut Vec<Multiset>,
        deg: u32,
        b: &Atom,
        out: &mut SemRel,
    ) -> Result<()> {
        if s == slots.len() {
            return out.insert((acc.clone(), b.clone()), self.env);
        }
        if counts[s] == 0 {
            return self.choose(slots, counts, s + 1, 0, acc, deg, b, out);
        }
        for (idx, e) in slots[s].iter().enumerate().skip(from) {
            let add = e.0.iter().map(Multiset::nested_degree).sum::<u32>();
            if deg + add > self.cap {
                continue;
            }
            let saved = acc.clone();
            for (g, h) in acc.iter_mut().zip(&e.0) {
                *g = g.sum(h);
            }
            let mut counts2 = counts.to_vec();
            counts2[s] -= 1;
            let next_from = if counts2[s] == 0 { 0 } else { idx };
            let next_s = if counts2[s] == 0 { s + 1 } else { s };
            self.choose(slots, &counts2, next_s, next_from, acc, deg + add, b, out)?;
            *acc = saved;
        }
        Ok(())
    }
}

/// The denotation of `ctx ⊢ m`, evaluated with the environment's slack and
/// restricted to its comparison degree.
pub fn interp_term(ctx: &Context, m: &Term, env: &SemEnv) -> Result<SemRel> {
    interp_with_slack(ctx, m, env, env.slack)
}

/// The denotation evaluated at `env.degree + slack`, restricted to
/// `env.degree`.
pub fn interp_with_slack(ctx: &Context, m: &Term, env: &SemEnv, slack: u32) -> Result<SemRel> {
    typecheck(ctx, m)?;
    interp_unchecked(ctx, m, env, slack)
}

/// The denotation of a term that is not type-checked first. Reducts are
/// interpreted this way: the clauses only need the binder annotations.
fn interp_unchecked(ctx: &Context, m: &Term, env: &SemEnv, slack: u32) -> Result<SemRel> {
    let it = Interp { env, cap: env.degree + slack };
    Ok(it.term(ctx, m)?.restrict(env.degree))
}

/// Whether a denotation is a clique of the curried type in the
/// environment's model kind.
pub fn is_coherent(ctx: &Context, ty: &Ty, r: &SemRel, env: &SemEnv) -> bool {
    let full = ctx.iter().rev().fold(ty.clone(), |acc, (_, a)| Ty::arrow(a.clone(), acc));
    let space = interp_type(&full, env);
    let atoms = r.curried();
    space.is_clique(atoms.iter())
}

/// A reduction step whose two sides have different denotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the step in the trace (0-based).
    pub step: usize,
    /// The rule that fired.
    pub rule: Rule,
    /// The term before the step.
    pub before: Term,
    /// The term after the step.
    pub after: Term,
    /// The first differing element and which side has it.
    pub detail: String,
}

/// Outcome of checking a reduction sequence against the semantics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoundnessReport {
    /// Steps performed.
    pub steps: usize,
    /// Steps whose sides were compared.
    pub checked: usize,
    /// Whether a normal form was reached within the fuel.
    pub normalized: bool,
    /// Steps not compared because a side exceeded the semantic budget
    /// (typically a numeral above the bound).
    pub skipped: usize,
    /// How often each rule was checked.
    pub rule_counts: BTreeMap<Rule, usize>,
    /// Steps that changed the denotation.
    pub violations: Vec<Violation>,
}

impl SoundnessReport {
    /// Whether no violation was found.
    pub fn sound(&self) -> bool {
        self.violations.is_empty()
    }

    /// Adds another report into this one.
    pub fn absorb(&mut self, other: SoundnessReport) {
        self.steps += other.steps;
        self.checked += other.checked;
        self.skipped += other.skipped;
        for (r, k) in other.rule_counts {
            *self.rule_counts.entry(r).or_default() += k;
        }
        self.violations.extend(other.violations);
    }
}

fn is_budget(e: &CalcError) -> bool {
    matches!(e, CalcError::Semantics(cohdiff::Error::BudgetExceeded { .. }))
}

/// Compares the denotations of the two sides of a rewrite, escalating the
/// slack on mismatch. `Ok(None)`: equal; `Ok(Some(d))`: they differ, `d`
/// describes the first differing element; `Err`: out of budget.
pub fn check_step(ctx: &Context, a: &Term, b: &Term, env: &SemEnv) -> Result<Option<String>> {
    let mut slack = env.slack;
    loop {
        let ra = interp_unchecked(ctx, a, env, slack)?;
        let rb = interp_unchecked(ctx, b, env, slack)?;
        match ra.first_difference(&rb) {
            None => return Ok(None),
            Some((e, left)) if slack >= env.max_slack => {
                let side = if left { "only before" } else { "only after" };
                return Ok(Some(format!("{side}: {}", show_elem(&e))));
            }
            Some(_) => slack = (slack + 2).min(env.max_slack),
        }
    }
}

/// Reduces `m` (at most `fuel` steps) and checks that every step preserves
/// the truncated denotation.
pub fn soundness_check(
    reducer: &Reducer,
    ctx: &Context,
    m: &Term,
    env: &SemEnv,
    fuel: usize,
) -> Result<SoundnessReport> {
    typecheck(ctx, m)?;
    let mut report = SoundnessReport::default();
    let mut cur = m.clone();
    for step in 0..fuel {
        let Some((next, rule)) = reducer.step(&cur) else {
            report.normalized = true;
            return Ok(report);
        };
        report.steps += 1;
        match check_step(ctx, &cur, &next, env) {
            Ok(None) => {
                report.checked += 1;
                *report.rule_counts.entry(rule).or_default() += 1;
            }
            Ok(Some(detail)) => {
                report.checked += 1;
                *report.rule_counts.entry(rule).or_default() += 1;
                report.violations.push(Violation { step, rule, before: cur.clone(), after: next.clone(), detail });
            }
            Err(e) if is_budget(&e) => report.skipped += 1,
            Err(e) => return Err(e),
        }
        cur = next;
    }
    report.normalized = reducer.step(&cur).is_none();
    Ok(report)
}

/// Runs the soundness check over a corpus of judgments and returns the
/// combined report together with a reducer in which every rule that
/// produced a violation is disabled.
pub fn validate_rules(
    reducer: &Reducer,
    corpus: &[(Context, Term)],
    env: &SemEnv,
    fuel: usize,
) -> Result<(SoundnessReport, Reducer)> {
    let mut total = SoundnessReport::default();
    for (ctx, m) in corpus {
        total.absorb(soundness_check(reducer, ctx, m, env, fuel)?);
    }
    let mut fixed = reducer.clone();
    for v in &total.violations {
        fixed = fixed.without(v.rule);
    }
    Ok((total, fixed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, parse_judgment};

    fn sem(s: &str) -> SemRel {
        let (ctx, m) = parse_judgment(s).unwrap();
        interp_term(&ctx, &m, &SemEnv::default()).unwrap()
    }

    fn n(k: u64) -> Atom {
        Atom::base(&k.to_string())
    }

    fn lin(a: Atom, b: Atom) -> Atom {
        Atom::pair(Atom::mset(Multiset::singleton(a)), b)
    }

    #[test]
    fn ground_webs() {
        let env = SemEnv::default();
        let w = interp_type(&Ty::Nat(1), &env).enumerate(Budget::degree(0)).unwrap();
        assert_eq!(w.len(), 8);
        assert!(w.contains(&Atom::tag(1, n(2))));
        let a = interp_type(&Ty::arrow(Ty::nat(), Ty::Nat(1)), &env);
        let b = interp_type(&Ty::arrow(Ty::nat(), Ty::nat()).diff(), &env);
        assert_eq!(a.enumerate(Budget::degree(2)).unwrap(), b.enumerate(Budget::degree(2)).unwrap());
    }

    #[test]
    fn identity_is_the_trace_of_the_identity() {
        let r = sem("|- \\x:i. x");
        let expect: BTreeSet<Atom> = (0..=3).map(|k| lin(n(k), n(k))).collect();
        assert_eq!(r.outputs(), expect);
    }

    #[test]
    fn derivative_of_identity_is_the_identity_on_i1() {
        let r = sem("|- D (\\x:i. x)");
        let expect: BTreeSet<Atom> =
            (0..=3).flat_map(|k| [0, 1].map(|t| lin(Atom::tag(t, n(k)), Atom::tag(t, n(k))))).collect();
        assert_eq!(r.outputs(), expect);
    }

    #[test]
    fn numerals_and_constants() {
        assert_eq!(sem("|- succ #2").outputs(), BTreeSet::from([n(3)]));
        assert_eq!(sem("|- if0 #0 #1 #2").outputs(), BTreeSet::from([n(1)]));
        assert_eq!(sem("|- if0 #3 #1 #2").outputs(), BTreeSet::from([n(2)]));
        assert_eq!(sem("|- sigma^0 (iota1^0 (iota0^0 #2))").outputs(), BTreeSet::from([Atom::tag(1, n(2))]));
        assert_eq!(sem("|- pi1^0 (iota0^0 #2)").outputs(), BTreeSet::new());
    }

    #[test]
    fn fixpoint_countdown() {
        let r = sem("|- fix (\\f:i -> i. \\n:i. if0 n #0 (f (pred n))) #1");
        assert_eq!(r.outputs(), BTreeSet::from([n(0)]));
        // From #2 the recursion uses its argument three times, so the
        // functional needs elements of degree 6.
        let m = parse("fix (\\f:i -> i. \\n:i. if0 n #0 (f (pred n))) #2").unwrap();
        let shallow = interp_with_slack(&vec![], &m, &SemEnv::default(), 2).unwrap();
        assert!(shallow.is_empty());
        let deep = interp_with_slack(&vec![], &m, &SemEnv::default(), 4).unwrap();
        assert_eq!(deep.outputs(), BTreeSet::from([n(0)]));
    }

    #[test]
    fn open_terms_keep_their_context() {
        let r = sem("x : i, y : i1 |- pi0^0 y");
        assert!(r.elems.contains(&(vec![Multiset::empty(), Multiset::singleton(Atom::tag(0, n(1)))], n(1))));
        assert!(r.elems.iter().all(|(c, _)| c[0].is_empty()));
    }

    #[test]
    fn theta_decomposition() {
        let env = SemEnv::default();
        let (ctx, l) = parse_judgment("y : i2 |- pi1^0 (sigma^0 y)").unwrap();
        let r = parse("pi1^0 (pi0^0 y) + pi0^0 (pi1^0 y)").unwrap();
        assert_eq!(interp_term(&ctx, &l, &env).unwrap(), interp_term(&ctx, &r, &env).unwrap());
    }

    #[test]
    fn wrong_rewrites_are_caught() {
        let env = SemEnv::default();
        let wrong = [
            ("y : i1 |- sigma^0 (iota1^0 y)", "iota1^0 (pi1^0 y)"),
            ("y : i2 |- pi1^0 (sigma^0 y)", "pi1^0 (pi0^0 y)"),
            ("y : i2 |- pi0^0 (c^0 y)", "pi0^0 y"),
            ("y : i1 |- pi0^1 (iota1^0 y)", "iota1^0 (pi1^0 y)"),
            ("|- D (\\x:i. succ x)", "\\x:i1. iota0^0 (succ (pi0^0 x))"),
        ];
        for (l, r) in wrong {
            let (ctx, a) = parse_judgment(l).unwrap();
            let b = parse(r).unwrap();
            assert!(check_step(&ctx, &a, &b, &env).unwrap().is_some(), "{l} ~> {r} not caught");
        }
    }

    #[test]
    fn big_numerals_are_a_budget_matter() {
        let err = interp_term(&vec![], &parse("#9").unwrap(), &SemEnv::default()).unwrap_err();
        assert!(is_budget(&err));
    }

    #[test]
    fn closed_ground_terms_are_deterministic_in_nucs() {
        let env = SemEnv { kind: Kind::Nucs, ..SemEnv::default() };
        for s in ["succ #1", "(\\x:i. pred x) #2", "if0 #0 #3 #1"] {
            let m = parse(s).unwrap();
            let r = interp_term(&vec![], &m, &env).unwrap();
            assert!(r.len() <= 1, "{s}");
            assert!(is_coherent(&vec![], &Ty::nat(), &r, &env));
        }
    }

    #[test]
    fn beta_steps_are_sound() {
        let env = SemEnv::default();
        for s in [
            "(\\x:i. succ x) #1",
            "D (\\x:i. succ x) (iota1^0 #2)",
            "pi1^0 (D (\\x:i. x) (iota1^0 #1))",
            "(\\f:i -> i. f (f #0)) (\\x:i. succ x)",
        ] {
            let m = parse(s).unwrap();
            let rep = soundness_check(&Reducer::default(), &vec![], &m, &env, 200).unwrap();
            assert!(rep.sound(), "{s}: {:?}", rep.violations);
            assert!(rep.normalized);
        }
    }
}
