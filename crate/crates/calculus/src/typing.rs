//! Bidirectional type checking.
//!
//! There is no general rule typing `M0 + M1` from `M0 : A` and `M1 : A`.
//! A sum is accepted only when it is an instance of one of the two sum
//! schemas
//!
//! ```text
//!   Γ ⊢ M : D^{d+1}A                   Γ ⊢ M0 + M1 : D^{d+1}A
//!   ───────────────────────────         ───────────────────────────────
//!   Γ ⊢ π0^d M + π1^d M : D^d A         Γ ⊢ π1^d M0 + π0^d M1 : D^d A
//! ```
//!
//! or can be brought to one by the closure of typing under `⇝` and `→`:
//! the summands are factored back through a common linear construct
//! (reversing `⇝`), regrouped by commutativity and associativity of
//! summable sums, or shown to be the two projections of a typable witness
//! after normalisation. `M + 0` and `0 + M` are typed as `M`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{type_err, CalcError, Result};
use crate::reduce::{normalize, Reducer};
use crate::syntax::{fresh, lookup, Term, Ty};

/// Fuel for the normalisations used to recover summability witnesses.
const WITNESS_FUEL: usize = 200;

/// Infers the type of `m` in `ctx`.
pub fn typecheck(ctx: &[(String, Ty)], m: &Term) -> Result<Ty> {
    Checker::default().infer(&mut ctx.to_vec(), m)
}

/// Checks `m` against `a` in `ctx`.
pub fn check(ctx: &[(String, Ty)], m: &Term, a: &Ty) -> Result<()> {
    Checker::default().check(&mut ctx.to_vec(), m, a)
}

/// Whether `ctx ⊢ m : a`.
pub fn has_type(ctx: &[(String, Ty)], m: &Term, a: &Ty) -> bool {
    check(ctx, m, a).is_ok()
}

#[derive(Default)]
struct Checker {
    reducer: Reducer,
    /// Verdicts of the binary sum rules, keyed by the summands, the
    /// expected type and the context.
    sums: RefCell<HashMap<SumKey, Option<Ty>>>,
    /// Normal forms computed so far.
    normal: RefCell<HashMap<Term, Option<Term>>>,
}

type SumKey = (Term, Term, Option<Ty>, Vec<(String, Ty)>, bool);

fn expect_depth(t: &Ty, k: u32, rule: &'static str, what: &Term) -> Result<()> {
    if t.has_depth(k) {
        Ok(())
    } else {
        type_err(rule, format!("`{what}` has type {t}, which is not of the form D^{k} A"))
    }
}

impl Checker {
    fn infer(&self, ctx: &mut Vec<(String, Ty)>, m: &Term) -> Result<Ty> {
        match m {
            Term::Var(x) => lookup(ctx, x)
                .cloned()
                .ok_or_else(|| CalcError::Type { rule: "var", msg: format!("unbound variable `{x}`") }),
            Term::Abs(x, a, body) => {
                ctx.push((x.clone(), a.clone()));
                let b = self.infer(ctx, body);
                ctx.pop();
                Ok(Ty::arrow(a.clone(), b?))
            }
            Term::App(f, n) => match self.infer(ctx, f)? {
                Ty::Arrow(a, b) => {
                    self.check(ctx, n, &a)?;
                    Ok(*b)
                }
                t => type_err("app", format!("`{f}` has type {t}, not a function type")),
            },
            Term::D(f) => match self.infer(ctx, f)? {
                Ty::Arrow(a, b) => Ok(Ty::arrow(a.diff(), b.diff())),
                t => type_err("D", format!("`{f}` has type {t}, not a function type")),
            },
            Term::Proj(_, k, n) => {
                let t = self.infer(ctx, n)?;
                expect_depth(&t, k + 1, "proj", n)?;
                Ok(t.undiff_n(1).expect("depth checked"))
            }
            Term::Inj(_, k, n) => {
                let t = self.infer(ctx, n)?;
                expect_depth(&t, *k, "inj", n)?;
                Ok(t.diff())
            }
            Term::Sum(k, n) => {
                let t = self.infer(ctx, n)?;
                expect_depth(&t, k + 2, "sigma", n)?;
                Ok(t.undiff_n(1).expect("depth checked"))
            }
            Term::Flip(k, n) => {
                let t = self.infer(ctx, n)?;
                expect_depth(&t, k + 2, "flip", n)?;
                Ok(t)
            }
            Term::Zero => type_err("zero", "`0` has every type; its type cannot be inferred here"),
            Term::Plus(p, q) => self.sum(ctx, p, q, None, false),
            Term::Num(_) => Ok(Ty::nat()),
            Term::Const(c, k) => Ok(c.ty(*k)),
            Term::Fix(a, f) => {
                self.check(ctx, f, &Ty::arrow(a.clone(), a.clone()))?;
                Ok(a.clone())
            }
        }
    }

    fn check(&self, ctx: &mut Vec<(String, Ty)>, m: &Term, r: &Ty) -> Result<()> {
        match m {
            Term::Zero => Ok(()),
            Term::Abs(x, a, body) => match r {
                Ty::Arrow(ra, rb) if **ra == *a => {
                    ctx.push((x.clone(), a.clone()));
                    let res = self.check(ctx, body, rb);
                    ctx.pop();
                    res
                }
                _ => type_err("abs", format!("`{m}` cannot have type {r}")),
            },
            Term::App(f, n) => match self.infer(ctx, f) {
                Ok(Ty::Arrow(a, b)) => {
                    if *b != *r {
                        return type_err("app", format!("`{m}` has type {b}, expected {r}"));
                    }
                    self.check(ctx, n, &a)
                }
                Ok(t) => type_err("app", format!("`{f}` has type {t}, not a function type")),
                Err(e) => match self.infer(ctx, n) {
                    Ok(a) => self.check(ctx, f, &Ty::arrow(a, r.clone())),
                    Err(_) => Err(e),
                },
            },
            Term::D(f) => match r {
                Ty::Arrow(a1, b1) => match (a1.undiff_n(1), b1.undiff_n(1)) {
                    (Some(a), Some(b)) => self.check(ctx, f, &Ty::arrow(a, b)),
                    _ => type_err("D", format!("{r} is not of the form DA ⇒ DB")),
                },
                _ => type_err("D", format!("{r} is not a function type")),
            },
            Term::Proj(_, k, n) => {
                expect_depth(r, *k, "proj", m)?;
                self.check(ctx, n, &r.diff())
            }
            Term::Inj(_, k, n) => {
                expect_depth(r, k + 1, "inj", m)?;
                self.check(ctx, n, &r.undiff_n(1).expect("depth checked"))
            }
            Term::Sum(k, n) => {
                expect_depth(r, k + 1, "sigma", m)?;
                self.check(ctx, n, &r.diff())
            }
            Term::Flip(k, n) => {
                expect_depth(r, k + 2, "flip", m)?;
                self.check(ctx, n, r)
            }
            Term::Plus(p, q) => self.sum(ctx, p, q, Some(r), false).map(|_| ()),
            _ => {
                let t = self.infer(ctx, m)?;
                if t == *r {
                    Ok(())
                } else {
                    type_err("conversion", format!("`{m}` has type {t}, expected {r}"))
                }
            }
        }
    }

    /// Types `m` against `exp` if given, otherwise infers it.
    fn type_of(&self, ctx: &mut Vec<(String, Ty)>, m: &Term, exp: Option<&Ty>) -> Result<Ty> {
        match exp {
            Some(a) => self.check(ctx, m, a).map(|_| a.clone()),
            None => self.infer(ctx, m),
        }
    }

    /// Types a witness `w` whose two depth-`k` projections form the sum.
    fn witness(&self, ctx: &mut Vec<(String, Ty)>, w: &Term, k: u32, exp: Option<&Ty>) -> Result<Ty> {
        match exp {
            Some(a) => {
                expect_depth(a, k, "sum", w)?;
                self.check(ctx, w, &a.diff())?;
                Ok(a.clone())
            }
            None => {
                let t = self.infer(ctx, w)?;
                expect_depth(&t, k + 1, "sum", w)?;
                Ok(t.undiff_n(1).expect("depth checked"))
            }
        }
    }

    /// Types `p + q`: the summands are flattened, and every grouping into
    /// a binary tree (in every order, for up to [`MAX_PERMUTED`] summands)
    /// is tried with the binary rules.
    fn sum(&self, ctx: &mut Vec<(String, Ty)>, p: &Term, q: &Term, exp: Option<&Ty>, normalized: bool) -> Result<Ty> {
        let whole = Term::Plus(Box::new(p.clone()), Box::new(q.clone()));
        let parts: Vec<Term> = whole.summands().into_iter().filter(|t| **t != Term::Zero).cloned().collect();
        match parts.len() {
            0 => {
                return match exp {
                    Some(a) => Ok(a.clone()),
                    None => type_err("zero", "`0` has every type; its type cannot be inferred here"),
                }
            }
            1 => return self.type_of(ctx, &parts[0], exp),
            _ => {}
        }
        if let Ok(t) = self.binary(ctx, p, q, exp, normalized) {
            return Ok(t);
        }
        let orders: Vec<Vec<Term>> =
            if parts.len() <= MAX_PERMUTED { permutations(&parts) } else { vec![parts.clone()] };
        let mut seen = std::collections::BTreeSet::new();
        for order in orders {
            for tree in groupings(&order) {
                if !seen.insert(tree.clone()) {
                    continue;
                }
                if let Term::Plus(l, r) = &tree {
                    if let Ok(t) = self.binary(ctx, l, r, exp, normalized) {
                        return Ok(t);
                    }
                }
            }
        }
        type_err("sum", format!("no sum rule applies to `{p} + {q}`; summands must be provably summable"))
    }

    /// The binary sum rules, for a fixed grouping (memoised).
    fn binary(
        &self,
        ctx: &mut Vec<(String, Ty)>,
        p: &Term,
        q: &Term,
        exp: Option<&Ty>,
        normalized: bool,
    ) -> Result<Ty> {
        let key = (p.clone(), q.clone(), exp.cloned(), ctx.clone(), normalized);
        if let Some(v) = self.sums.borrow().get(&key) {
            return v
                .clone()
                .ok_or_else(|| CalcError::Type { rule: "sum", msg: format!("no sum rule applies to `{p} + {q}`") });
        }
        let r = self.binary_rules(ctx, p, q, exp, normalized);
        self.sums.borrow_mut().insert(key, r.as_ref().ok().cloned());
        r
    }

    fn nf(&self, t: &Term) -> Option<Term> {
        if let Some(v) = self.normal.borrow().get(t) {
            return v.clone();
        }
        let v = normalize(&self.reducer, t, WITNESS_FUEL).ok();
        self.normal.borrow_mut().insert(t.clone(), v.clone());
        v
    }

    fn binary_rules(
        &self,
        ctx: &mut Vec<(String, Ty)>,
        p: &Term,
        q: &Term,
        exp: Option<&Ty>,
        normalized: bool,
    ) -> Result<Ty> {
        // Reverse ⇝ inside either summand first.
        let p = &refactor(p);
        let q = &refactor(q);
        // The two displayed schemas, witnesses compared up to ⇝.
        match (p, q) {
            (Term::Proj(0, k, m0), Term::Proj(1, l, m1)) if k == l && same_linear(m0, m1) => {
                if let Ok(t) = self.witness(ctx, m0, *k, exp) {
                    return Ok(t);
                }
            }
            (Term::Proj(1, k, m0), Term::Proj(0, l, m1)) if k == l => {
                let inner = Term::Plus(m0.clone(), m1.clone());
                if let Ok(t) = self.witness(ctx, &inner, *k, exp) {
                    return Ok(t);
                }
            }
            _ => {}
        }
        // Reverse ⇝: factor a common linear construct.
        if let Some(f) = factor(p, q) {
            if let Ok(t) = self.type_of(ctx, &f, exp) {
                return Ok(t);
            }
        }
        // A witness recovered from a visible projection, up to
        // normalisation.
        for (k, w) in witness_candidates(p, q) {
            let Ok(t) = self.witness(ctx, &w, k, exp) else { continue };
            let same = |side: &Term, i: u8| -> bool {
                let lhs = self.nf(&Term::Proj(i, k, Box::new(w.clone())));
                let rhs = self.nf(side);
                matches!((lhs, rhs), (Some(a), Some(b)) if a.alpha_eq(&b))
            };
            if same(p, 0) && same(q, 1) {
                return Ok(t);
            }
        }
        // Both summands up to normalisation (once per search).
        if !normalized {
            if let (Some(np), Some(nq)) = (self.nf(p), self.nf(q)) {
                if np != *p || nq != *q {
                    return self.sum(ctx, &np, &nq, exp, true);
                }
            }
        }
        type_err("sum", format!("no sum rule applies to `{p} + {q}`"))
    }
}

/// Summand counts up to which every order is tried.
const MAX_PERMUTED: usize = 4;

fn permutations(xs: &[Term]) -> Vec<Vec<Term>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Every binary bracketing of `xs` (in order).
fn groupings(xs: &[Term]) -> Vec<Term> {
    if xs.len() == 1 {
        return vec![xs[0].clone()];
    }
    let mut out = Vec::new();
    for split in 1..xs.len() {
        for l in groupings(&xs[..split]) {
            for r in groupings(&xs[split..]) {
                out.push(Term::Plus(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// `C[p' + q']` for a sum `C[p'] + C[q']`, recursively; other terms are
/// returned unchanged.
fn refactor(t: &Term) -> Term {
    if let Term::Plus(a, b) = t {
        let (a, b) = (refactor(a), refactor(b));
        if let Some(f) = factor(&a, &b) {
            return f;
        }
        return Term::Plus(Box::new(a), Box::new(b));
    }
    t.clone()
}

/// Whether `a` and `b` have the same `⇝`-normal form up to α.
fn same_linear(a: &Term, b: &Term) -> bool {
    if a.alpha_eq(b) {
        return true;
    }
    let lin = |t: &Term| {
        let r = Reducer::default();
        let mut t = t.clone();
        for _ in 0..WITNESS_FUEL {
            match r.linear_step(&t) {
                Some((n, _)) => t = n,
                None => break,
            }
        }
        t
    };
    lin(a).alpha_eq(&lin(b))
}

/// `(k, W)` such that the sum may be `π0^k W + π1^k W` up to reduction.
fn witness_candidates(p: &Term, q: &Term) -> Vec<(u32, Term)> {
    let mut out = Vec::new();
    if let Term::Proj(0, k, w) = p {
        out.push((*k, (**w).clone()));
        if let Term::Proj(0, l, y) = &**w {
            if l == k {
                out.push((*k, Term::Sum(*k, y.clone())));
            }
        }
    }
    if let Term::Proj(1, k, w) = q {
        out.push((*k, (**w).clone()));
    }
    out
}

/// The term `C[p' + q']` when `p = C[p']` and `q = C[q']` for a common
/// one-level linear context `C`.
fn factor(p: &Term, q: &Term) -> Option<Term> {
    let pl = |a: &Term, b: &Term| Box::new(Term::Plus(Box::new(a.clone()), Box::new(b.clone())));
    Some(match (p, q) {
        (Term::App(f0, a0), Term::App(f1, a1)) if a0.alpha_eq(a1) => Term::App(pl(f0, f1), a0.clone()),
        (Term::App(f0, a0), Term::App(f1, a1)) if f0 == f1 && matches!(**f0, Term::Const(..)) => {
            Term::App(f0.clone(), pl(a0, a1))
        }
        (Term::Abs(x, a, m0), Term::Abs(y, b, m1)) if a == b => {
            let mut avoid = p.free_vars();
            avoid.extend(q.free_vars());
            m0.all_names(&mut avoid);
            m1.all_names(&mut avoid);
            let z = if x == y { x.clone() } else { fresh(x, &avoid) };
            let m0 = m0.subst(x, &Term::Var(z.clone()));
            let m1 = m1.subst(y, &Term::Var(z.clone()));
            Term::Abs(z, a.clone(), pl(&m0, &m1))
        }
        (Term::D(m0), Term::D(m1)) => Term::D(pl(m0, m1)),
        (Term::Proj(i, k, m0), Term::Proj(j, l, m1)) if i == j && k == l => Term::Proj(*i, *k, pl(m0, m1)),
        (Term::Inj(i, k, m0), Term::Inj(j, l, m1)) if i == j && k == l => Term::Inj(*i, *k, pl(m0, m1)),
        (Term::Sum(k, m0), Term::Sum(l, m1)) if k == l => Term::Sum(*k, pl(m0, m1)),
        (Term::Flip(k, m0), Term::Flip(l, m1)) if k == l => Term::Flip(*k, pl(m0, m1)),
        _ => return None,
    })
}
