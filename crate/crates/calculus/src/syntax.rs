//! Types and terms of the calculus, with capture-avoiding substitution and
//! α-equivalence.

use std::collections::BTreeSet;
use std::fmt;

/// A type: `ι_d` (the ground type under `d` layers of `D`) or `A ⇒ B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    /// `ι_d`.
    Nat(u32),
    /// `A ⇒ B`.
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    /// `ι` (depth 0).
    pub fn nat() -> Ty {
        Ty::Nat(0)
    }

    /// `A ⇒ B`.
    pub fn arrow(a: Ty, b: Ty) -> Ty {
        Ty::Arrow(Box::new(a), Box::new(b))
    }

    /// `D A`: `D ι_d = ι_{d+1}` and `D (A ⇒ B) = A ⇒ D B`.
    pub fn diff(&self) -> Ty {
        self.diff_n(1)
    }

    /// `D^k A`.
    pub fn diff_n(&self, k: u32) -> Ty {
        match self {
            Ty::Nat(d) => Ty::Nat(d + k),
            Ty::Arrow(a, b) => Ty::arrow((**a).clone(), b.diff_n(k)),
        }
    }

    /// The unique `B` with `D^k B = self`, if any.
    pub fn undiff_n(&self, k: u32) -> Option<Ty> {
        match self {
            Ty::Nat(d) => d.checked_sub(k).map(Ty::Nat),
            Ty::Arrow(a, b) => Some(Ty::arrow((**a).clone(), b.undiff_n(k)?)),
        }
    }

    /// Whether `self = D^k B` for some `B`.
    pub fn has_depth(&self, k: u32) -> bool {
        self.undiff_n(k).is_some()
    }

    /// The number of `D` layers of the ground type at the end of the
    /// arrow spine.
    pub fn depth(&self) -> u32 {
        match self {
            Ty::Nat(d) => *d,
            Ty::Arrow(_, b) => b.depth(),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Nat(0) => write!(f, "i"),
            Ty::Nat(d) => write!(f, "i{d}"),
            Ty::Arrow(a, b) => match **a {
                Ty::Arrow(..) => write!(f, "({a}) -> {b}"),
                Ty::Nat(_) => write!(f, "{a} -> {b}"),
            },
        }
    }
}

/// Ground-type constants. Each exists at every depth `d`, acting
/// layer-wise on `ι_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    /// `succ^d : ι_d ⇒ ι_d`.
    Succ,
    /// `pred^d : ι_d ⇒ ι_d` (`pred 0 = 0`).
    Pred,
    /// `if0^d : ι_d ⇒ ι ⇒ ι ⇒ ι_d`.
    If0,
}

impl Constant {
    /// Every constant.
    pub const ALL: [Constant; 3] = [Constant::Succ, Constant::Pred, Constant::If0];

    /// Concrete syntax.
    pub fn name(self) -> &'static str {
        match self {
            Constant::Succ => "succ",
            Constant::Pred => "pred",
            Constant::If0 => "if0",
        }
    }

    /// The type of the constant at depth `d`.
    pub fn ty(self, d: u32) -> Ty {
        match self {
            Constant::Succ | Constant::Pred => Ty::arrow(Ty::Nat(d), Ty::Nat(d)),
            Constant::If0 => Ty::arrow(Ty::Nat(d), Ty::arrow(Ty::nat(), Ty::arrow(Ty::nat(), Ty::Nat(d)))),
        }
    }
}

/// A term. Depth indices say at which layer of `D` a construct acts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// A variable.
    Var(String),
    /// `λx:A. M`.
    Abs(String, Ty, Box<Term>),
    /// `M N`.
    App(Box<Term>, Box<Term>),
    /// `D M`.
    D(Box<Term>),
    /// `π_i^d M`.
    Proj(u8, u32, Box<Term>),
    /// `ι_i^d M`.
    Inj(u8, u32, Box<Term>),
    /// `σ^d M`.
    Sum(u32, Box<Term>),
    /// `c^d M`.
    Flip(u32, Box<Term>),
    /// `0`.
    Zero,
    /// `M + N`.
    Plus(Box<Term>, Box<Term>),
    /// The numeral `n̄ : ι`.
    Num(u64),
    /// A ground constant at a depth.
    Const(Constant, u32),
    /// `fix M` where `M : A ⇒ A`; the type `A` is recorded.
    Fix(Ty, Box<Term>),
}

/// `x`.
pub fn var(x: &str) -> Term {
    Term::Var(x.to_string())
}

/// `λx:A. M`.
pub fn abs(x: &str, a: Ty, m: Term) -> Term {
    Term::Abs(x.to_string(), a, Box::new(m))
}

/// `M N`.
pub fn app(m: Term, n: Term) -> Term {
    Term::App(Box::new(m), Box::new(n))
}

/// `D M`.
pub fn d(m: Term) -> Term {
    Term::D(Box::new(m))
}

/// `π_i^d M`.
pub fn proj(i: u8, depth: u32, m: Term) -> Term {
    Term::Proj(i, depth, Box::new(m))
}

/// `ι_i^d M`.
pub fn inj(i: u8, depth: u32, m: Term) -> Term {
    Term::Inj(i, depth, Box::new(m))
}

/// `σ^d M`.
pub fn sum(depth: u32, m: Term) -> Term {
    Term::Sum(depth, Box::new(m))
}

/// `c^d M`.
pub fn flip(depth: u32, m: Term) -> Term {
    Term::Flip(depth, Box::new(m))
}

/// `M + N`.
pub fn plus(m: Term, n: Term) -> Term {
    Term::Plus(Box::new(m), Box::new(n))
}

/// `fix M` with `M : A ⇒ A`.
pub fn fix(a: Ty, m: Term) -> Term {
    Term::Fix(a, Box::new(m))
}

impl Term {
    /// Free variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Abs(x, _, m) => {
                bound.push(x.clone());
                m.collect_free(bound, out);
                bound.pop();
            }
            Term::App(m, n) | Term::Plus(m, n) => {
                m.collect_free(bound, out);
                n.collect_free(bound, out);
            }
            Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m)
            | Term::Fix(_, m) => m.collect_free(bound, out),
            Term::Zero | Term::Num(_) | Term::Const(..) => {}
        }
    }

    /// Whether `x` occurs free.
    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Abs(y, _, m) => y != x && m.has_free(x),
            Term::App(m, n) | Term::Plus(m, n) => m.has_free(x) || n.has_free(x),
            Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m)
            | Term::Fix(_, m) => m.has_free(x),
            Term::Zero | Term::Num(_) | Term::Const(..) => false,
        }
    }

    /// All variable names occurring anywhere (free or bound).
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Abs(x, _, m) => {
                out.insert(x.clone());
                m.all_names(out);
            }
            Term::App(m, n) | Term::Plus(m, n) => {
                m.all_names(out);
                n.all_names(out);
            }
            Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m)
            | Term::Fix(_, m) => m.all_names(out),
            Term::Zero | Term::Num(_) | Term::Const(..) => {}
        }
    }

    /// Capture-avoiding substitution `self[n/x]`.
    pub fn subst(&self, x: &str, n: &Term) -> Term {
        let fv = n.free_vars();
        self.subst_with(x, n, &fv)
    }

    fn subst_with(&self, x: &str, n: &Term, fv: &BTreeSet<String>) -> Term {
        match self {
            Term::Var(y) if y == x => n.clone(),
            Term::Var(_) | Term::Zero | Term::Num(_) | Term::Const(..) => self.clone(),
            Term::Abs(y, a, m) => {
                if y == x || !m.has_free(x) {
                    self.clone()
                } else if fv.contains(y) {
                    let mut avoid = fv.clone();
                    m.all_names(&mut avoid);
                    avoid.insert(x.to_string());
                    let z = fresh(y, &avoid);
                    let m = m.subst(y, &Term::Var(z.clone()));
                    Term::Abs(z, a.clone(), Box::new(m.subst_with(x, n, fv)))
                } else {
                    Term::Abs(y.clone(), a.clone(), Box::new(m.subst_with(x, n, fv)))
                }
            }
            _ => self.map_children(|m| m.subst_with(x, n, fv)),
        }
    }

    /// Rebuilds a non-binding node with `f` applied to its children.
    /// Abstractions have their body mapped (without renaming).
    pub fn map_children(&self, mut f: impl FnMut(&Term) -> Term) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::Num(_) | Term::Const(..) => self.clone(),
            Term::Abs(x, a, m) => Term::Abs(x.clone(), a.clone(), Box::new(f(m))),
            Term::App(m, n) => Term::App(Box::new(f(m)), Box::new(f(n))),
            Term::Plus(m, n) => Term::Plus(Box::new(f(m)), Box::new(f(n))),
            Term::D(m) => Term::D(Box::new(f(m))),
            Term::Proj(i, k, m) => Term::Proj(*i, *k, Box::new(f(m))),
            Term::Inj(i, k, m) => Term::Inj(*i, *k, Box::new(f(m))),
            Term::Sum(k, m) => Term::Sum(*k, Box::new(f(m))),
            Term::Flip(k, m) => Term::Flip(*k, Box::new(f(m))),
            Term::Fix(a, m) => Term::Fix(a.clone(), Box::new(f(m))),
        }
    }

    /// α-equivalence.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha(self, other, &mut Vec::new())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::Num(_) | Term::Const(..) => 1,
            Term::App(m, n) | Term::Plus(m, n) => 1 + m.size() + n.size(),
            Term::Abs(_, _, m)
            | Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m)
            | Term::Fix(_, m) => 1 + m.size(),
        }
    }

    /// Number of `+` nodes.
    pub fn plus_count(&self) -> usize {
        match self {
            Term::Plus(m, n) => 1 + m.plus_count() + n.plus_count(),
            Term::App(m, n) => m.plus_count() + n.plus_count(),
            Term::Var(_) | Term::Zero | Term::Num(_) | Term::Const(..) => 0,
            Term::Abs(_, _, m)
            | Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m)
            | Term::Fix(_, m) => m.plus_count(),
        }
    }

    /// The largest numeral occurring in the term.
    pub fn max_numeral(&self) -> u64 {
        match self {
            Term::Num(n) => *n,
            Term::App(m, n) | Term::Plus(m, n) => m.max_numeral().max(n.max_numeral()),
            Term::Var(_) | Term::Zero | Term::Const(..) => 0,
            Term::Abs(_, _, m)
            | Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m)
            | Term::Fix(_, m) => m.max_numeral(),
        }
    }

    /// Whether the term contains `fix`.
    pub fn has_fix(&self) -> bool {
        match self {
            Term::Fix(..) => true,
            Term::App(m, n) | Term::Plus(m, n) => m.has_fix() || n.has_fix(),
            Term::Var(_) | Term::Zero | Term::Num(_) | Term::Const(..) => false,
            Term::Abs(_, _, m)
            | Term::D(m)
            | Term::Proj(_, _, m)
            | Term::Inj(_, _, m)
            | Term::Sum(_, m)
            | Term::Flip(_, m) => m.has_fix(),
        }
    }

    /// The summands of a (nested) sum, left to right; `0` summands are
    /// kept.
    pub fn summands(&self) -> Vec<&Term> {
        match self {
            Term::Plus(m, n) => {
                let mut v = m.summands();
                v.extend(n.summands());
                v
            }
            _ => vec![self],
        }
    }
}

fn alpha(a: &Term, b: &Term, env: &mut Vec<(String, String)>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            for (l, r) in env.iter().rev() {
                if l == x || r == y {
                    return l == x && r == y;
                }
            }
            x == y
        }
        (Term::Abs(x, s, m), Term::Abs(y, t, n)) => {
            if s != t {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = alpha(m, n, env);
            env.pop();
            r
        }
        (Term::App(m0, n0), Term::App(m1, n1)) | (Term::Plus(m0, n0), Term::Plus(m1, n1)) => {
            alpha(m0, m1, env) && alpha(n0, n1, env)
        }
        (Term::D(m), Term::D(n)) => alpha(m, n, env),
        (Term::Proj(i, k, m), Term::Proj(j, l, n)) | (Term::Inj(i, k, m), Term::Inj(j, l, n)) => {
            i == j && k == l && alpha(m, n, env)
        }
        (Term::Sum(k, m), Term::Sum(l, n)) | (Term::Flip(k, m), Term::Flip(l, n)) => k == l && alpha(m, n, env),
        (Term::Fix(s, m), Term::Fix(t, n)) => s == t && alpha(m, n, env),
        (Term::Zero, Term::Zero) => true,
        (Term::Num(m), Term::Num(n)) => m == n,
        (Term::Const(c, k), Term::Const(e, l)) => c == e && k == l,
        _ => false,
    }
}

/// A variant of `base` not in `avoid` (by appending a number).
pub fn fresh(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    if !avoid.contains(base) {
        return base.to_string();
    }
    (0..).map(|i| format!("{stem}{i}")).find(|n| !avoid.contains(n)).expect("infinitely many names")
}

/// A typing context: an ordered list of distinct variables with types.
pub type Context = Vec<(String, Ty)>;

/// Looks up the innermost binding of `x`.
pub fn lookup<'a>(ctx: &'a [(String, Ty)], x: &str) -> Option<&'a Ty> {
    ctx.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_of_types() {
        let t = Ty::arrow(Ty::nat(), Ty::Nat(1));
        assert_eq!(t.diff(), Ty::arrow(Ty::nat(), Ty::Nat(2)));
        assert_eq!(t.undiff_n(1), Some(Ty::arrow(Ty::nat(), Ty::nat())));
        assert_eq!(t.undiff_n(2), None);
    }

    #[test]
    fn substitution_avoids_capture() {
        let m = abs("y", Ty::nat(), app(var("x"), var("y")));
        let r = m.subst("x", &var("y"));
        match &r {
            Term::Abs(z, _, body) => {
                assert_ne!(z, "y");
                assert!(body.alpha_eq(&app(var("y"), var(z))));
            }
            _ => panic!("expected abstraction"),
        }
    }

    #[test]
    fn alpha_equivalence() {
        let a = abs("x", Ty::nat(), var("x"));
        let b = abs("y", Ty::nat(), var("y"));
        assert!(a.alpha_eq(&b));
        assert!(!abs("x", Ty::nat(), var("z")).alpha_eq(&abs("z", Ty::nat(), var("z"))));
    }
}
