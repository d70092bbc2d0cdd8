//! Differential substitution `∂let`, the linearity rewriting `⇝` and the
//! reduction `→`.
//!
//! Reduction is deterministic: at each step the leftmost-outermost `⇝`
//! redex is contracted if there is one, otherwise the leftmost-outermost
//! `→` redex. Beyond the displayed rules, the reducer ships rules that
//! commute constructs acting at different depths, the monad laws for `σ`
//! and `c` against injections, linearity of `D` over the summability
//! constructs, and the ground constants; each is marked
//! [`Rule::is_extension`] and can be disabled individually.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CalcError, Result};
use crate::syntax::{fresh, Constant, Term};

/// A reduction rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `⇝`: a linear construct applied to `M0 + M1` distributes.
    LinearSum,
    /// `⇝`: a linear construct applied to `0` is `0`.
    LinearZero,
    /// `⇝` (extension): `M + 0 ⇝ M` and `0 + M ⇝ M`.
    PlusZero,
    /// `(λx:A. M) N → M[N/x]`.
    Beta,
    /// `D(λx:A. M) → λx:DA. ∂let x ← x in M`.
    DLam,
    /// `π_i^d(λx:A. M) → λx:A. π_i^d M`.
    ProjLam,
    /// `π_i^d(M N) → (π_i^d M) N`.
    ProjApp,
    /// `π_i^d(ι_j^d M) → M` if `i = j`, else `0`.
    ProjInj,
    /// `π0^d(σ^d M) → π0^d(π0^d M)`.
    Proj0Sum,
    /// `π1^d(σ^d M) → π1^d(π0^d M) + π0^d(π1^d M)`.
    Proj1Sum,
    /// `fix M → M (fix M)`.
    Fix,
    /// `π_i^d(c^d M) → π_i^{d+1} M` and `π_i^{d+1}(c^d M) → π_i^d M`.
    ProjFlip,
    /// `π` commutes with `ι` at another depth.
    ProjInjCommute,
    /// `π` commutes with `σ` at a non-adjacent depth.
    ProjSumCommute,
    /// `π` commutes with `c` at a non-adjacent depth.
    ProjFlipCommute,
    /// `σ^d(ι0^d M) → M`, `σ^d(ι1^d M) → ι1^d(π0^d M)` and the same at
    /// inner index `d+1`.
    SumInj,
    /// `σ` commutes with `ι` at a non-adjacent depth.
    SumInjCommute,
    /// `c^d(ι_i^d M) → ι_i^{d+1} M` and `c^d(ι_i^{d+1} M) → ι_i^d M`.
    FlipInj,
    /// `c` commutes with `ι` at a non-adjacent depth.
    FlipInjCommute,
    /// `c^d(c^d M) → M`.
    FlipFlip,
    /// `D(op^d M) → op^{d+1}(D M)` for `op ∈ {π_i, ι_i, σ, c}`.
    DCommute,
    /// `D k^d → k^{d+1}` for a ground constant `k`.
    DConst,
    /// `(op^d M) N → op^d(M N)` for `op ∈ {ι_i, σ, c}`.
    AppLift,
    /// Ground computation: `succ #n`, `pred #n`, `if0 #n M N`.
    ConstCompute,
    /// A ground constant at depth `d` commutes with `ι`, `σ` and `c`
    /// applied to its argument.
    ConstLift,
    /// A ground constant is linear: `k (M0 + M1) → k M0 + k M1`, `k 0 → 0`.
    ConstLinear,
    /// `π_i^e k^d → λx:ι_d. k^{d-1} (π_i^e x)`: projecting the result of a
    /// ground constant projects its scrutinee.
    ProjConst,
}

impl Rule {
    /// Every rule.
    pub const ALL: [Rule; 27] = [
        Rule::LinearSum,
        Rule::LinearZero,
        Rule::PlusZero,
        Rule::Beta,
        Rule::DLam,
        Rule::ProjLam,
        Rule::ProjApp,
        Rule::ProjInj,
        Rule::Proj0Sum,
        Rule::Proj1Sum,
        Rule::Fix,
        Rule::ProjFlip,
        Rule::ProjInjCommute,
        Rule::ProjSumCommute,
        Rule::ProjFlipCommute,
        Rule::SumInj,
        Rule::SumInjCommute,
        Rule::FlipInj,
        Rule::FlipInjCommute,
        Rule::FlipFlip,
        Rule::DCommute,
        Rule::DConst,
        Rule::AppLift,
        Rule::ConstCompute,
        Rule::ConstLift,
        Rule::ConstLinear,
        Rule::ProjConst,
    ];

    /// Short name used in traces.
    pub fn name(self) -> &'static str {
        match self {
            Rule::LinearSum => "lin-sum",
            Rule::LinearZero => "lin-zero",
            Rule::PlusZero => "plus-zero",
            Rule::Beta => "beta",
            Rule::DLam => "D-lam",
            Rule::ProjLam => "proj-lam",
            Rule::ProjApp => "proj-app",
            Rule::ProjInj => "proj-inj",
            Rule::Proj0Sum => "proj0-sigma",
            Rule::Proj1Sum => "proj1-sigma",
            Rule::Fix => "fix",
            Rule::ProjFlip => "proj-flip",
            Rule::ProjInjCommute => "proj-inj-commute",
            Rule::ProjSumCommute => "proj-sigma-commute",
            Rule::ProjFlipCommute => "proj-flip-commute",
            Rule::SumInj => "sigma-inj",
            Rule::SumInjCommute => "sigma-inj-commute",
            Rule::FlipInj => "flip-inj",
            Rule::FlipInjCommute => "flip-inj-commute",
            Rule::FlipFlip => "flip-flip",
            Rule::DCommute => "D-commute",
            Rule::DConst => "D-const",
            Rule::AppLift => "app-lift",
            Rule::ConstCompute => "const",
            Rule::ConstLift => "const-lift",
            Rule::ConstLinear => "const-linear",
            Rule::ProjConst => "proj-const",
        }
    }

    /// Whether the rule belongs to `⇝`.
    pub fn is_linear(self) -> bool {
        matches!(self, Rule::LinearSum | Rule::LinearZero | Rule::PlusZero)
    }

    /// Whether the rule goes beyond the displayed ones.
    pub fn is_extension(self) -> bool {
        !matches!(
            self,
            Rule::LinearSum
                | Rule::LinearZero
                | Rule::Beta
                | Rule::DLam
                | Rule::ProjLam
                | Rule::ProjApp
                | Rule::ProjInj
                | Rule::Proj0Sum
                | Rule::Proj1Sum
                | Rule::Fix
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reducer with a set of enabled rules.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reducer {
    disabled: BTreeSet<Rule>,
}

impl Reducer {
    /// Only the displayed rules (no extensions).
    pub fn displayed_only() -> Reducer {
        Reducer { disabled: Rule::ALL.into_iter().filter(|r| r.is_extension()).collect() }
    }

    /// Disables `rule`.
    pub fn without(mut self, rule: Rule) -> Reducer {
        self.disabled.insert(rule);
        self
    }

    /// Whether `rule` is enabled.
    pub fn enabled(&self, rule: Rule) -> bool {
        !self.disabled.contains(&rule)
    }

    /// The enabled rules.
    pub fn rules(&self) -> Vec<Rule> {
        Rule::ALL.into_iter().filter(|r| self.enabled(*r)).collect()
    }

    /// One `⇝` step (leftmost-outermost).
    pub fn linear_step(&self, m: &Term) -> Option<(Term, Rule)> {
        find(m, &|t| self.linear_root(t))
    }

    /// One step of `→` (which contains `⇝`).
    pub fn step(&self, m: &Term) -> Option<(Term, Rule)> {
        self.linear_step(m).or_else(|| find(m, &|t| self.root(t)))
    }

    fn on(&self, rule: Rule, t: Term) -> Option<(Term, Rule)> {
        self.enabled(rule).then_some((t, rule))
    }

    fn linear_root(&self, m: &Term) -> Option<(Term, Rule)> {
        use Term::*;
        match m {
            Plus(a, b) if **b == Zero => self.on(Rule::PlusZero, (**a).clone()),
            Plus(a, b) if **a == Zero => self.on(Rule::PlusZero, (**b).clone()),
            App(f, n) => match &**f {
                Plus(a, b) => {
                    self.on(Rule::LinearSum, Term::Plus(bx(App(a.clone(), n.clone())), bx(App(b.clone(), n.clone()))))
                }
                Zero => self.on(Rule::LinearZero, Zero),
                _ => None,
            },
            Abs(x, a, body) => match &**body {
                Plus(p, q) => self.on(
                    Rule::LinearSum,
                    Term::Plus(bx(Abs(x.clone(), a.clone(), p.clone())), bx(Abs(x.clone(), a.clone(), q.clone()))),
                ),
                Zero => self.on(Rule::LinearZero, Zero),
                _ => None,
            },
            D(n) | Proj(_, _, n) | Inj(_, _, n) | Sum(_, n) | Flip(_, n) => match &**n {
                Plus(p, q) => {
                    let l = m.map_children(|_| (**p).clone());
                    let r = m.map_children(|_| (**q).clone());
                    self.on(Rule::LinearSum, Term::Plus(bx(l), bx(r)))
                }
                Zero => self.on(Rule::LinearZero, Zero),
                _ => None,
            },
            _ => None,
        }
    }

    fn root(&self, m: &Term) -> Option<(Term, Rule)> {
        use Term::*;
        match m {
            App(f, n) => match &**f {
                Abs(x, _, body) => self.on(Rule::Beta, body.subst(x, n)),
                Inj(i, k, g) => self.on(Rule::AppLift, Inj(*i, *k, bx(App(g.clone(), n.clone())))),
                Sum(k, g) => self.on(Rule::AppLift, Sum(*k, bx(App(g.clone(), n.clone())))),
                Flip(k, g) => self.on(Rule::AppLift, Flip(*k, bx(App(g.clone(), n.clone())))),
                Const(c, k) => self.constant(*c, *k, n),
                App(g, a) => match &**g {
                    App(h, s) => match (&**h, &**s) {
                        (Const(Constant::If0, 0), Num(v)) => {
                            self.on(Rule::ConstCompute, if *v == 0 { (**a).clone() } else { (**n).clone() })
                        }
                        _ => None,
                    },
                    _ => None,
                },
                _ => None,
            },
            D(f) => match &**f {
                Abs(x, a, body) => self.on(Rule::DLam, Abs(x.clone(), a.diff(), bx(dlet(x, &Var(x.clone()), body)))),
                Proj(i, k, g) => self.on(Rule::DCommute, Proj(*i, k + 1, bx(D(g.clone())))),
                Inj(i, k, g) => self.on(Rule::DCommute, Inj(*i, k + 1, bx(D(g.clone())))),
                Sum(k, g) => self.on(Rule::DCommute, Sum(k + 1, bx(D(g.clone())))),
                Flip(k, g) => self.on(Rule::DCommute, Flip(k + 1, bx(D(g.clone())))),
                Const(c, k) => self.on(Rule::DConst, Const(*c, k + 1)),
                _ => None,
            },
            Proj(i, d, n) => self.proj(*i, *d, n),
            Sum(d, n) => match &**n {
                Inj(i, e, g) if *e == *d || *e == d + 1 => {
                    let r = if *i == 0 { (**g).clone() } else { Inj(1, *d, bx(Proj(0, *d, g.clone()))) };
                    self.on(Rule::SumInj, r)
                }
                Inj(i, e, g) if *e < *d => self.on(Rule::SumInjCommute, Inj(*i, *e, bx(Sum(d - 1, g.clone())))),
                Inj(i, e, g) => self.on(Rule::SumInjCommute, Inj(*i, e - 1, bx(Sum(*d, g.clone())))),
                _ => None,
            },
            Flip(d, n) => match &**n {
                Inj(i, e, g) if *e == *d => self.on(Rule::FlipInj, Inj(*i, d + 1, g.clone())),
                Inj(i, e, g) if *e == d + 1 => self.on(Rule::FlipInj, Inj(*i, *d, g.clone())),
                Inj(i, e, g) if *e < *d => self.on(Rule::FlipInjCommute, Inj(*i, *e, bx(Flip(d - 1, g.clone())))),
                Inj(i, e, g) => self.on(Rule::FlipInjCommute, Inj(*i, *e, bx(Flip(*d, g.clone())))),
                Flip(e, g) if e == d => self.on(Rule::FlipFlip, (**g).clone()),
                _ => None,
            },
            Fix(_, f) => self.on(Rule::Fix, App(f.clone(), bx(m.clone()))),
            _ => None,
        }
    }

    fn proj(&self, i: u8, d: u32, n: &Term) -> Option<(Term, Rule)> {
        use Term::*;
        match n {
            Const(c, k) if d < *k => {
                let x = "x".to_string();
                let body = App(bx(Const(*c, k - 1)), bx(Proj(i, d, bx(Var(x.clone())))));
                self.on(Rule::ProjConst, Abs(x, crate::syntax::Ty::Nat(*k), bx(body)))
            }
            Abs(x, a, body) => self.on(Rule::ProjLam, Abs(x.clone(), a.clone(), bx(Proj(i, d, body.clone())))),
            App(f, a) => self.on(Rule::ProjApp, App(bx(Proj(i, d, f.clone())), a.clone())),
            Inj(j, e, g) if *e == d => self.on(Rule::ProjInj, if i == *j { (**g).clone() } else { Zero }),
            Inj(j, e, g) if *e > d => self.on(Rule::ProjInjCommute, Inj(*j, e - 1, bx(Proj(i, d, g.clone())))),
            Inj(j, e, g) => self.on(Rule::ProjInjCommute, Inj(*j, *e, bx(Proj(i, d - 1, g.clone())))),
            Sum(e, g) if *e == d && i == 0 => self.on(Rule::Proj0Sum, Proj(0, d, bx(Proj(0, d, g.clone())))),
            Sum(e, g) if *e == d => self.on(
                Rule::Proj1Sum,
                Plus(bx(Proj(1, d, bx(Proj(0, d, g.clone())))), bx(Proj(0, d, bx(Proj(1, d, g.clone()))))),
            ),
            Sum(e, g) if d < *e => self.on(Rule::ProjSumCommute, Sum(e - 1, bx(Proj(i, d, g.clone())))),
            Sum(e, g) => self.on(Rule::ProjSumCommute, Sum(*e, bx(Proj(i, d + 1, g.clone())))),
            Flip(e, g) if *e == d => self.on(Rule::ProjFlip, Proj(i, d + 1, g.clone())),
            Flip(e, g) if e + 1 == d => self.on(Rule::ProjFlip, Proj(i, d - 1, g.clone())),
            Flip(e, g) if d < *e => self.on(Rule::ProjFlipCommute, Flip(e - 1, bx(Proj(i, d, g.clone())))),
            Flip(e, g) => self.on(Rule::ProjFlipCommute, Flip(*e, bx(Proj(i, d, g.clone())))),
            _ => None,
        }
    }

    fn constant(&self, c: Constant, d: u32, n: &Term) -> Option<(Term, Rule)> {
        use Term::*;
        let k = |d: u32, v: &Term| App(bx(Const(c, d)), bx(v.clone()));
        match n {
            Num(v) if d == 0 => match c {
                Constant::Succ => self.on(Rule::ConstCompute, Num(v + 1)),
                Constant::Pred => self.on(Rule::ConstCompute, Num(v.saturating_sub(1))),
                Constant::If0 => None,
            },
            Plus(a, b) => self.on(Rule::ConstLinear, Plus(bx(k(d, a)), bx(k(d, b)))),
            Zero => self.on(Rule::ConstLinear, Zero),
            Inj(i, e, v) if *e < d => self.on(Rule::ConstLift, Inj(*i, *e, bx(k(d - 1, v)))),
            Sum(e, v) if *e < d => self.on(Rule::ConstLift, Sum(*e, bx(k(d + 1, v)))),
            Flip(e, v) if e + 2 <= d => self.on(Rule::ConstLift, Flip(*e, bx(k(d, v)))),
            _ => None,
        }
    }
}

fn bx(t: Term) -> Box<Term> {
    Box::new(t)
}

/// Applies `root` at the leftmost-outermost position where it fires.
fn find(m: &Term, root: &dyn Fn(&Term) -> Option<(Term, Rule)>) -> Option<(Term, Rule)> {
    if let Some(r) = root(m) {
        return Some(r);
    }
    use Term::*;
    match m {
        Var(_) | Zero | Num(_) | Const(..) => None,
        App(f, a) => find(f, root)
            .map(|(f, r)| (App(bx(f), a.clone()), r))
            .or_else(|| find(a, root).map(|(a, r)| (App(f.clone(), bx(a)), r))),
        Plus(p, q) => find(p, root)
            .map(|(p, r)| (Plus(bx(p), q.clone()), r))
            .or_else(|| find(q, root).map(|(q, r)| (Plus(p.clone(), bx(q)), r))),
        Abs(_, _, n) | D(n) | Proj(_, _, n) | Inj(_, _, n) | Sum(_, n) | Flip(_, n) | Fix(_, n) => {
            find(n, root).map(|(n, r)| (m.map_children(|_| n.clone()), r))
        }
    }
}

/// `∂let x ← n in m`: the derivative of `m` with respect to `x` in the
/// direction `n`.
pub fn dlet(x: &str, n: &Term, m: &Term) -> Term {
    use Term::*;
    let go = |t: &Term| bx(dlet(x, n, t));
    match m {
        Var(y) if y == x => n.clone(),
        Var(_) | Num(_) | Const(..) => Inj(0, 0, bx(m.clone())),
        Abs(y, b, p) => {
            if y == x || n.has_free(y) {
                let mut avoid = n.free_vars();
                p.all_names(&mut avoid);
                avoid.insert(x.to_string());
                let z = fresh(y, &avoid);
                let p = p.subst(y, &Var(z.clone()));
                Abs(z, b.clone(), go(&p))
            } else {
                Abs(y.clone(), b.clone(), go(p))
            }
        }
        D(p) => Flip(0, bx(D(go(p)))),
        App(p, q) => Sum(0, bx(App(bx(D(go(p))), go(q)))),
        Zero => Zero,
        Plus(p, q) => Plus(go(p), go(q)),
        Proj(i, k, p) => Proj(*i, k + 1, go(p)),
        Inj(i, k, p) => Inj(*i, k + 1, go(p)),
        Sum(k, p) => Sum(k + 1, go(p)),
        Flip(k, p) => Flip(k + 1, go(p)),
        Fix(b, p) => {
            let mut avoid = n.free_vars();
            p.all_names(&mut avoid);
            avoid.insert(x.to_string());
            let y = fresh("y", &avoid);
            let db = b.diff();
            Fix(db.clone(), bx(Abs(y.clone(), db, bx(Sum(0, bx(App(bx(D(go(p))), bx(Var(y)))))))))
        }
    }
}

/// One step of `⇝` with every rule enabled.
pub fn linear_step(m: &Term) -> Option<Term> {
    Reducer::default().linear_step(m).map(|(t, _)| t)
}

/// One step of `→` with every rule enabled.
pub fn step(m: &Term) -> Option<Term> {
    Reducer::default().step(m).map(|(t, _)| t)
}

/// Reduces `m` to normal form with at most `fuel` steps.
pub fn normalize(reducer: &Reducer, m: &Term, fuel: usize) -> Result<Term> {
    let mut t = m.clone();
    for _ in 0..fuel {
        match reducer.step(&t) {
            Some((n, _)) => t = n,
            None => return Ok(t),
        }
    }
    if reducer.step(&t).is_none() {
        Ok(t)
    } else {
        Err(CalcError::FuelExhausted { steps: fuel })
    }
}

/// The reduction sequence from `m`: each contracted rule and the
/// resulting term, at most `fuel` steps. The flag says whether a normal
/// form was reached.
pub fn trace(reducer: &Reducer, m: &Term, fuel: usize) -> (Vec<(Rule, Term)>, bool) {
    let mut out = Vec::new();
    let mut t = m.clone();
    for _ in 0..fuel {
        match reducer.step(&t) {
            Some((n, r)) => {
                out.push((r, n.clone()));
                t = n;
            }
            None => return (out, true),
        }
    }
    let done = reducer.step(&t).is_none();
    (out, done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::syntax::*;

    fn nf(s: &str) -> Term {
        normalize(&Reducer::default(), &parse(s).unwrap(), 1000).unwrap()
    }

    #[test]
    fn dlet_table() {
        let n = var("n");
        assert_eq!(dlet("x", &n, &var("x")), n);
        assert_eq!(dlet("x", &n, &var("y")), inj(0, 0, var("y")));
        assert_eq!(dlet("x", &n, &Term::Zero), Term::Zero);
        assert_eq!(dlet("x", &n, &app(var("f"), var("x"))), sum(0, app(d(inj(0, 0, var("f"))), n.clone())));
        assert_eq!(dlet("x", &n, &d(var("f"))), flip(0, d(inj(0, 0, var("f")))));
        assert_eq!(dlet("x", &n, &proj(1, 2, var("x"))), proj(1, 3, n.clone()));
    }

    #[test]
    fn linear_rules() {
        assert_eq!(linear_step(&parse("(a + b) n").unwrap()), Some(parse("a n + b n").unwrap()));
        assert_eq!(linear_step(&parse("0 m").unwrap()), Some(Term::Zero));
        assert_eq!(linear_step(&parse("D (a + b)").unwrap()), Some(parse("D a + D b").unwrap()));
        assert_eq!(linear_step(&parse("f (a + b)").unwrap()), None);
    }

    #[test]
    fn displayed_rules() {
        assert_eq!(step(&parse("(\\x:i. f x) #2").unwrap()), Some(parse("f #2").unwrap()));
        assert_eq!(
            step(&parse("pi1^0 (sigma^0 m)").unwrap()),
            Some(parse("pi1^0 (pi0^0 m) + pi0^0 (pi1^0 m)").unwrap())
        );
        assert_eq!(step(&parse("pi0^1 (iota0^1 m)").unwrap()), Some(var("m")));
        assert_eq!(step(&parse("pi0^1 (iota1^1 m)").unwrap()), Some(Term::Zero));
    }

    #[test]
    fn derivative_of_identity() {
        let t = nf("D (\\x:i. x)");
        assert!(t.alpha_eq(&parse("\\y:i1. y").unwrap()), "{t}");
    }

    #[test]
    fn numerals() {
        assert_eq!(nf("(\\x:i. x) #3"), Term::Num(3));
        assert_eq!(nf("succ (pred #0)"), Term::Num(1));
        assert_eq!(nf("fix (\\f:i -> i. \\n:i. if0 n #0 (f (pred n))) #3"), Term::Num(0));
    }

    #[test]
    fn divergence_exhausts_fuel() {
        let m = parse("fix (\\f:i. f)").unwrap();
        assert!(matches!(normalize(&Reducer::default(), &m, 50), Err(CalcError::FuelExhausted { .. })));
    }

    #[test]
    fn derivative_of_successor() {
        let t = nf("D (\\x:i. succ x) (iota1^0 #2)");
        assert_eq!(t, parse("iota1^0 #3").unwrap());
        let t = nf("D (\\x:i. succ x) (iota0^0 #2)");
        assert_eq!(t, parse("iota0^0 #3").unwrap());
    }
}
