//! Seeded generation of well-typed terms.
//!
//! Terms are generated type-directed, so every construct is placed at a
//! type where its typing rule applies; sums are produced only in the shape
//! `π0^d M + π1^d M` (and `M + 0`), the shapes the type checker accepts
//! directly. Reduction then creates the other sum shapes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::reduce::Rule;
use crate::syntax::{abs, app, d, fix, inj, plus, proj, sum, Constant, Context, Term, Ty};

/// Largest ground depth a generated subterm may have.
const MAX_DEPTH: u32 = 3;

/// A generated judgment `ctx ⊢ term : ty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    /// The context.
    pub ctx: Context,
    /// The subject.
    pub term: Term,
    /// The type it was generated at.
    pub ty: Ty,
}

/// A term generator driven by a seeded RNG.
pub struct TermGen {
    rng: ChaCha8Rng,
    counter: usize,
    /// Whether to produce fixpoints.
    pub with_fix: bool,
    /// Whether to produce sums (`π0 M + π1 M`, `M + 0`).
    pub with_sums: bool,
}

impl TermGen {
    /// A generator for `seed`.
    pub fn new(seed: u64) -> TermGen {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed), counter: 0, with_fix: true, with_sums: true }
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    /// A small argument type.
    fn small_ty(&mut self) -> Ty {
        match self.rng.gen_range(0..6) {
            0..=2 => Ty::nat(),
            3 | 4 => Ty::Nat(1),
            _ => Ty::arrow(Ty::nat(), Ty::nat()),
        }
    }

    /// A term of type `ty` in `ctx` of roughly `size` constructors.
    pub fn term(&mut self, ctx: &Context, ty: &Ty, size: usize) -> Term {
        if size <= 1 {
            return self.leaf(ctx, ty);
        }
        let depth = ty.depth();
        let mut options: Vec<u8> = vec![0, 0];
        if matches!(ty, Ty::Nat(_)) {
            options.extend([1, 1, 1, 2, 8, 8]);
        }
        if matches!(ty, Ty::Arrow(..)) {
            options.extend([9, 9, 9]);
        }
        if depth >= 1 {
            options.extend([3, 3, 10, 10]);
        }
        if depth < MAX_DEPTH {
            options.extend([4, 5]);
            if self.with_sums {
                options.extend([7, 7]);
            }
        }
        if depth >= 2 {
            options.push(6);
        }
        if self.with_fix && *ty == Ty::nat() && size >= 4 {
            options.push(11);
        }
        if self.with_sums {
            options.push(12);
        }
        let half = size / 2;
        loop {
            let pick = *options.choose(&mut self.rng).expect("options");
            match pick {
                0 => {
                    let vars: Vec<_> = ctx.iter().filter(|(_, a)| a == ty).map(|(x, _)| x.clone()).collect();
                    if let Some(x) = vars.choose(&mut self.rng) {
                        return Term::Var(x.clone());
                    }
                }
                1 => {
                    let k = *[Constant::Succ, Constant::Pred].choose(&mut self.rng).expect("two");
                    let arg = self.term(ctx, ty, size - 1);
                    return app(Term::Const(k, depth), arg);
                }
                2 => {
                    let s = self.term(ctx, ty, half);
                    let n0 = self.term(ctx, &Ty::nat(), half / 2 + 1);
                    let n1 = self.term(ctx, &Ty::nat(), half / 2 + 1);
                    return app(app(app(Term::Const(Constant::If0, depth), s), n0), n1);
                }
                3 => {
                    let k = self.rng.gen_range(0..depth);
                    let i = self.rng.gen_range(0..2);
                    let inner = ty.undiff_n(1).expect("depth at least one");
                    return inj(i, k, self.term(ctx, &inner, size - 1));
                }
                4 => {
                    let k = self.rng.gen_range(0..=depth);
                    let i = self.rng.gen_range(0..2);
                    return proj(i, k, self.term(ctx, &ty.diff(), size - 1));
                }
                5 if depth >= 1 => {
                    let k = self.rng.gen_range(0..depth);
                    return sum(k, self.term(ctx, &ty.diff(), size - 1));
                }
                6 => {
                    let k = self.rng.gen_range(0..depth - 1);
                    return Term::Flip(k, Box::new(self.term(ctx, ty, size - 1)));
                }
                7 => {
                    let k = self.rng.gen_range(0..=depth);
                    let m = self.term(ctx, &ty.diff(), half);
                    return plus(proj(0, k, m.clone()), proj(1, k, m));
                }
                8 => {
                    let a = self.small_ty();
                    let f = self.term(ctx, &Ty::arrow(a.clone(), ty.clone()), half);
                    let x = self.term(ctx, &a, half);
                    return app(f, x);
                }
                9 => {
                    if let Ty::Arrow(a, b) = ty {
                        let x = self.fresh("x");
                        let mut inner = ctx.clone();
                        inner.push((x.clone(), (**a).clone()));
                        return abs(&x, (**a).clone(), self.term(&inner, b, size - 1));
                    }
                }
                10 => {
                    // D F applied, or D F itself at an arrow type DA ⇒ DB.
                    // No fixpoints under D: differentiating a recursive
                    // definition unfolds it without bound.
                    let with_fix = std::mem::replace(&mut self.with_fix, false);
                    let out = if let Ty::Arrow(a, b) = ty {
                        match (a.undiff_n(1), b.undiff_n(1)) {
                            (Some(a0), Some(b0)) => Some(d(self.term(ctx, &Ty::arrow(a0, b0), size - 1))),
                            _ => None,
                        }
                    } else {
                        let a = self.small_ty();
                        let b0 = ty.undiff_n(1).expect("depth at least one");
                        let f = self.term(ctx, &Ty::arrow(a.clone(), b0), half);
                        let x = self.term(ctx, &a.diff(), half);
                        Some(app(d(f), x))
                    };
                    self.with_fix = with_fix;
                    if let Some(t) = out {
                        return t;
                    }
                }
                11 => {
                    // A closed argument, so that the recursion terminates.
                    let n = self.term(&Vec::new(), &Ty::nat(), 2);
                    return app(countdown(), n);
                }
                12 => {
                    if self.rng.gen_bool(0.5) {
                        return plus(self.term(ctx, ty, size - 1), Term::Zero);
                    }
                    return plus(Term::Zero, self.term(ctx, ty, size - 1));
                }
                _ => {}
            }
        }
    }

    /// A minimal term of type `ty`.
    pub fn leaf(&mut self, ctx: &Context, ty: &Ty) -> Term {
        let vars: Vec<_> = ctx.iter().filter(|(_, a)| a == ty).map(|(x, _)| x.clone()).collect();
        if !vars.is_empty() && self.rng.gen_bool(0.6) {
            return Term::Var(vars.choose(&mut self.rng).expect("non-empty").clone());
        }
        match ty {
            Ty::Nat(0) => Term::Num(self.rng.gen_range(0..=2)),
            Ty::Nat(k) => {
                let i = self.rng.gen_range(0..2);
                let at = self.rng.gen_range(0..*k);
                inj(i, at, self.leaf(ctx, &Ty::Nat(k - 1)))
            }
            Ty::Arrow(a, b) => {
                if let (Ty::Nat(p), Ty::Nat(q)) = (&**a, &**b) {
                    if p == q && self.rng.gen_bool(0.4) {
                        let k = *[Constant::Succ, Constant::Pred].choose(&mut self.rng).expect("two");
                        return Term::Const(k, *p);
                    }
                }
                let x = self.fresh("x");
                let mut inner = ctx.clone();
                inner.push((x.clone(), (**a).clone()));
                abs(&x, (**a).clone(), self.leaf(&inner, b))
            }
        }
    }

    /// A random judgment.
    pub fn judgment(&mut self, size: usize) -> Judgment {
        let (ctx, ty) = self.context_and_type();
        let term = self.term(&ctx, &ty, size);
        Judgment { ctx, term, ty }
    }

    /// A random context and target type.
    pub fn context_and_type(&mut self) -> (Context, Ty) {
        let contexts: [Context; 4] = [
            vec![],
            vec![("x".into(), Ty::nat())],
            vec![("x".into(), Ty::nat()), ("y".into(), Ty::Nat(1))],
            vec![("f".into(), Ty::arrow(Ty::nat(), Ty::nat()))],
        ];
        let types = [
            Ty::nat(),
            Ty::nat(),
            Ty::Nat(1),
            Ty::Nat(2),
            Ty::arrow(Ty::nat(), Ty::nat()),
            Ty::arrow(Ty::nat(), Ty::Nat(1)),
            Ty::arrow(Ty::Nat(1), Ty::Nat(1)),
        ];
        let ctx = contexts.choose(&mut self.rng).expect("contexts").clone();
        let ty = types.choose(&mut self.rng).expect("types").clone();
        (ctx, ty)
    }

    /// A random argument type, as used for applications.
    pub fn arg_type(&mut self) -> Ty {
        self.small_ty()
    }
}

/// One small judgment per reduction rule whose reduction fires that rule.
pub const RULE_PROBES: [(Rule, &str); 27] = [
    (Rule::LinearSum, "|- (pi0^0 (\\x:i. iota0^0 x) + pi1^0 (\\x:i. iota0^0 x)) #1"),
    (Rule::LinearZero, "|- iota0^0 (pi1^0 iota0^0 #1)"),
    (Rule::PlusZero, "|- #1 + 0"),
    (Rule::Beta, "|- (\\x:i. x) #1"),
    (Rule::DLam, "|- D (\\x:i. succ x) (iota1^0 #1)"),
    (Rule::ProjLam, "|- pi0^0 (\\x:i. iota1^0 x)"),
    (Rule::ProjApp, "f : i -> i1 |- pi0^0 (f #1)"),
    (Rule::ProjInj, "|- pi0^0 iota0^0 #1"),
    (Rule::Proj0Sum, "y : i2 |- pi0^0 (sigma^0 y)"),
    (Rule::Proj1Sum, "y : i2 |- pi1^0 (sigma^0 y)"),
    (Rule::Fix, "|- fix (\\f:i -> i. \\n:i. if0 n #0 (f (pred n))) #1"),
    (Rule::ProjFlip, "y : i2 |- pi0^0 (c^0 y)"),
    (Rule::ProjInjCommute, "y : i1 |- pi0^1 (iota1^0 y)"),
    (Rule::ProjSumCommute, "y : i3 |- pi0^0 (sigma^1 y)"),
    (Rule::ProjFlipCommute, "y : i3 |- pi0^0 (c^1 y)"),
    (Rule::SumInj, "y : i1 |- sigma^0 (iota1^0 y)"),
    (Rule::SumInjCommute, "y : i2 |- sigma^1 (iota0^0 y)"),
    (Rule::FlipInj, "y : i1 |- c^0 (iota1^0 y)"),
    (Rule::FlipInjCommute, "y : i2 |- c^1 (iota0^0 y)"),
    (Rule::FlipFlip, "y : i2 |- c^0 (c^0 y)"),
    (Rule::DCommute, "f : i -> i1 |- D (pi0^0 f)"),
    (Rule::DConst, "|- D succ (iota1^0 #1)"),
    (Rule::AppLift, "f : i -> i |- (iota1^0 f) #1"),
    (Rule::ConstCompute, "|- succ #1"),
    (Rule::ConstLift, "|- succ^1 (iota1^0 #1)"),
    (Rule::ConstLinear, "|- succ (pi0^0 iota1^0 #1 + pi1^0 iota1^0 #1)"),
    (Rule::ProjConst, "|- pi0^0 succ^1"),
];

/// `fix (λf:ι⇒ι. λn:ι. if0 n #0 (f (pred n)))`.
pub fn countdown() -> Term {
    let ii = Ty::arrow(Ty::nat(), Ty::nat());
    let body = app(
        app(app(Term::Const(Constant::If0, 0), Term::Var("n".into())), Term::Num(0)),
        app(Term::Var("f".into()), app(Term::Const(Constant::Pred, 0), Term::Var("n".into()))),
    );
    fix(ii.clone(), abs("f", ii, abs("n", Ty::nat(), body)))
}

/// `count` judgments from `seed`, with sizes cycling through `2..=max_size`.
pub fn corpus(seed: u64, count: usize, max_size: usize) -> Vec<Judgment> {
    let mut g = TermGen::new(seed);
    (0..count).map(|i| g.judgment(2 + i % max_size.saturating_sub(1).max(1))).collect()
}
