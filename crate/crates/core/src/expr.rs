//! A small combinator language for morphisms, evaluated lazily and exactly.
//!
//! An [`Expr`] denotes a relation between (possibly infinite) webs. It is
//! never materialised as a whole: the [`Evaluator`] computes, for one input
//! atom `a` and an output degree bound `cap`, the set of outputs `b` with
//! `(a, b)` in the relation and `degree(b) ≤ cap`.
//!
//! Exactness of composition rests on [`Evaluator::pre_cap`]: for a bound
//! `cap` on the outputs of `g`, it returns a bound on the inputs of `g` that
//! can possibly reach such an output. Evaluating `g ∘ f` at `(a, cap)` then
//! only needs the outputs of `f` up to `pre_cap(g, cap)`. This copes with
//! maps that increase degree (`dig`, `∂̄`, `m0`, promotion of constants) as
//! well as maps that decrease it (`der`, `m2`, evaluation).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::atom::{Atom, AtomKind, Multiset};
use crate::error::{Error, Result};
use crate::rel::Rel;
use crate::space::{Kind, Space};

/// Primitive (closed-form) morphisms.
#[derive(Clone, Debug)]
pub enum Prim {
    /// `der : !X → X`, `[a] ↦ a`.
    Der,
    /// `dig : !X → !!X`, `m ↦ [m1, …, mn]` for all `m = m1 + … + mn`.
    Dig,
    /// `weak : !X → 1`, `[] ↦ *`.
    Weak,
    /// `contr : !X → !X ⊗ !X`, `m ↦ (m1, m2)` for all `m = m1 + m2`.
    Contr,
    /// `m0 : 1 → !1`, `* ↦ [*, …, *]`.
    M0,
    /// `m2 : !X ⊗ !Y → !(X ⊗ Y)`, all pairings of equal-size multisets.
    M2,
    /// `seely0 : 1 → !⊤`, `* ↦ []`.
    Seely0,
    /// Inverse of [`Prim::Seely0`].
    Seely0Inv,
    /// `seely2 : !X ⊗ !Y → !(X & Y)`, `(m0, m1) ↦ 0·m0 + 1·m1`.
    Seely2,
    /// Inverse of [`Prim::Seely2`].
    Seely2Inv,
    /// `π_i : S X → X` (also the cartesian projection `X0 & X1 → Xi`).
    Proj(u8),
    /// `σ : S X → X`, `(i, a) ↦ a`.
    Sigma,
    /// `ι_i : X → S X`, `a ↦ (i, a)`.
    Inj(u8),
    /// `c : S²X → S²X`, `(i, (j, a)) ↦ (j, (i, a))`.
    Flip,
    /// `θ : S²X → S X`, `(i, (j, a)) ↦ (i ∨ j, a)` unless `i = j = 1`.
    Theta,
    /// `str : X ⊗ S Y → S(X ⊗ Y)`, `(a, (i, b)) ↦ (i, (a, b))`.
    Str,
    /// `str' : S X ⊗ Y → S(X ⊗ Y)`, `((i, a), b) ↦ (i, (a, b))`.
    StrL,
    /// `Smont : S X ⊗ S Y → S(X ⊗ Y)`, `((i, a), (j, b)) ↦ (i ∨ j, (a, b))`
    /// unless `i = j = 1`.
    Smont,
    /// `S(X ⊸ Y) → X ⊸ S Y`, `(i, (a, b)) ↦ (a, (i, b))`.
    SFun,
    /// Inverse of [`Prim::SFun`].
    SFunInv,
    /// `S X → I ⊸ X`, `(i, a) ↦ (i·*, a)`.
    CanIso,
    /// Inverse of [`Prim::CanIso`].
    CanIsoInv,
    /// `∂ : !S X → S !X`. In COH the space `X` is needed to enforce the
    /// multiclique proviso.
    Partial(Kind, Option<Space>),
    /// `∂̄ : I → !I`.
    Dbar,
    /// `Δ : I → I ⊗ I`, the comultiplication of the comonoid `I`.
    Delta,
    /// `w_i : 1 → I`, `* ↦ i·*`.
    Point(u8),
    /// `ev : (Y ⊸ Z) ⊗ Y → Z`; the field bounds the degree of `Y` atoms.
    Ev(u32),
    /// Symmetry `X ⊗ Y → Y ⊗ X`.
    Swap,
    /// `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`.
    AssocR,
    /// `X ⊗ (Y ⊗ Z) → (X ⊗ Y) ⊗ Z`.
    AssocL,
    /// `1 ⊗ X → X`.
    LUnit,
    /// `X → 1 ⊗ X`.
    LUnitInv,
    /// `X ⊗ 1 → X`.
    RUnit,
    /// `X → X ⊗ 1`.
    RUnitInv,
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Prim::Der => "der".to_string(),
            Prim::Dig => "dig".to_string(),
            Prim::Weak => "weak".to_string(),
            Prim::Contr => "contr".to_string(),
            Prim::M0 => "m0".to_string(),
            Prim::M2 => "m2".to_string(),
            Prim::Seely0 => "seely0".to_string(),
            Prim::Seely0Inv => "seely0⁻¹".to_string(),
            Prim::Seely2 => "seely2".to_string(),
            Prim::Seely2Inv => "seely2⁻¹".to_string(),
            Prim::Proj(i) => format!("π{i}"),
            Prim::Sigma => "σ".to_string(),
            Prim::Inj(i) => format!("ι{i}"),
            Prim::Flip => "c".to_string(),
            Prim::Theta => "θ".to_string(),
            Prim::Str => "str".to_string(),
            Prim::StrL => "str'".to_string(),
            Prim::Smont => "Smont".to_string(),
            Prim::SFun => "sfun".to_string(),
            Prim::SFunInv => "sfun⁻¹".to_string(),
            Prim::CanIso => "can".to_string(),
            Prim::CanIsoInv => "can⁻¹".to_string(),
            Prim::Partial(..) => "∂".to_string(),
            Prim::Dbar => "∂̄".to_string(),
            Prim::Delta => "Δ".to_string(),
            Prim::Point(i) => format!("w{i}"),
            Prim::Ev(_) => "ev".to_string(),
            Prim::Swap => "γ".to_string(),
            Prim::AssocR => "α".to_string(),
            Prim::AssocL => "α⁻¹".to_string(),
            Prim::LUnit => "λ".to_string(),
            Prim::LUnitInv => "λ⁻¹".to_string(),
            Prim::RUnit => "ρ".to_string(),
            Prim::RUnitInv => "ρ⁻¹".to_string(),
        };
        f.write_str(&s)
    }
}

#[derive(Debug)]
enum Node {
    Id,
    Zero,
    Lit(Rel, u32),
    Prim(Prim),
    Compose(Expr, Expr),
    Tensor(Expr, Expr),
    With(Expr, Expr),
    Pairing(Expr, Expr),
    Sum(Expr, Expr),
    S(Expr),
    Bang(Expr),
    Curry(Expr, Arc<Vec<Atom>>),
}

/// A morphism expression. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Expr(Arc<Node>);

impl Expr {
    fn new(n: Node) -> Expr {
        Expr(Arc::new(n))
    }

    fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// The identity.
    pub fn id() -> Expr {
        Expr::new(Node::Id)
    }

    /// The zero morphism `∅`.
    pub fn zero() -> Expr {
        Expr::new(Node::Zero)
    }

    /// A finite relation.
    pub fn lit(r: Rel) -> Expr {
        let d = r.pairs().iter().map(|(a, _)| a.degree()).max().unwrap_or(0);
        Expr::new(Node::Lit(r, d))
    }

    /// A primitive.
    pub fn prim(p: Prim) -> Expr {
        Expr::new(Node::Prim(p))
    }

    /// `self ∘ f` (first `f`, then `self`).
    pub fn after(&self, f: &Expr) -> Expr {
        Expr::new(Node::Compose(self.clone(), f.clone()))
    }

    /// `g ∘ self` (first `self`, then `g`).
    pub fn then(&self, g: &Expr) -> Expr {
        g.after(self)
    }

    /// Composes in diagrammatic order: `seq([f, g, h]) = h ∘ g ∘ f`.
    pub fn seq<I: IntoIterator<Item = Expr>>(maps: I) -> Expr {
        let mut it = maps.into_iter();
        let first = it.next().unwrap_or_else(Expr::id);
        it.fold(first, |acc, g| g.after(&acc))
    }

    /// `f ⊗ g`.
    pub fn tensor(f: &Expr, g: &Expr) -> Expr {
        Expr::new(Node::Tensor(f.clone(), g.clone()))
    }

    /// `f & g : X0 & X1 → Y0 & Y1`.
    pub fn with(f: &Expr, g: &Expr) -> Expr {
        Expr::new(Node::With(f.clone(), g.clone()))
    }

    /// `⟨f, g⟩`; as relations this is also the summability witness
    /// `⟨⟨f, g⟩⟩ : X → S Y`.
    pub fn pairing(f: &Expr, g: &Expr) -> Expr {
        Expr::new(Node::Pairing(f.clone(), g.clone()))
    }

    /// `f ∪ g`, the sum of summable morphisms.
    pub fn sum(f: &Expr, g: &Expr) -> Expr {
        Expr::new(Node::Sum(f.clone(), g.clone()))
    }

    /// `S f`.
    pub fn s(&self) -> Expr {
        Expr::new(Node::S(self.clone()))
    }

    /// `!f`.
    pub fn bang(&self) -> Expr {
        Expr::new(Node::Bang(self.clone()))
    }

    /// `Cur f : X → (Y ⊸ Z)` for `f : X ⊗ Y → Z`; `arg_web` lists the atoms
    /// of `Y` that are considered.
    pub fn curry(f: &Expr, arg_web: Vec<Atom>) -> Expr {
        Expr::new(Node::Curry(f.clone(), Arc::new(arg_web)))
    }

    /// `f ⊗ id`.
    pub fn tensor_id(&self) -> Expr {
        Expr::tensor(self, &Expr::id())
    }

    /// `id ⊗ f`.
    pub fn id_tensor(&self) -> Expr {
        Expr::tensor(&Expr::id(), self)
    }

    /// Promotion `!f ∘ dig`.
    pub fn promote(&self) -> Expr {
        self.bang().after(&Expr::prim(Prim::Dig))
    }

    /// Kleisli composition `g ∘̂ f = g ∘ !f ∘ dig` of `f : !X → Y` and
    /// `g : !Y → Z`.
    pub fn kleisli(g: &Expr, f: &Expr) -> Expr {
        g.after(&f.promote())
    }

    /// `D̂f = S f ∘ ∂_X` for `f : !X → Y`.
    pub fn dhat(f: &Expr, kind: Kind, x: Option<&Space>) -> Expr {
        f.s().after(&partial(kind, x))
    }
}

/// Shorthand for [`Expr::prim`].
pub fn p(prim: Prim) -> Expr {
    Expr::prim(prim)
}

/// `∂_X`, keeping `X` only where it matters (COH).
pub fn partial(kind: Kind, x: Option<&Space>) -> Expr {
    let space = if kind == Kind::Coh { x.cloned() } else { None };
    p(Prim::Partial(kind, space))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Id => write!(f, "id"),
            Node::Zero => write!(f, "0"),
            Node::Lit(r, _) => write!(f, "⟦{} pairs⟧", r.len()),
            Node::Prim(p) => write!(f, "{p}"),
            Node::Compose(g, h) => write!(f, "{g} ∘ {h}"),
            Node::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            Node::With(a, b) => write!(f, "({a} & {b})"),
            Node::Pairing(a, b) => write!(f, "⟨{a}, {b}⟩"),
            Node::Sum(a, b) => write!(f, "({a} + {b})"),
            Node::S(a) => write!(f, "S({a})"),
            Node::Bang(a) => write!(f, "!({a})"),
            Node::Curry(a, _) => write!(f, "Cur({a})"),
        }
    }
}

type Image = Arc<BTreeSet<Atom>>;

/// Memoising evaluator for [`Expr`]s.
///
/// Keys are expression node addresses, so an evaluator must only be used
/// with expressions that outlive it (which is the natural usage: build the
/// expressions, evaluate, drop both).
pub struct Evaluator {
    cache: HashMap<(usize, Atom, u32), Image>,
    pre: HashMap<(usize, u32), u32>,
    max_atoms: usize,
    produced: usize,
}

impl Evaluator {
    /// An evaluator that fails with [`Error::BudgetExceeded`] once more than
    /// `max_atoms` output atoms have been produced in a single image.
    pub fn new(max_atoms: usize) -> Evaluator {
        Evaluator { cache: HashMap::new(), pre: HashMap::new(), max_atoms, produced: 0 }
    }

    /// Total number of output atoms produced so far (a work measure).
    pub fn work(&self) -> usize {
        self.produced
    }

    fn check(&self, n: usize, what: &dyn fmt::Display) -> Result<()> {
        if n > self.max_atoms {
            Err(Error::BudgetExceeded { what: format!("image under {what}"), limit: self.max_atoms })
        } else {
            Ok(())
        }
    }

    /// Upper bound on the degree of inputs that have an output of degree
    /// at most `cap`.
    pub fn pre_cap(&mut self, e: &Expr, cap: u32) -> u32 {
        if let Some(v) = self.pre.get(&(e.key(), cap)) {
            return *v;
        }
        let v = match &*e.0 {
            Node::Id => cap,
            Node::Zero => 0,
            Node::Lit(_, d) => *d,
            Node::Prim(p) => match p {
                Prim::Der => cap + 1,
                Prim::M2 => 2 * cap,
                Prim::Weak | Prim::M0 | Prim::Seely0 | Prim::Seely0Inv => 0,
                Prim::Dbar | Prim::Delta | Prim::Point(_) => 0,
                Prim::Ev(dy) => cap + 2 * dy,
                _ => cap,
            },
            Node::Compose(g, f) => {
                let c = self.pre_cap(g, cap);
                self.pre_cap(f, c)
            }
            Node::Tensor(f, g) => (0..=cap).map(|k| self.pre_cap(f, k) + self.pre_cap(g, cap - k)).max().unwrap_or(0),
            Node::With(f, g) | Node::Pairing(f, g) | Node::Sum(f, g) => self.pre_cap(f, cap).max(self.pre_cap(g, cap)),
            Node::S(f) => self.pre_cap(f, cap),
            Node::Curry(f, _) => self.pre_cap(f, cap),
            Node::Bang(f) => {
                // best[r] after n factors = max Σ pre(k_i) with Σ k_i ≤ r.
                let pres: Vec<u32> = (0..=cap).map(|k| self.pre_cap(f, k)).collect();
                let mut best = vec![0u32; cap as usize + 1];
                let mut overall = 0;
                for n in 1..=cap {
                    let mut next = vec![0u32; cap as usize + 1];
                    for r in 0..=cap as usize {
                        next[r] = (0..=r).map(|k| pres[k] + best[r - k]).max().unwrap_or(0);
                    }
                    best = next;
                    let rem = (cap - n) as usize;
                    overall = overall.max(n + best[rem]);
                }
                overall
            }
        };
        self.pre.insert((e.key(), cap), v);
        v
    }

    /// The outputs of `e` at input `a` whose degree is at most `cap`.
    pub fn image(&mut self, e: &Expr, a: &Atom, cap: u32) -> Result<Image> {
        let key = (e.key(), a.clone(), cap);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let out = self.compute(e, a, cap)?;
        self.check(out.len(), e)?;
        self.produced += out.len();
        let out = Arc::new(out);
        self.cache.insert(key, out.clone());
        Ok(out)
    }

    /// The relation `e` restricted to inputs in `domain` and outputs of
    /// degree at most `cap`.
    pub fn relation(&mut self, e: &Expr, domain: &[Atom], cap: u32) -> Result<Rel> {
        let mut r = Rel::empty();
        for a in domain {
            for b in self.image(e, a, cap)?.iter() {
                r.insert(a.clone(), b.clone());
            }
        }
        Ok(r)
    }

    fn compute(&mut self, e: &Expr, a: &Atom, cap: u32) -> Result<BTreeSet<Atom>> {
        let mut out = BTreeSet::new();
        match &*e.0 {
            Node::Id => {
                if a.degree() <= cap {
                    out.insert(a.clone());
                }
            }
            Node::Zero => {}
            Node::Lit(r, _) => {
                out.extend(r.image(a).into_iter().filter(|b| b.degree() <= cap));
            }
            Node::Prim(p) => self.prim(p, a, cap, &mut out)?,
            Node::Compose(g, f) => {
                let mid = self.pre_cap(g, cap);
                let bs = self.image(f, a, mid)?;
                for b in bs.iter() {
                    out.extend(self.image(g, b, cap)?.iter().cloned());
                    self.check(out.len(), e)?;
                }
            }
            Node::Tensor(f, g) => {
                if let Some((x, y)) = a.as_pair() {
                    let xs = self.image(f, x, cap)?;
                    for c in xs.iter() {
                        let ys = self.image(g, y, cap - c.degree())?;
                        for d in ys.iter() {
                            out.insert(Atom::pair(c.clone(), d.clone()));
                        }
                        self.check(out.len(), e)?;
                    }
                }
            }
            Node::With(f, g) => {
                if let Some((i, x)) = a.as_tag() {
                    let h = if i == 0 { f } else { g };
                    for b in self.image(h, x, cap)?.iter() {
                        out.insert(Atom::tag(i, b.clone()));
                    }
                }
            }
            Node::Pairing(f, g) => {
                for (i, h) in [(0u8, f), (1u8, g)] {
                    for b in self.image(h, a, cap)?.iter() {
                        out.insert(Atom::tag(i, b.clone()));
                    }
                }
            }
            Node::Sum(f, g) => {
                out.extend(self.image(f, a, cap)?.iter().cloned());
                out.extend(self.image(g, a, cap)?.iter().cloned());
            }
            Node::S(f) => {
                if let Some((i, x)) = a.as_tag() {
                    for b in self.image(f, x, cap)?.iter() {
                        out.insert(Atom::tag(i, b.clone()));
                    }
                }
            }
            Node::Curry(f, web) => {
                for y in web.iter() {
                    if y.degree() > cap {
                        continue;
                    }
                    let xy = Atom::pair(a.clone(), y.clone());
                    for z in self.image(f, &xy, cap - y.degree())?.iter() {
                        out.insert(Atom::pair(y.clone(), z.clone()));
                    }
                }
            }
            Node::Bang(f) => {
                if let Some(m) = a.as_mset() {
                    let n = m.len();
                    if n <= cap {
                        let room = cap - n;
                        let mut parts: Vec<Vec<Atom>> = Vec::new();
                        for x in m.elements() {
                            let imgs: Vec<Atom> = self.image(f, &x, room)?.iter().cloned().collect();
                            if imgs.is_empty() {
                                return Ok(out);
                            }
                            parts.push(imgs);
                        }
                        let mut acc: BTreeSet<(Multiset, u32)> = BTreeSet::new();
                        acc.insert((Multiset::empty(), 0));
                        for imgs in &parts {
                            let mut next = BTreeSet::new();
                            for (ms, used) in &acc {
                                for b in imgs {
                                    let u = used + b.degree();
                                    if u <= room {
                                        next.insert((ms.add(b.clone()), u));
                                    }
                                }
                            }
                            self.check(next.len(), e)?;
                            acc = next;
                        }
                        out.extend(acc.into_iter().map(|(ms, _)| Atom::mset(ms)));
                    }
                }
            }
        }
        Ok(out)
    }

    fn prim(&mut self, p: &Prim, a: &Atom, cap: u32, out: &mut BTreeSet<Atom>) -> Result<()> {
        let mut push = |b: Atom| {
            if b.degree() <= cap {
                out.insert(b);
            }
        };
        match p {
            Prim::Der => {
                if let Some(m) = a.as_mset() {
                    if m.len() == 1 {
                        push(m.entries()[0].0.clone());
                    }
                }
            }
            Prim::Dig => {
                if let Some(m) = a.as_mset() {
                    let base = m.nested_degree();
                    if base <= cap {
                        let max_parts = cap - base;
                        for blocks in m.partitions() {
                            let k = blocks.len() as u32;
                            if k > max_parts {
                                continue;
                            }
                            let parts: Multiset = blocks.into_iter().map(Atom::mset).collect();
                            for j in 0..=(max_parts - k) {
                                let extra = Multiset::repeat(Atom::mset(Multiset::empty()), j);
                                push(Atom::mset(parts.sum(&extra)));
                            }
                        }
                    }
                }
            }
            Prim::Weak => {
                if a.as_mset().is_some_and(|m| m.is_empty()) {
                    push(Atom::star());
                }
            }
            Prim::Contr => {
                if let Some(m) = a.as_mset() {
                    for (l, r) in m.splits() {
                        push(Atom::pair(Atom::mset(l), Atom::mset(r)));
                    }
                }
            }
            Prim::M0 => {
                if is_star(a) {
                    for k in 0..=cap {
                        push(Atom::mset(Multiset::repeat(Atom::star(), k)));
                    }
                }
            }
            Prim::M2 => {
                if let Some((x, y)) = a.as_pair() {
                    if let (Some(m0), Some(m1)) = (x.as_mset(), y.as_mset()) {
                        if m0.len() == m1.len() {
                            let left = m0.elements();
                            let right = m1.elements();
                            for perm in permutations(right.len()) {
                                let ms: Multiset = left
                                    .iter()
                                    .zip(perm.iter())
                                    .map(|(l, &j)| Atom::pair(l.clone(), right[j].clone()))
                                    .collect();
                                push(Atom::mset(ms));
                            }
                        }
                    }
                }
            }
            Prim::Seely0 => {
                if is_star(a) {
                    push(Atom::mset(Multiset::empty()));
                }
            }
            Prim::Seely0Inv => {
                if a.as_mset().is_some_and(|m| m.is_empty()) {
                    push(Atom::star());
                }
            }
            Prim::Seely2 => {
                if let Some((x, y)) = a.as_pair() {
                    if let (Some(m0), Some(m1)) = (x.as_mset(), y.as_mset()) {
                        let t0 = m0.map(|e| Atom::tag(0, e.clone()));
                        let t1 = m1.map(|e| Atom::tag(1, e.clone()));
                        push(Atom::mset(t0.sum(&t1)));
                    }
                }
            }
            Prim::Seely2Inv => {
                if let Some(m) = a.as_mset() {
                    if let Some((m0, m1)) = split_tags(m) {
                        push(Atom::pair(Atom::mset(m0), Atom::mset(m1)));
                    }
                }
            }
            Prim::Proj(i) => {
                if let Some((j, x)) = a.as_tag() {
                    if j == *i {
                        push(x.clone());
                    }
                }
            }
            Prim::Sigma => {
                if let Some((_, x)) = a.as_tag() {
                    push(x.clone());
                }
            }
            Prim::Inj(i) => push(Atom::tag(*i, a.clone())),
            Prim::Flip => {
                if let Some((i, inner)) = a.as_tag() {
                    if let Some((j, x)) = inner.as_tag() {
                        push(Atom::tag(j, Atom::tag(i, x.clone())));
                    }
                }
            }
            Prim::Theta => {
                if let Some((i, inner)) = a.as_tag() {
                    if let Some((j, x)) = inner.as_tag() {
                        if i + j <= 1 {
                            push(Atom::tag(i | j, x.clone()));
                        }
                    }
                }
            }
            Prim::Str => {
                if let Some((x, ty)) = a.as_pair() {
                    if let Some((i, y)) = ty.as_tag() {
                        push(Atom::tag(i, Atom::pair(x.clone(), y.clone())));
                    }
                }
            }
            Prim::StrL => {
                if let Some((tx, y)) = a.as_pair() {
                    if let Some((i, x)) = tx.as_tag() {
                        push(Atom::tag(i, Atom::pair(x.clone(), y.clone())));
                    }
                }
            }
            Prim::Smont => {
                if let Some((tx, ty)) = a.as_pair() {
                    if let (Some((i, x)), Some((j, y))) = (tx.as_tag(), ty.as_tag()) {
                        if i + j <= 1 {
                            push(Atom::tag(i | j, Atom::pair(x.clone(), y.clone())));
                        }
                    }
                }
            }
            Prim::SFun => {
                if let Some((i, xy)) = a.as_tag() {
                    if let Some((x, y)) = xy.as_pair() {
                        push(Atom::pair(x.clone(), Atom::tag(i, y.clone())));
                    }
                }
            }
            Prim::SFunInv => {
                if let Some((x, ty)) = a.as_pair() {
                    if let Some((i, y)) = ty.as_tag() {
                        push(Atom::tag(i, Atom::pair(x.clone(), y.clone())));
                    }
                }
            }
            Prim::CanIso => {
                if let Some((i, x)) = a.as_tag() {
                    push(Atom::pair(Atom::point(i), x.clone()));
                }
            }
            Prim::CanIsoInv => {
                if let Some((pt, x)) = a.as_pair() {
                    if let Some((i, s)) = pt.as_tag() {
                        if is_star(s) {
                            push(Atom::tag(i, x.clone()));
                        }
                    }
                }
            }
            Prim::Partial(kind, space) => {
                if let Some(m) = a.as_mset() {
                    if let Some((m0, m1)) = split_tags(m) {
                        if m1.is_empty() {
                            push(Atom::tag(0, Atom::mset(m0)));
                        } else if m1.len() == 1 {
                            let x = m1.entries()[0].0.clone();
                            let ok = match kind {
                                Kind::Coh => {
                                    m0.count(&x) == 0
                                        && space.as_ref().map(|e| e.is_clique(m0.support().chain([&x]))).unwrap_or(true)
                                }
                                _ => true,
                            };
                            if ok {
                                push(Atom::tag(1, Atom::mset(m0.add(x))));
                            }
                        }
                    }
                }
            }
            Prim::Dbar => {
                if let Some((i, s)) = a.as_tag() {
                    if is_star(s) {
                        let zero = Atom::point(0);
                        let extra = i as u32;
                        for k in 0..=cap {
                            if k + extra > cap {
                                break;
                            }
                            let mut m = Multiset::repeat(zero.clone(), k);
                            if i == 1 {
                                m = m.add(Atom::point(1));
                            }
                            push(Atom::mset(m));
                        }
                    }
                }
            }
            Prim::Delta => {
                if let Some((i, s)) = a.as_tag() {
                    if is_star(s) {
                        let (z, o) = (Atom::point(0), Atom::point(1));
                        if i == 0 {
                            push(Atom::pair(z.clone(), z));
                        } else {
                            push(Atom::pair(z.clone(), o.clone()));
                            push(Atom::pair(o, z));
                        }
                    }
                }
            }
            Prim::Point(i) => {
                if is_star(a) {
                    push(Atom::point(*i));
                }
            }
            Prim::Ev(_) => {
                if let Some((f, y)) = a.as_pair() {
                    if let Some((y0, z)) = f.as_pair() {
                        if y0 == y {
                            push(z.clone());
                        }
                    }
                }
            }
            Prim::Swap => {
                if let Some((x, y)) = a.as_pair() {
                    push(Atom::pair(y.clone(), x.clone()));
                }
            }
            Prim::AssocR => {
                if let Some((xy, z)) = a.as_pair() {
                    if let Some((x, y)) = xy.as_pair() {
                        push(Atom::pair(x.clone(), Atom::pair(y.clone(), z.clone())));
                    }
                }
            }
            Prim::AssocL => {
                if let Some((x, yz)) = a.as_pair() {
                    if let Some((y, z)) = yz.as_pair() {
                        push(Atom::pair(Atom::pair(x.clone(), y.clone()), z.clone()));
                    }
                }
            }
            Prim::LUnit => {
                if let Some((s, x)) = a.as_pair() {
                    if is_star(s) {
                        push(x.clone());
                    }
                }
            }
            Prim::LUnitInv => push(Atom::pair(Atom::star(), a.clone())),
            Prim::RUnit => {
                if let Some((x, s)) = a.as_pair() {
                    if is_star(s) {
                        push(x.clone());
                    }
                }
            }
            Prim::RUnitInv => push(Atom::pair(a.clone(), Atom::star())),
        }
        Ok(())
    }
}

fn is_star(a: &Atom) -> bool {
    a.as_base() == Some("*")
}

/// Splits a multiset of tagged atoms into its 0- and 1-parts.
pub fn split_tags(m: &Multiset) -> Option<(Multiset, Multiset)> {
    let mut m0 = Vec::new();
    let mut m1 = Vec::new();
    for (x, n) in m.entries() {
        match x.kind() {
            AtomKind::Tag(0, y) => m0.push((y.clone(), *n)),
            AtomKind::Tag(_, y) => m1.push((y.clone(), *n)),
            _ => return None,
        }
    }
    Some((Multiset::from_counts(m0), Multiset::from_counts(m1)))
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn go(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(xs: &[Atom]) -> Atom {
        Atom::mset(xs.iter().cloned().collect())
    }

    #[test]
    fn der_after_dig_is_identity() {
        let mut ev = Evaluator::new(100_000);
        let e = p(Prim::Der).after(&p(Prim::Dig));
        let a = ms(&[Atom::star(), Atom::star()]);
        let img = ev.image(&e, &a, 3).unwrap();
        assert_eq!(img.iter().cloned().collect::<Vec<_>>(), vec![a]);
    }

    #[test]
    fn dig_includes_empty_parts() {
        let mut ev = Evaluator::new(100_000);
        let a = ms(&[Atom::star()]);
        let img = ev.image(&p(Prim::Dig), &a, 3).unwrap();
        // [[*]], [[*],[]]
        assert_eq!(img.len(), 2);
    }

    #[test]
    fn pre_cap_of_bang_der() {
        let mut ev = Evaluator::new(100);
        let e = p(Prim::Der).bang();
        // [[a]] (degree 2) ↦ [a] (degree 1).
        assert!(ev.pre_cap(&e, 1) >= 2);
    }

    #[test]
    fn theta_closed_form() {
        let mut ev = Evaluator::new(100);
        let t = p(Prim::Theta);
        let a11 = Atom::tag(1, Atom::tag(1, Atom::star()));
        assert!(ev.image(&t, &a11, 3).unwrap().is_empty());
        let a10 = Atom::tag(1, Atom::tag(0, Atom::star()));
        assert_eq!(ev.image(&t, &a10, 3).unwrap().iter().next().unwrap(), &Atom::tag(1, Atom::star()));
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0).len(), 1);
    }
}
